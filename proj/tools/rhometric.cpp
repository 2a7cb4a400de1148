// Command-line front end: load spaces, relations and paths, run the
// operations, and emit deterministic reports. Exit codes separate the
// failure classes:
//   0 success, 1 property-check failure, 2 unreadable/ill-formed input,
//   3 axiom/validation failure, 4 enumeration cap exceeded, 64 usage.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rhometric/rhometric.hpp"

namespace {

using namespace rhometric;

constexpr int kExitPropertyFailure = 1;
constexpr int kExitParse = 2;
constexpr int kExitValidation = 3;
constexpr int kExitCap = 4;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot read '" + path + "'");
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

nlohmann::json load_json(const std::string& path) {
    try {
        return nlohmann::json::parse(read_file(path));
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError("'" + path + "': " + e.what());
    }
}

FiniteRhoSpace load_space(const std::string& path) { return space_from_json(load_json(path)); }

std::size_t default_cap(std::size_t fallback) {
    if (const char* env = std::getenv("RHOMETRIC_CAP")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
    }
    return fallback;
}

void emit(const nlohmann::json& j) { std::cout << j.dump(2) << "\n"; }

LineKind parse_kind(const std::string& kind) {
    if (kind == "delta") return LineKind::Delta;
    if (kind == "rho") return LineKind::Rho;
    if (kind == "delta0") return LineKind::Delta0;
    throw CLI::ValidationError("--kind must be delta, rho or delta0");
}

int run_validate(const std::string& space_file, bool json) {
    auto parts = space_parts_from_json(load_json(space_file));
    auto violations = FiniteRhoSpace::check(parts.points, parts.rho);
    if (json) {
        nlohmann::json out{{"valid", violations.empty()}};
        out["violations"] = nlohmann::json::array();
        for (const auto& v : violations) out["violations"].push_back(v.describe(parts.points));
        emit(out);
    } else if (violations.empty()) {
        std::cout << "valid\n";
    } else {
        for (const auto& v : violations) std::cout << "violation: " << v.describe(parts.points) << "\n";
    }
    return violations.empty() ? 0 : kExitValidation;
}

int run_classify(const std::string& space_file, bool json) {
    auto s = load_space(space_file);
    auto p = classify(s);
    auto names = [&](const std::vector<std::size_t>& idx) {
        std::vector<std::string> out;
        for (std::size_t i : idx) out.push_back(s.label(i));
        return out;
    };
    if (json) {
        emit(nlohmann::json{{"positive", p.positive},
                            {"finite_valued", p.finite_valued},
                            {"symmetric", p.symmetric},
                            {"linear", p.linear},
                            {"affordable", p.affordable},
                            {"flat_points", names(p.flat_points)},
                            {"regular_points", names(p.regular_points)}});
    } else {
        auto yn = [](bool b) { return b ? "yes" : "no"; };
        std::cout << "positive = " << yn(p.positive) << "\n"
                  << "finite_valued = " << yn(p.finite_valued) << "\n"
                  << "symmetric = " << yn(p.symmetric) << "\n"
                  << "linear = " << yn(p.linear) << "\n"
                  << "affordable = " << yn(p.affordable) << "\n";
        std::cout << "flat_points =";
        for (const auto& l : names(p.flat_points)) std::cout << " " << l;
        std::cout << "\nregular_points =";
        for (const auto& l : names(p.regular_points)) std::cout << " " << l;
        std::cout << "\n";
    }
    return 0;
}

int run_properties(std::uint64_t seed, bool json) {
    SuiteOptions opt;
    opt.seed = seed;
    auto results = run_property_suite(opt);
    bool all = true;
    if (json) {
        nlohmann::json out = nlohmann::json::array();
        for (const auto& r : results) {
            out.push_back(nlohmann::json{{"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
            all = all && r.passed;
        }
        emit(out);
    } else {
        for (const auto& r : results) {
            std::cout << (r.passed ? "PASS" : "FAIL") << "  " << r.name;
            if (!r.detail.empty()) std::cout << "  (" << r.detail << ")";
            std::cout << "\n";
            all = all && r.passed;
        }
    }
    return all ? 0 : kExitPropertyFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite real-valued metric spaces: costs in [-inf, inf], "
                 "their constructions, symmetrisations, topologies and path valuations"};
    app.require_subcommand(1);
    bool json = false;
    app.add_flag("--json", json, "emit JSON instead of plain text");

    std::string space_file, rel_file, path_file, mode, kind;
    std::vector<std::string> space_files;
    std::size_t cap = 0;
    std::uint64_t seed = SuiteOptions{}.seed;

    auto* validate = app.add_subcommand("validate", "check the axioms of a space file");
    validate->add_option("--space", space_file, "space file (JSON)")->required();

    auto* classify_cmd = app.add_subcommand("classify", "profile of a space");
    classify_cmd->add_option("--space", space_file, "space file (JSON)")->required();

    auto* symmetrize = app.add_subcommand("symmetrize", "reflective or coreflective symmetrisation");
    symmetrize->add_option("--space", space_file, "space file (JSON)")->required();
    symmetrize->add_option("--mode", mode, "reflective | coreflective")->required();

    auto* quotient_cmd = app.add_subcommand("quotient", "quotient by a partition");
    quotient_cmd->add_option("--space", space_file, "space file (JSON)")->required();
    quotient_cmd->add_option("--rel", rel_file, "partition file (JSON list of label classes)")->required();

    auto* product_cmd = app.add_subcommand("product", "cartesian product (sup cost)");
    product_cmd->add_option("--space", space_files, "space files, repeat the flag")->required();
    product_cmd->add_option("--cap", cap, "carrier size cap");

    auto* tensor_cmd = app.add_subcommand("tensor", "tensor product (sum cost)");
    tensor_cmd->add_option("--space", space_files, "space files, repeat the flag")->required();
    tensor_cmd->add_option("--cap", cap, "carrier size cap");

    auto* exp_cmd = app.add_subcommand("exponential",
                                       "space of 1-Lipschitz maps from the first space into the second");
    exp_cmd->add_option("--space", space_files, "exactly two space files: source, then target")->required();
    exp_cmd->add_option("--cap", cap, "candidate map cap");

    auto* topo_cmd = app.add_subcommand("topology", "open-set family of a space");
    topo_cmd->add_option("--space", space_file, "space file (JSON)")->required();
    topo_cmd->add_option("--mode", mode, "future | past | reflective | coreflective")->required();

    auto* pre_cmd = app.add_subcommand("preorder", "preorder carried by a space");
    pre_cmd->add_option("--space", space_file, "space file (JSON)")->required();
    pre_cmd->add_option("--mode", mode, "reflective | coreflective")->required();

    auto* valuate = app.add_subcommand("valuate", "valuation report of a path");
    valuate->add_option("--path", path_file, "path file (CSV)")->required();
    valuate->add_option("--kind", kind, "line target for t,y paths: delta | rho | delta0");
    valuate->add_option("--space", space_file, "space file for t,point paths");

    auto* props = app.add_subcommand("properties", "run the theorem suite");
    props->add_option("--seed", seed, "sampling seed");

    CLI11_PARSE(app, argc, argv);

    try {
        if (validate->parsed()) return run_validate(space_file, json);
        if (classify_cmd->parsed()) return run_classify(space_file, json);

        if (symmetrize->parsed()) {
            auto s = load_space(space_file);
            if (mode == "reflective") emit(space_to_json(reflective_sym(s)));
            else if (mode == "coreflective") emit(space_to_json(coreflective_sym(s)));
            else throw CLI::ValidationError("--mode must be reflective or coreflective");
            return 0;
        }

        if (quotient_cmd->parsed()) {
            auto s = load_space(space_file);
            auto rel = equiv_from_json(s, load_json(rel_file));
            auto q = quotient(s, rel);
            if (json) {
                nlohmann::json wit = nlohmann::json::array();
                for (std::size_t c = 0; c < q.space.size(); ++c) {
                    nlohmann::json row = nlohmann::json::array();
                    for (std::size_t d = 0; d < q.space.size(); ++d)
                        row.push_back(q.witnesses[c][d] ? witness_to_json(s, *q.witnesses[c][d])
                                                        : nlohmann::json());
                    wit.push_back(std::move(row));
                }
                emit(nlohmann::json{{"space", space_to_json(q.space)},
                                    {"projection", q.projection.assignment()},
                                    {"witnesses", std::move(wit)}});
            } else {
                emit(space_to_json(q.space));
            }
            return 0;
        }

        if (product_cmd->parsed() || tensor_cmd->parsed()) {
            std::vector<FiniteRhoSpace> spaces;
            for (const auto& f : space_files) spaces.push_back(load_space(f));
            std::size_t limit = cap ? cap : default_cap(kDefaultPointCap);
            emit(space_to_json(product_cmd->parsed() ? product(spaces, limit) : tensor(spaces, limit)));
            return 0;
        }

        if (exp_cmd->parsed()) {
            if (space_files.size() != 2)
                throw CLI::ValidationError("exponential needs exactly two --space files");
            auto Y = load_space(space_files[0]);
            auto Z = load_space(space_files[1]);
            auto E = exponential(Y, Z, cap ? cap : default_cap(kDefaultMapCap));
            if (json) {
                emit(nlohmann::json{{"space", space_to_json(E.space)}, {"maps", E.maps}});
            } else {
                emit(space_to_json(E.space));
            }
            return 0;
        }

        if (topo_cmd->parsed()) {
            auto s = load_space(space_file);
            FiniteTopology t = [&] {
                if (mode == "future") return future_topology(s);
                if (mode == "past") return past_topology(s);
                if (mode == "reflective") return reflective_topology(s);
                if (mode == "coreflective") return coreflective_topology(s);
                throw CLI::ValidationError("--mode must be future, past, reflective or coreflective");
            }();
            auto j = topology_to_json(t);
            if (json) {
                emit(j);
            } else {
                for (const auto& open : j) {
                    std::cout << "{";
                    for (std::size_t i = 0; i < open.size(); ++i)
                        std::cout << (i ? "," : "") << open[i].get<std::string>();
                    std::cout << "}\n";
                }
            }
            return 0;
        }

        if (pre_cmd->parsed()) {
            auto s = load_space(space_file);
            if (mode == "reflective") emit(preorder_to_json(reflective_preorder(s)));
            else if (mode == "coreflective") emit(preorder_to_json(coreflective_preorder(s)));
            else throw CLI::ValidationError("--mode must be reflective or coreflective");
            return 0;
        }

        if (valuate->parsed()) {
            if (kind.empty() == space_file.empty())
                throw CLI::ValidationError("valuate needs exactly one of --kind or --space");
            ValuationReport r;
            if (!kind.empty()) {
                r = pl_valuation(pl_path_from_csv(read_file(path_file), parse_kind(kind)));
            } else {
                auto s = load_space(space_file);
                r = step_valuation(step_path_from_csv(read_file(path_file), s));
            }
            if (json) emit(report_to_json(r));
            else std::cout << report_to_text(r);
            return 0;
        }

        if (props->parsed()) return run_properties(seed, json);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 64;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const CapExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitCap;
    } catch (const SpaceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }
    return 64;
}
