#pragma once

#include <algorithm>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "rhometric/constructions.hpp"
#include "rhometric/paths.hpp"
#include "rhometric/space.hpp"
#include "rhometric/symmetry.hpp"
#include "rhometric/topology.hpp"

namespace rhometric {

class ParseError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Cost entries. Integers that fit a JSON number are emitted as numbers,
// everything else as the exact string form; parsing accepts both (floating
// JSON numbers are converted through their exact binary value).

inline nlohmann::json entry_to_json(const ExtReal& v) {
    if (v.is_finite() && denominator(v.finite()) == 1) {
        const BigInt& n = numerator(v.finite());
        static const BigInt kSafe = BigInt(1) << 53;
        if (n > -kSafe && n < kSafe) return static_cast<std::int64_t>(n);
    }
    return to_string(v);
}

inline ExtReal entry_from_json(const nlohmann::json& j) {
    try {
        if (j.is_number_integer()) return ExtReal(Rational(BigInt(j.get<std::int64_t>())));
        if (j.is_number_unsigned()) return ExtReal(Rational(BigInt(j.get<std::uint64_t>())));
        if (j.is_number_float()) return ExtReal(rational_from_double(j.get<double>()));
        if (j.is_string()) return parse_extreal(j.get<std::string>());
    } catch (const std::invalid_argument& e) {
        throw ParseError(std::string("bad cost entry: ") + e.what());
    }
    throw ParseError("bad cost entry: expected number or string, got " + j.dump());
}

// ---------------------------------------------------------------------------
// Spaces: { "points": [labels], "rho": [[entry]] }.

inline nlohmann::json space_to_json(const FiniteRhoSpace& s) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t x = 0; x < s.size(); ++x) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t y = 0; y < s.size(); ++y) row.push_back(entry_to_json(s.rho(x, y)));
        rows.push_back(std::move(row));
    }
    return nlohmann::json{{"points", s.points()}, {"rho", std::move(rows)}};
}

struct SpaceParts {
    std::vector<std::string> points;
    Matrix rho;
};

/// Raw pieces of a space file, before the axiom check; lets callers report
/// violations instead of failing on them.
inline SpaceParts space_parts_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("points") || !j.contains("rho"))
        throw ParseError("space: expected an object with 'points' and 'rho'");
    SpaceParts out;
    for (const auto& p : j.at("points")) {
        if (!p.is_string()) throw ParseError("space: point labels must be strings");
        out.points.push_back(p.get<std::string>());
    }
    for (const auto& row : j.at("rho")) {
        out.rho.emplace_back();
        for (const auto& cell : row) out.rho.back().push_back(entry_from_json(cell));
    }
    return out;
}

inline FiniteRhoSpace space_from_json(const nlohmann::json& j) {
    auto parts = space_parts_from_json(j);
    try {
        return FiniteRhoSpace::create(std::move(parts.points), std::move(parts.rho));
    } catch (const std::invalid_argument& e) {
        throw ParseError(std::string("space: ") + e.what());
    }
}

// ---------------------------------------------------------------------------
// Partitions: a JSON list of classes of labels. Unmentioned points become
// singleton classes.

inline EquivRelation equiv_from_json(const FiniteRhoSpace& s, const nlohmann::json& j) {
    if (!j.is_array()) throw ParseError("partition: expected a list of classes");
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (const auto& cls : j) {
        if (!cls.is_array()) throw ParseError("partition: each class must be a list of labels");
        std::size_t first = s.size();
        for (const auto& lab : cls) {
            if (!lab.is_string()) throw ParseError("partition: labels must be strings");
            auto idx = s.index_of(lab.get<std::string>());
            if (!idx) throw ParseError("partition: unknown label '" + lab.get<std::string>() + "'");
            if (first == s.size())
                first = *idx;
            else
                pairs.emplace_back(first, *idx);
        }
    }
    return EquivRelation::from_pairs(s.size(), pairs);
}

inline nlohmann::json equiv_to_json(const FiniteRhoSpace& s, const EquivRelation& rel) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& cls : rel.classes()) {
        nlohmann::json c = nlohmann::json::array();
        for (std::size_t p : cls) c.push_back(s.label(p));
        out.push_back(std::move(c));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Preorders: { "carrier": [labels], "relation": { label: [successors] } }.

inline nlohmann::json preorder_to_json(const Preorder& p) {
    nlohmann::json rel = nlohmann::json::object();
    for (std::size_t x = 0; x < p.size(); ++x) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t y = 0; y < p.size(); ++y)
            if (p.leq(x, y)) row.push_back(p.carrier()[y]);
        rel[p.carrier()[x]] = std::move(row);
    }
    return nlohmann::json{{"carrier", p.carrier()}, {"relation", std::move(rel)}};
}

inline Preorder preorder_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("carrier") || !j.contains("relation"))
        throw ParseError("preorder: expected an object with 'carrier' and 'relation'");
    std::vector<std::string> carrier;
    for (const auto& c : j.at("carrier")) carrier.push_back(c.get<std::string>());
    auto index = [&](const std::string& l) -> std::size_t {
        auto it = std::find(carrier.begin(), carrier.end(), l);
        if (it == carrier.end()) throw ParseError("preorder: unknown label '" + l + "'");
        return static_cast<std::size_t>(it - carrier.begin());
    };
    std::vector<std::vector<char>> rel(carrier.size(), std::vector<char>(carrier.size(), 0));
    for (const auto& [from, tos] : j.at("relation").items())
        for (const auto& to : tos) rel[index(from)][index(to.get<std::string>())] = 1;
    try {
        return Preorder::create(std::move(carrier), std::move(rel));
    } catch (const std::invalid_argument& e) {
        throw ParseError(std::string("preorder: ") + e.what());
    }
}

// ---------------------------------------------------------------------------
// Topologies, rendered as a sorted list of sorted label subsets.

inline nlohmann::json topology_to_json(const FiniteTopology& t) {
    std::vector<std::vector<std::string>> subsets;
    for (const auto& open : t.opens()) {
        std::vector<std::string> labels;
        for (std::size_t i : open.indices()) labels.push_back(t.carrier()[i]);
        std::sort(labels.begin(), labels.end());
        subsets.push_back(std::move(labels));
    }
    std::sort(subsets.begin(), subsets.end());
    return nlohmann::json(subsets);
}

// ---------------------------------------------------------------------------
// Chain witnesses: alternating label/step list plus the total.

inline nlohmann::json witness_to_json(const FiniteRhoSpace& s, const ChainWitness& w) {
    nlohmann::json steps = nlohmann::json::array();
    for (const auto& [from, to] : w.steps)
        steps.push_back(nlohmann::json{{"from", s.label(from)},
                                       {"to", s.label(to)},
                                       {"cost", entry_to_json(s.rho(from, to))}});
    return nlohmann::json{{"steps", std::move(steps)}, {"total", entry_to_json(w.total)}};
}

// ---------------------------------------------------------------------------
// Paths as CSV. Piecewise-linear: header "t,y"; step paths: header
// "t,point". The first row is t = 0; PL paths also carry the final t = 1 row.

namespace detail {

inline std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        rows.emplace_back();
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) rows.back().push_back(cell);
    }
    return rows;
}

}  // namespace detail

inline PLPath pl_path_from_csv(const std::string& text, LineKind target) {
    auto rows = detail::csv_rows(text);
    if (rows.empty() || rows[0] != std::vector<std::string>{"t", "y"})
        throw ParseError("pl path: expected header 't,y'");
    std::vector<Rational> times, values;
    try {
        for (std::size_t i = 1; i < rows.size(); ++i) {
            if (rows[i].size() != 2) throw ParseError("pl path: each row needs two cells");
            times.push_back(parse_rational(rows[i][0]));
            values.push_back(parse_rational(rows[i][1]));
        }
        return PLPath::create(std::move(times), std::move(values), target);
    } catch (const std::invalid_argument& e) {
        throw ParseError(std::string("pl path: ") + e.what());
    }
}

inline std::string pl_path_to_csv(const PLPath& p) {
    std::string out = "t,y\n";
    for (std::size_t i = 0; i < p.times().size(); ++i)
        out += rational_to_string(p.times()[i]) + "," + rational_to_string(p.values()[i]) + "\n";
    return out;
}

inline StepPath step_path_from_csv(const std::string& text, const FiniteRhoSpace& s) {
    auto rows = detail::csv_rows(text);
    if (rows.empty() || rows[0] != std::vector<std::string>{"t", "point"})
        throw ParseError("step path: expected header 't,point'");
    std::vector<std::size_t> visits;
    std::vector<Rational> times;
    try {
        for (std::size_t i = 1; i < rows.size(); ++i) {
            if (rows[i].size() != 2) throw ParseError("step path: each row needs two cells");
            Rational t = parse_rational(rows[i][0]);
            auto idx = s.index_of(rows[i][1]);
            if (!idx) throw ParseError("step path: unknown point '" + rows[i][1] + "'");
            if (i == 1) {
                if (t != 0) throw ParseError("step path: first row must have t = 0");
            } else {
                times.push_back(t);
            }
            visits.push_back(*idx);
        }
        return StepPath::create(s, std::move(visits), std::move(times));
    } catch (const std::invalid_argument& e) {
        throw ParseError(std::string("step path: ") + e.what());
    }
}

inline std::string step_path_to_csv(const StepPath& p) {
    std::string out = "t,point\n0," + p.space().label(p.visits()[0]) + "\n";
    for (std::size_t i = 0; i < p.switch_times().size(); ++i)
        out += rational_to_string(p.switch_times()[i]) + "," + p.space().label(p.visits()[i + 1]) + "\n";
    return out;
}

// ---------------------------------------------------------------------------
// Valuation reports, as a flat key/value block and as JSON.

inline std::string report_to_text(const ValuationReport& r) {
    std::string out;
    out += "v = " + to_string(r.v) + "\n";
    out += "v_plus = " + to_string(r.v_plus) + "\n";
    out += "v_minus = " + (r.v_minus ? to_string(*r.v_minus) : std::string("undefined")) + "\n";
    out += "total_variation = " + (r.total_variation ? to_string(*r.total_variation) : std::string("n/a")) + "\n";
    out += "lipschitz_weight = " + to_string(r.lipschitz_weight) + "\n";
    return out;
}

inline nlohmann::json report_to_json(const ValuationReport& r) {
    nlohmann::json j{{"v", entry_to_json(r.v)},
                     {"v_plus", entry_to_json(r.v_plus.value())},
                     {"lipschitz_weight", entry_to_json(r.lipschitz_weight.value())}};
    j["v_minus"] = r.v_minus ? entry_to_json(r.v_minus->value()) : nlohmann::json();
    j["total_variation"] = r.total_variation ? entry_to_json(r.total_variation->value()) : nlohmann::json();
    return j;
}

}  // namespace rhometric
