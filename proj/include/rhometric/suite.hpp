#pragma once

// The theorem suite: every acceptance property of the library, run with a
// fixed seed so failures reproduce. Exposed both to the CLI (`properties`
// subcommand) and to the acceptance test binary.

#include <chrono>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "rhometric/constructions.hpp"
#include "rhometric/extreal.hpp"
#include "rhometric/oracles.hpp"
#include "rhometric/paths.hpp"
#include "rhometric/space.hpp"
#include "rhometric/symmetry.hpp"
#include "rhometric/topology.hpp"

namespace rhometric {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
};

struct SuiteOptions {
    std::uint64_t seed = 20250809;
};

namespace suite_detail {

/// Deterministic sampling helper; avoids std distributions, whose output is
/// implementation-defined.
class Sampler {
  public:
    explicit Sampler(std::uint64_t seed) : eng_(seed) {}

    std::size_t below(std::size_t n) { return n == 0 ? 0 : static_cast<std::size_t>(eng_() % n); }
    bool chance(std::size_t num, std::size_t den) { return below(den) < num; }

    template <typename T>
    const T& pick(const std::vector<T>& v) {
        return v[below(v.size())];
    }

    /// k distinct strictly increasing rationals inside ]0,1[.
    std::vector<Rational> interior_times(std::size_t k) {
        std::vector<std::size_t> ticks;
        while (ticks.size() < k) {
            std::size_t t = 1 + below(63);
            bool fresh = true;
            for (std::size_t u : ticks) fresh = fresh && u != t;
            if (fresh) ticks.push_back(t);
        }
        std::sort(ticks.begin(), ticks.end());
        std::vector<Rational> out;
        for (std::size_t t : ticks) out.emplace_back(Rational(t, 64));
        return out;
    }

  private:
    std::mt19937_64 eng_;
};

struct SpaceSpec {
    std::size_t min_points = 2;
    std::size_t max_points = 6;
    bool allow_pos_inf = true;
    bool allow_neg_inf = true;
    bool allow_negative = true;
    bool allow_flat = true;
    bool force_negative_entry = false;
};

inline const std::vector<Rational>& finite_alphabet() {
    static const std::vector<Rational> a{Rational(-2), Rational(-1), Rational(-1, 2), Rational(0),
                                         Rational(1, 2), Rational(1), Rational(3)};
    return a;
}

inline const std::vector<Rational>& nonneg_alphabet() {
    static const std::vector<Rational> a{Rational(0), Rational(1, 2), Rational(1), Rational(2), Rational(3)};
    return a;
}

/// Random valid space: a random cost table repaired into one by the walk
/// closure (which can only tighten it), then re-validated from scratch.
inline FiniteRhoSpace random_space(Sampler& rng, const SpaceSpec& spec) {
    std::size_t n = spec.min_points + rng.below(spec.max_points - spec.min_points + 1);
    Matrix m(n, std::vector<ExtReal>(n));
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            if (x == y) {
                m[x][y] = (spec.allow_flat && rng.chance(1, 6)) ? ExtReal::neg_inf() : ExtReal(0);
            } else if (spec.allow_pos_inf && rng.chance(1, 6)) {
                m[x][y] = ExtReal::pos_inf();
            } else if (spec.allow_neg_inf && rng.chance(1, 10)) {
                m[x][y] = ExtReal::neg_inf();
            } else {
                m[x][y] = ExtReal(rng.pick(spec.allow_negative ? finite_alphabet() : nonneg_alphabet()));
            }
        }
    if (spec.force_negative_entry && n >= 2) m[0][1] = ExtReal(-1);
    return FiniteRhoSpace::create(auto_labels(n), min_plus_closure(m).dist);
}

inline FiniteRhoSpace random_delta_space(Sampler& rng, std::size_t min_pts, std::size_t max_pts) {
    SpaceSpec spec;
    spec.min_points = min_pts;
    spec.max_points = max_pts;
    spec.allow_neg_inf = false;
    spec.allow_negative = false;
    spec.allow_flat = false;
    return random_space(rng, spec);
}

inline StepPath random_step_path(Sampler& rng, const FiniteRhoSpace& X, std::size_t max_visits = 5) {
    std::size_t k = 1 + rng.below(max_visits);
    std::vector<std::size_t> visits;
    for (std::size_t i = 0; i < k; ++i) visits.push_back(rng.below(X.size()));
    return StepPath::create(X, std::move(visits), rng.interior_times(k - 1));
}

inline PLPath random_pl_profile(Sampler& rng, LineKind kind) {
    std::size_t k = 2 + rng.below(6);
    std::vector<Rational> values;
    for (std::size_t i = 0; i < k; ++i) values.push_back(rng.pick(finite_alphabet()));
    std::vector<Rational> times{Rational(0)};
    for (const auto& t : rng.interior_times(k - 2)) times.push_back(t);
    times.push_back(Rational(1));
    return PLPath::create(std::move(times), std::move(values), kind);
}

/// Nondecreasing PL time map; surjective on request, otherwise a random
/// restriction of the interval.
inline PLTimeMap random_time_map(Sampler& rng, bool surjective) {
    std::size_t k = 2 + rng.below(3);
    std::vector<Rational> grid{Rational(0),     Rational(1, 8), Rational(1, 4), Rational(3, 8), Rational(1, 2),
                               Rational(5, 8),  Rational(3, 4), Rational(7, 8), Rational(1)};
    std::vector<Rational> values;
    for (std::size_t i = 0; i < k; ++i) values.push_back(rng.pick(grid));
    std::sort(values.begin(), values.end());
    if (surjective) {
        values.front() = 0;
        values.back() = 1;
    }
    std::vector<Rational> times{Rational(0)};
    for (const auto& t : rng.interior_times(k - 2)) times.push_back(t);
    times.push_back(Rational(1));
    return PLTimeMap::create(std::move(times), std::move(values));
}

inline bool entrywise_leq(const FiniteRhoSpace& a, const FiniteRhoSpace& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t x = 0; x < a.size(); ++x)
        for (std::size_t y = 0; y < a.size(); ++y)
            if (b.rho(x, y) < a.rho(x, y)) return false;
    return true;
}

inline bool same_matrix(const FiniteRhoSpace& a, const FiniteRhoSpace& b) {
    return a.size() == b.size() && a.matrix() == b.matrix();
}

/// Every valid space on at most two points over a fixed entry alphabet,
/// plus the two singletons.
inline std::vector<FiniteRhoSpace> tiny_spaces() {
    std::vector<FiniteRhoSpace> out;
    out.push_back(delta_singleton());
    out.push_back(terminal());
    const std::vector<ExtReal> diag{ExtReal(0), ExtReal::neg_inf()};
    const std::vector<ExtReal> off{ExtReal(-1), ExtReal(0), ExtReal(1), ExtReal::pos_inf()};
    for (const auto& d1 : diag)
        for (const auto& d2 : diag)
            for (const auto& o1 : off)
                for (const auto& o2 : off) {
                    std::vector<std::string> labels{"a", "b"};
                    Matrix m{{d1, o1}, {o2, d2}};
                    if (FiniteRhoSpace::check(labels, m).empty())
                        out.push_back(FiniteRhoSpace::create(labels, m));
                }
    return out;
}

/// All assignments source -> target, as index vectors.
inline std::vector<std::vector<std::size_t>> all_assignments(std::size_t from, std::size_t to) {
    std::vector<std::vector<std::size_t>> out;
    if (from == 0) {
        out.emplace_back();
        return out;
    }
    if (to == 0) return out;
    std::vector<std::size_t> at(from, 0);
    while (true) {
        out.push_back(at);
        std::size_t i = from;
        while (i > 0) {
            --i;
            if (++at[i] < to) break;
            at[i] = 0;
            if (i == 0) return out;
        }
    }
}

using Clock = std::chrono::steady_clock;

inline CheckResult timed(const std::string& name, const std::function<std::string()>& body) {
    CheckResult r;
    r.name = name;
    auto t0 = Clock::now();
    try {
        std::string complaint = body();
        r.passed = complaint.empty();
        r.detail = complaint;
    } catch (const std::exception& e) {
        r.passed = false;
        r.detail = std::string("exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    return r;
}

}  // namespace suite_detail

inline std::vector<CheckResult> run_property_suite(const SuiteOptions& opt = {}) {
    using namespace suite_detail;
    std::vector<CheckResult> results;

    // 1. The value arithmetic satisfies its laws on an exhaustive grid.
    results.push_back(timed("quantale-laws", [&]() -> std::string {
        std::vector<ExtReal> A{ExtReal::neg_inf(), ExtReal(-2),        ExtReal(-1), ExtReal(0),
                               ExtReal(Rational(1, 2)), ExtReal(1), ExtReal(3),  ExtReal::pos_inf()};
        for (const auto& a : A) {
            if (!(esum(ExtReal(0), a) == a)) return "unit failed at " + to_string(a);
            for (const auto& b : A) {
                if (!(esum(a, b) == esum(b, a)))
                    return "commutativity failed at " + to_string(a) + "," + to_string(b);
                for (const auto& c : A) {
                    if (!(esum(a, esum(b, c)) == esum(esum(a, b), c)))
                        return "associativity failed at " + to_string(a) + "," + to_string(b) + "," + to_string(c);
                    bool lhs = esum(a, b) >= c;
                    bool rhs = a >= ediff(c, b);
                    if (lhs != rhs)
                        return "adjunction failed at " + to_string(a) + "," + to_string(b) + "," + to_string(c);
                }
            }
        }
        if (!(ediff(ExtReal::pos_inf(), ExtReal::pos_inf()) == ExtReal::neg_inf())) return "inf - inf != -inf";
        if (!(ediff(ExtReal::neg_inf(), ExtReal::neg_inf()) == ExtReal::neg_inf())) return "-inf - -inf != -inf";
        if (!(trunc_diff(Weight::pos_inf(), Weight::pos_inf()) == Weight(0))) return "hom+(inf,inf) != 0";
        // meet preservation: esum(a, min S) == min over S of esum(a, s)
        for (const auto& a : A)
            for (std::size_t mask = 1; mask < (1u << A.size()); ++mask) {
                ExtReal m = ExtReal::pos_inf(), lhs = ExtReal::pos_inf();
                for (std::size_t i = 0; i < A.size(); ++i)
                    if (mask & (1u << i)) {
                        m = emin(m, A[i]);
                        lhs = emin(lhs, esum(a, A[i]));
                    }
                if (!(esum(a, m) == lhs)) return "meet preservation failed at " + to_string(a);
            }
        return "";
    }));

    // 2. Reflective symmetrisation agrees with the brute-force step-path
    //    infimum on random small spaces.
    results.push_back(timed("reflective-sym-oracle", [&]() -> std::string {
        Sampler rng(opt.seed + 2);
        for (int i = 0; i < 200; ++i) {
            auto X = random_space(rng, SpaceSpec{});
            auto fast = reflective_sym(X);
            auto slow = oracle::reflective_sym_infimum(X, 12);
            if (fast.matrix() != slow)
                return "instance " + std::to_string(i) + " disagrees with the oracle";
        }
        return "";
    }));

    // 3. Affordable spaces with a strictly negative cost symmetrise to the
    //    all -inf matrix.
    results.push_back(timed("chaotic-symmetrisation", [&]() -> std::string {
        Sampler rng(opt.seed + 3);
        SpaceSpec spec;
        spec.allow_pos_inf = false;
        spec.force_negative_entry = true;
        for (int i = 0; i < 100; ++i) {
            auto X = random_space(rng, spec);
            bool negative = false, affordable = true;
            for (std::size_t x = 0; x < X.size(); ++x)
                for (std::size_t y = 0; y < X.size(); ++y) {
                    if (X.rho(x, y) < ExtReal(0)) negative = true;
                    if (X.rho(x, y).is_pos_inf()) affordable = false;
                }
            if (!negative || !affordable) return "generator failed to meet the premises";
            auto sym = reflective_sym(X);
            for (std::size_t x = 0; x < X.size(); ++x)
                for (std::size_t y = 0; y < X.size(); ++y)
                    if (!sym.rho(x, y).is_neg_inf())
                        return "instance " + std::to_string(i) + " left a finite cost at (" +
                               std::to_string(x) + "," + std::to_string(y) + ")";
        }
        return "";
    }));

    // 4. Reflective symmetrisation is strictly monoidal for the tensor;
    //    coreflective is lax.
    results.push_back(timed("tensor-symmetrisation", [&]() -> std::string {
        Sampler rng(opt.seed + 4);
        SpaceSpec spec;
        spec.min_points = 1;
        spec.max_points = 5;
        for (int i = 0; i < 100; ++i) {
            auto X = random_space(rng, spec);
            auto Y = random_space(rng, spec);
            auto T = tensor({X, Y});
            if (!(reflective_sym(T) == tensor({reflective_sym(X), reflective_sym(Y)})))
                return "strict monoidality failed on pair " + std::to_string(i);
            if (!entrywise_leq(coreflective_sym(T), tensor({coreflective_sym(X), coreflective_sym(Y)})))
                return "lax inequality failed on pair " + std::to_string(i);
        }
        return "";
    }));

    // 5. The full symmetrisation/product inequality chains for nonnegative
    //    spaces, factor-2 bound included.
    results.push_back(timed("symmetrisation-product-chains", [&]() -> std::string {
        Sampler rng(opt.seed + 5);
        for (int i = 0; i < 100; ++i) {
            auto X = random_delta_space(rng, 1, 5);
            auto Y = random_delta_space(rng, 1, 5);
            auto tag = std::to_string(i);
            // reflective chain
            auto prod_of_hats = product({reflective_sym(X), reflective_sym(Y)});
            auto hat_of_prod = reflective_sym(product({X, Y}));
            auto hat_of_tensor = reflective_sym(tensor({X, Y}));
            auto tensor_of_hats = tensor({reflective_sym(X), reflective_sym(Y)});
            if (!entrywise_leq(prod_of_hats, hat_of_prod)) return "reflective chain step 1 failed on " + tag;
            if (!entrywise_leq(hat_of_prod, hat_of_tensor)) return "reflective chain step 2 failed on " + tag;
            if (!same_matrix(hat_of_tensor, tensor_of_hats)) return "reflective chain equality failed on " + tag;
            if (!entrywise_leq(tensor_of_hats, scale_space(Coeff(2), prod_of_hats)))
                return "reflective factor-2 bound failed on " + tag;
            // coreflective chain
            auto prod_of_checks = product({coreflective_sym(X), coreflective_sym(Y)});
            auto check_of_prod = coreflective_sym(product({X, Y}));
            auto check_of_tensor = coreflective_sym(tensor({X, Y}));
            auto tensor_of_checks = tensor({coreflective_sym(X), coreflective_sym(Y)});
            if (!same_matrix(prod_of_checks, check_of_prod)) return "coreflective equality failed on " + tag;
            if (!entrywise_leq(check_of_prod, check_of_tensor)) return "coreflective chain step 2 failed on " + tag;
            if (!entrywise_leq(check_of_tensor, tensor_of_checks))
                return "coreflective chain step 3 failed on " + tag;
            if (!entrywise_leq(tensor_of_checks, scale_space(Coeff(2), prod_of_checks)))
                return "coreflective factor-2 bound failed on " + tag;
        }
        return "";
    }));

    // 6. Product/tensor comparison: the two-sided bounds for nonnegative
    //    spaces, and the documented one-point counterexample outside them.
    results.push_back(timed("tensor-product-boundary", [&]() -> std::string {
        Sampler rng(opt.seed + 6);
        for (int i = 0; i < 100; ++i) {
            auto X = random_delta_space(rng, 1, 5);
            auto Y = random_delta_space(rng, 1, 5);
            auto prod = product({X, Y});
            auto tens = tensor({X, Y});
            if (!entrywise_leq(prod, tens)) return "product <= tensor failed on pair " + std::to_string(i);
            if (!entrywise_leq(tens, scale_space(Coeff(2), prod)))
                return "tensor <= 2*product failed on pair " + std::to_string(i);
        }
        auto prod = product({delta_singleton(), terminal()});
        auto tens = tensor({delta_singleton(), terminal()});
        if (!(prod.rho(0, 0) == ExtReal(0))) return "singleton product should be the delta-singleton";
        if (!tens.rho(0, 0).is_neg_inf()) return "singleton tensor should be the rho-singleton";
        return "";
    }));

    // 7. The path valuation theorem, item by item, on random paths.
    results.push_back(timed("path-valuation-theorem", [&]() -> std::string {
        Sampler rng(opt.seed + 7);
        SpaceSpec spec;
        spec.min_points = 1;
        spec.max_points = 5;
        for (int i = 0; i < 200; ++i) {
            auto tag = std::to_string(i);
            auto X = random_space(rng, spec);

            // (a) constant paths valuate to the self-cost
            std::size_t x0 = rng.below(X.size());
            auto constant = StepPath::create(X, {x0}, {});
            if (!(step_valuation(constant).v == X.rho(x0, x0))) return "item (a) failed on " + tag;

            // (b) concatenation is additive (concat re-checks; verify here too)
            auto a = random_step_path(rng, X);
            auto b_visits = std::vector<std::size_t>{a.visits().back()};
            for (std::size_t k = rng.below(3); k-- > 0;) b_visits.push_back(rng.below(X.size()));
            auto b = StepPath::create(X, b_visits, rng.interior_times(b_visits.size() - 1));
            auto ab = concat(a, b);
            if (!(step_valuation(ab).v == esum(step_valuation(a).v, step_valuation(b).v)))
                return "item (b) failed on " + tag;

            // (e) surjective reparametrisation preserves the valuation
            try {
                auto phi = random_time_map(rng, true);
                auto re = reparametrize(a, phi);
                if (!(step_valuation(re).v == step_valuation(a).v)) return "item (e) failed on " + tag;
            } catch (const std::invalid_argument&) {
                // phi hit the single unrepresentable corner; skip the sample
            }

            // (d) any increasing reparametrisation preserves finiteness
            try {
                auto phi = random_time_map(rng, false);
                auto re = reparametrize(a, phi);
                if (!step_valuation(a).v.is_pos_inf() && step_valuation(re).v.is_pos_inf())
                    return "item (d) failed on " + tag;
            } catch (const std::invalid_argument&) {
            }

            // (f) valuation below the Lipschitz weight
            auto rep = step_valuation(a);
            if (!(rep.v <= rep.lipschitz_weight.value())) return "item (f) step failed on " + tag;
            auto pl = random_pl_profile(rng, rng.chance(1, 2) ? LineKind::Rho : LineKind::Delta0);
            auto plrep = pl_valuation(pl);
            if (!(plrep.v <= plrep.lipschitz_weight.value())) return "item (f) pl failed on " + tag;

            // (g) images under an l-Lipschitz map obey the scaled bound
            auto Y = random_space(rng, spec);
            PointMap f = PointMap::create(X, X, [&] {
                std::vector<std::size_t> id(X.size());
                for (std::size_t k = 0; k < id.size(); ++k) id[k] = k;
                return id;
            }());
            for (int attempt = 0; attempt < 20; ++attempt) {
                std::vector<std::size_t> assign;
                for (std::size_t k = 0; k < X.size(); ++k) assign.push_back(rng.below(Y.size()));
                auto cand = PointMap::create(X, Y, std::move(assign));
                if (is_one_lipschitz(cand)) {
                    f = cand;
                    break;
                }
            }
            std::vector<Coeff> ls;
            for (const Coeff& l : {Coeff(Rational(1, 2)), Coeff(1), Coeff(2)})
                if (is_lipschitz(f, l)) ls.push_back(l);
            const Coeff& l = ls.empty() ? Coeff(1) : rng.pick(ls);
            if (!ls.empty()) {
                auto img = map_path(f, l, a);
                if (scale(l, step_valuation(a).v) < step_valuation(img).v) return "item (g) failed on " + tag;
            }

            // (c) on nonnegative spaces any reparametrisation can only shrink
            auto P = random_delta_space(rng, 1, 5);
            auto ap = random_step_path(rng, P);
            try {
                auto phi = random_time_map(rng, false);
                auto re = reparametrize(ap, phi);
                if (!(step_valuation(re).v <= step_valuation(ap).v)) return "item (c) failed on " + tag;
            } catch (const std::invalid_argument&) {
            }
        }
        return "";
    }));

    // 8. Valuations of piecewise-linear profiles into the two-way line:
    //    the potential identities, reversal, and the worked profile.
    results.push_back(timed("linear-valuation-identities", [&]() -> std::string {
        Sampler rng(opt.seed + 8);
        for (int i = 0; i < 100; ++i) {
            auto tag = std::to_string(i);
            auto a = random_pl_profile(rng, LineKind::Rho);
            auto r = pl_valuation(a);
            auto rs = pl_valuation(a.reversed());
            if (!(r.v == ExtReal(Rational(a.values().back() - a.values().front()))))
                return "net-potential identity failed on " + tag;
            if (!(rs.v == negate(r.v))) return "reversal of v failed on " + tag;
            if (!(*r.v_minus == rs.v_plus)) return "descent/ascent reversal failed on " + tag;
            if (!(r.v == ediff(r.v_plus.value(), r.v_minus->value())))
                return "v = v+ - v- failed on " + tag;
            if (!(*r.total_variation == r.v_plus + *r.v_minus)) return "tv = v+ + v- failed on " + tag;
            auto oracle_bound = oracle::pl_partition_supremum(a);
            if (!(oracle_bound.v == r.v && oracle_bound.v_plus == r.v_plus))
                return "partition oracle disagrees on " + tag;
        }
        auto p = PLPath::profile({Rational(0), Rational(3), Rational(1), Rational(2)}, LineKind::Rho);
        auto r = pl_valuation(p);
        auto seg = oracle::monotone_segments(p.values());
        bool fixed_ok = r.v == ExtReal(2) && r.v_plus == Weight(4) && *r.v_minus == Weight(2) &&
                        *r.total_variation == Weight(6) && seg.rise == 4 && seg.drop == 2;
        if (!fixed_ok) return "the 0-3-1-2 profile does not valuate to (2,4,2,6)";
        return "";
    }));

    // 9. Quotients: the circle-style collapse of the two-way grid, and
    //    agreement with the chain oracle on random instances.
    results.push_back(timed("quotient-chaos-and-oracle", [&]() -> std::string {
        for (std::size_t n = 3; n <= 8; ++n) {
            std::vector<Rational> vals;
            for (std::size_t i = 0; i < n; ++i) vals.emplace_back(Rational(BigInt(i)));
            auto grid = grid_line(LineKind::Rho, vals);
            auto rel = EquivRelation::from_pairs(n, {{0, n - 1}});
            auto q = quotient(grid, rel);
            for (std::size_t c = 0; c < q.space.size(); ++c)
                for (std::size_t d = 0; d < q.space.size(); ++d)
                    if (!q.space.rho(c, d).is_neg_inf())
                        return "grid quotient kept a finite cost at n = " + std::to_string(n);
        }
        Sampler rng(opt.seed + 9);
        SpaceSpec spec;
        spec.min_points = 1;
        for (int i = 0; i < 200; ++i) {
            auto X = random_space(rng, spec);
            std::vector<std::pair<std::size_t, std::size_t>> pairs;
            for (std::size_t k = rng.below(X.size()); k-- > 0;)
                pairs.emplace_back(rng.below(X.size()), rng.below(X.size()));
            auto rel = EquivRelation::from_pairs(X.size(), pairs);
            auto q = quotient(X, rel);
            if (q.space.matrix() != oracle::quotient_chain_infimum(X, rel, 2 * X.size()))
                return "instance " + std::to_string(i) + " disagrees with the chain oracle";
        }
        return "";
    }));

    // 10. Tensor-hom adjunction, exhaustively on the tiny-space alphabet:
    //     map counts agree and transposition is a bijection.
    results.push_back(timed("tensor-hom-adjunction", [&]() -> std::string {
        auto spaces = tiny_spaces();
        for (std::size_t xi = 0; xi < spaces.size(); ++xi)
            for (std::size_t yi = 0; yi < spaces.size(); ++yi)
                for (std::size_t zi = 0; zi < spaces.size(); ++zi) {
                    const auto &X = spaces[xi], &Y = spaces[yi], &Z = spaces[zi];
                    auto tag = std::to_string(xi) + "," + std::to_string(yi) + "," + std::to_string(zi);
                    auto XY = tensor({X, Y});
                    auto E = exponential(Y, Z);

                    std::size_t lip_tensor = 0;
                    for (const auto& assign : all_assignments(XY.size(), Z.size())) {
                        auto f = PointMap::create(XY, Z, assign);
                        if (!is_one_lipschitz(f)) continue;
                        ++lip_tensor;
                        auto g = curry(f, X, Y);
                        if (!(uncurry(g, Y, Z) == f)) return "uncurry(curry(f)) != f at " + tag;
                    }
                    std::size_t lip_curried = 0;
                    for (const auto& assign : all_assignments(X.size(), E.space.size())) {
                        auto g = PointMap::create(X, E.space, assign);
                        if (!is_one_lipschitz(g)) continue;
                        ++lip_curried;
                        auto f = uncurry(g, Y, Z);
                        if (!(curry(f, X, Y) == g)) return "curry(uncurry(g)) != g at " + tag;
                    }
                    if (lip_tensor != lip_curried)
                        return "hom-set sizes differ at " + tag + ": " + std::to_string(lip_tensor) +
                               " vs " + std::to_string(lip_curried);
                }
        return "";
    }));

    // 11. The ten-point grid lines reproduce the summary table: ball bases,
    //     both symmetrised costs, both preorders.
    results.push_back(timed("grid-line-table", [&]() -> std::string {
        const std::size_t n = 10;
        std::vector<Rational> vals;
        for (std::size_t i = 0; i < n; ++i) vals.emplace_back(Rational(BigInt(i)));
        auto dgrid = grid_line(LineKind::Delta, vals);
        auto rgrid = grid_line(LineKind::Rho, vals);
        auto d0grid = grid_line(LineKind::Delta0, vals);

        auto euclid = [&](const FiniteRhoSpace& g) {
            for (std::size_t x = 0; x < n; ++x)
                for (std::size_t y = 0; y < n; ++y) {
                    Rational d = vals[x] < vals[y] ? vals[y] - vals[x] : vals[x] - vals[y];
                    if (!(g.rho(x, y) == ExtReal(d))) return false;
                }
            return true;
        };
        auto all_neg_inf = [&](const FiniteRhoSpace& g) {
            for (std::size_t x = 0; x < n; ++x)
                for (std::size_t y = 0; y < n; ++y)
                    if (!g.rho(x, y).is_neg_inf()) return false;
            return true;
        };
        auto all_zero = [&](const FiniteRhoSpace& g) {
            for (std::size_t x = 0; x < n; ++x)
                for (std::size_t y = 0; y < n; ++y)
                    if (!(g.rho(x, y) == ExtReal(0))) return false;
            return true;
        };
        auto is_discrete_metric = [&](const FiniteRhoSpace& g) {
            for (std::size_t x = 0; x < n; ++x)
                for (std::size_t y = 0; y < n; ++y) {
                    if (x == y && !(g.rho(x, y) == ExtReal(0))) return false;
                    if (x != y && !g.rho(x, y).is_pos_inf()) return false;
                }
            return true;
        };
        auto natural_order = [&](const Preorder& p) {
            for (std::size_t x = 0; x < n; ++x)
                for (std::size_t y = 0; y < n; ++y)
                    if (p.leq(x, y) != (x <= y)) return false;
            return true;
        };
        auto chaotic_order = [&](const Preorder& p) {
            for (std::size_t x = 0; x < n; ++x)
                for (std::size_t y = 0; y < n; ++y)
                    if (!p.leq(x, y)) return false;
            return true;
        };
        auto discrete_order = [&](const Preorder& p) {
            for (std::size_t x = 0; x < n; ++x)
                for (std::size_t y = 0; y < n; ++y)
                    if (p.leq(x, y) != (x == y)) return false;
            return true;
        };

        // one-way line: balls are single grid points, so everything splits
        for (std::size_t x0 = 0; x0 < n; ++x0) {
            auto ball = future_ball(dgrid, x0, Rational(1, 2));
            if (ball.indices() != std::vector<std::size_t>{x0}) return "one-way grid ball is not a point";
        }
        if (!euclid(reflective_sym(dgrid))) return "one-way grid reflective cost is not euclidean";
        if (!natural_order(reflective_preorder(dgrid))) return "one-way grid affordability is not the order";
        if (!is_discrete_metric(coreflective_sym(dgrid))) return "one-way grid coreflective cost is not discrete";
        if (!discrete_order(coreflective_preorder(dgrid))) return "one-way grid gain order is not discrete";
        {
            std::vector<PointSet> singletons;
            for (std::size_t x = 0; x < n; ++x) {
                PointSet s(n);
                s.insert(x);
                singletons.push_back(s);
            }
            if (!(future_topology(dgrid) == FiniteTopology::generate(dgrid.points(), singletons)))
                return "one-way grid future topology is not discrete";
        }

        // two-way line and its truncation: balls are lower sets
        for (const auto* g : {&rgrid, &d0grid}) {
            const bool two_way = g == &rgrid;
            std::string who = two_way ? "two-way" : "truncated";
            for (std::size_t x0 = 0; x0 < n; ++x0) {
                std::vector<std::size_t> expect;
                for (std::size_t x = 0; x <= x0; ++x) expect.push_back(x);
                if (future_ball(*g, x0, Rational(1, 2)).indices() != expect)
                    return who + " grid ball is not the lower set";
            }
            auto hat = reflective_sym(*g);
            if (two_way ? !all_neg_inf(hat) : !all_zero(hat)) return who + " grid reflective cost is not chaotic";
            if (!chaotic_order(reflective_preorder(*g))) return who + " grid affordability is not chaotic";
            if (!euclid(coreflective_sym(*g))) return who + " grid coreflective cost is not euclidean";
            if (!natural_order(coreflective_preorder(*g))) return who + " grid gain order is not the order";
            std::vector<PointSet> lower_sets;
            for (std::size_t k = 0; k < n; ++k) {
                PointSet s(n);
                for (std::size_t x = 0; x <= k; ++x) s.insert(x);
                lower_sets.push_back(s);
            }
            if (!(future_topology(*g) == FiniteTopology::generate(g->points(), lower_sets)))
                return who + " grid future topology is not the lower-set family";
        }
        return "";
    }));

    // 12. The whole suite stays inside its time budget.
    double total = 0;
    for (const auto& r : results) total += r.seconds;
    CheckResult runtime;
    runtime.name = "runtime-under-60s";
    runtime.passed = total < 60.0;
    runtime.seconds = total;
    runtime.detail = runtime.passed ? "" : "suite took too long";
    results.push_back(runtime);

    return results;
}

}  // namespace rhometric
