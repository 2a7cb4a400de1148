#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rhometric/constructions.hpp"
#include "rhometric/space.hpp"

namespace rhometric {

// ---------------------------------------------------------------------------
// Grid models of the three standard lines.

enum class LineKind {
    Delta,   // y - x forward, +inf backward: backward moves precluded
    Rho,     // y - x both ways: losses and gains
    Delta0,  // (y - x) v 0: backward moves free
};

inline ExtReal line_cost(LineKind kind, const Rational& x, const Rational& y) {
    switch (kind) {
        case LineKind::Rho: return ExtReal(Rational(y - x));
        case LineKind::Delta: return x <= y ? ExtReal(Rational(y - x)) : ExtReal::pos_inf();
        case LineKind::Delta0: return y > x ? ExtReal(Rational(y - x)) : ExtReal(0);
    }
    throw std::logic_error("line_cost: bad kind");
}

inline FiniteRhoSpace grid_line(LineKind kind, const std::vector<Rational>& values) {
    if (values.empty()) throw std::invalid_argument("grid_line: need at least one value");
    for (std::size_t i = 0; i + 1 < values.size(); ++i)
        if (!(values[i] < values[i + 1])) throw std::invalid_argument("grid_line: values must strictly increase");
    std::vector<std::string> labels;
    for (const auto& v : values) labels.push_back(rational_to_string(v));
    const std::size_t n = values.size();
    Matrix rho(n, std::vector<ExtReal>(n));
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) rho[x][y] = line_cost(kind, values[x], values[y]);
    return FiniteRhoSpace::create(std::move(labels), std::move(rho));
}

// ---------------------------------------------------------------------------
// Path kinds.

/// Piecewise-linear path into a line model, by breakpoints at strictly
/// increasing times from 0 to 1. Interpretation is linear interpolation.
class PLPath {
  public:
    static PLPath create(std::vector<Rational> times, std::vector<Rational> values, LineKind target) {
        if (times.size() < 2 || times.size() != values.size())
            throw std::invalid_argument("pl path: need matching times/values, at least two breakpoints");
        if (times.front() != 0 || times.back() != 1)
            throw std::invalid_argument("pl path: time must run from 0 to 1");
        for (std::size_t i = 0; i + 1 < times.size(); ++i)
            if (!(times[i] < times[i + 1])) throw std::invalid_argument("pl path: times must strictly increase");
        PLPath p;
        p.times_ = std::move(times);
        p.values_ = std::move(values);
        p.target_ = target;
        return p;
    }

    /// Evenly spaced breakpoints through the given profile values.
    static PLPath profile(std::vector<Rational> values, LineKind target) {
        if (values.size() < 2) throw std::invalid_argument("pl path: profile needs two values");
        std::vector<Rational> times;
        const std::size_t m = values.size() - 1;
        for (std::size_t i = 0; i <= m; ++i) times.emplace_back(Rational(i, m));
        return create(std::move(times), std::move(values), target);
    }

    [[nodiscard]] const std::vector<Rational>& times() const { return times_; }
    [[nodiscard]] const std::vector<Rational>& values() const { return values_; }
    [[nodiscard]] LineKind target() const { return target_; }

    /// Time reversal t |-> a(1 - t).
    [[nodiscard]] PLPath reversed() const {
        std::vector<Rational> t, v;
        for (std::size_t i = times_.size(); i-- > 0;) {
            t.emplace_back(Rational(1 - times_[i]));
            v.push_back(values_[i]);
        }
        return create(std::move(t), std::move(v), target_);
    }

  private:
    std::vector<Rational> times_;
    std::vector<Rational> values_;
    LineKind target_ = LineKind::Rho;
};

/// Right-continuous piecewise-constant path in a finite space: visit x_j on
/// [s_j, s_{j+1}), the last visit closing at 1.
class StepPath {
  public:
    static StepPath create(FiniteRhoSpace space, std::vector<std::size_t> visits,
                           std::vector<Rational> switch_times) {
        if (visits.empty()) throw std::invalid_argument("step path: no visits");
        if (switch_times.size() + 1 != visits.size())
            throw std::invalid_argument("step path: need one switch time between consecutive visits");
        for (std::size_t v : visits)
            if (v >= space.size()) throw std::invalid_argument("step path: visit out of range");
        for (std::size_t i = 0; i < switch_times.size(); ++i) {
            if (!(switch_times[i] > 0 && switch_times[i] < 1))
                throw std::invalid_argument("step path: switch times must lie strictly inside ]0,1[");
            if (i > 0 && !(switch_times[i - 1] < switch_times[i]))
                throw std::invalid_argument("step path: switch times must strictly increase");
        }
        StepPath p;
        p.space_ = std::move(space);
        p.visits_ = std::move(visits);
        p.switch_times_ = std::move(switch_times);
        return p;
    }

    [[nodiscard]] const FiniteRhoSpace& space() const { return space_; }
    [[nodiscard]] const std::vector<std::size_t>& visits() const { return visits_; }
    [[nodiscard]] const std::vector<Rational>& switch_times() const { return switch_times_; }

    [[nodiscard]] std::size_t value_at(const Rational& t) const {
        std::size_t piece = 0;
        while (piece < switch_times_.size() && t >= switch_times_[piece]) ++piece;
        return visits_[piece];
    }

  private:
    FiniteRhoSpace space_;
    std::vector<std::size_t> visits_;
    std::vector<Rational> switch_times_;
};

// ---------------------------------------------------------------------------
// Valuations.

struct ValuationReport {
    ExtReal v;                              // partition supremum of summed costs
    Weight v_plus;                          // total ascent: the same in the truncated space
    std::optional<Weight> v_minus;          // total descent; absent exactly when v == +inf
    std::optional<Weight> total_variation;  // linear targets only
    Weight lipschitz_weight;

    bool operator==(const ValuationReport&) const = default;
};

namespace detail {

inline std::optional<Weight> descent_of(const ExtReal& v, const Weight& v_plus) {
    if (v.is_pos_inf()) return std::nullopt;  // undefined in this corner
    if (v_plus.is_pos_inf() || v.is_neg_inf()) return Weight::pos_inf();
    return Weight(Rational(v_plus.finite() - v.finite()));
}

}  // namespace detail

/// Exact partition supremum for a step path. Refining inside a constant
/// piece contributes rho(x,x), so one flat visit drives v to -inf;
/// otherwise the supremum is attained at the full visit sequence.
inline ValuationReport step_valuation(const StepPath& p) {
    const auto& X = p.space();
    const auto& vs = p.visits();

    bool flat_visit = false;
    for (std::size_t x : vs)
        if (X.rho(x, x).is_neg_inf()) flat_visit = true;

    ExtReal v(0);
    Weight ascent(0);
    bool all_steps_free = true;  // every forward transition <= 0
    for (std::size_t j = 1; j < vs.size(); ++j) {
        const ExtReal& step = X.rho(vs[j - 1], vs[j]);
        v = esum(v, step);
        ascent = ascent + positive_part(step);
        if (ExtReal(0) < step) all_steps_free = false;
    }
    if (flat_visit && !v.is_pos_inf()) v = ExtReal::neg_inf();

    ValuationReport r{v, ascent, detail::descent_of(v, ascent), std::nullopt,
                      all_steps_free ? Weight(0) : Weight::pos_inf()};
    if (classify(X).linear) {
        Weight tv(0);
        for (std::size_t j = 1; j < vs.size(); ++j)
            tv = tv + Weight(rational_abs(X.rho(vs[j - 1], vs[j]).finite()));
        r.total_variation = tv;
    }
    return r;
}

/// Largest segment slope, clamped by what the target tolerates: downhill is
/// free in the rho/delta0 lines but forbidden (not Lipschitz) in the
/// delta line.
inline Weight pl_lipschitz_weight(const PLPath& p) {
    Rational best = 0;
    bool decreasing_segment = false;
    for (std::size_t i = 1; i < p.times().size(); ++i) {
        Rational slope = (p.values()[i] - p.values()[i - 1]) / (p.times()[i] - p.times()[i - 1]);
        if (slope < 0) decreasing_segment = true;
        if (slope > best) best = slope;
    }
    if (p.target() == LineKind::Delta && decreasing_segment) return Weight::pos_inf();
    return Weight(best);
}

/// Analytic valuation of a piecewise-linear path; the partition supremum is
/// attained at the breakpoint partition, by monotone decomposition, so all
/// values are exact.
inline ValuationReport pl_valuation(const PLPath& p) {
    const auto& ys = p.values();
    Rational rise = 0, drop = 0;
    bool nondecreasing = true;
    for (std::size_t i = 1; i < ys.size(); ++i) {
        Rational d = ys[i] - ys[i - 1];
        if (d > 0) rise += d;
        if (d < 0) {
            drop -= d;
            nondecreasing = false;
        }
    }
    Rational net = ys.back() - ys.front();

    ValuationReport r{ExtReal(0), Weight(0), std::nullopt, std::nullopt, pl_lipschitz_weight(p)};
    switch (p.target()) {
        case LineKind::Rho:
            r.v = ExtReal(net);
            r.v_plus = Weight(rise);
            r.v_minus = Weight(drop);
            r.total_variation = Weight(Rational(rise + drop));
            break;
        case LineKind::Delta:
            r.v = nondecreasing ? ExtReal(net) : ExtReal::pos_inf();
            r.v_plus = nondecreasing ? Weight(net) : Weight::pos_inf();
            r.v_minus = detail::descent_of(r.v, r.v_plus);
            break;
        case LineKind::Delta0:
            r.v = ExtReal(rise);
            r.v_plus = Weight(rise);
            r.v_minus = Weight(0);
            break;
    }
    return r;
}

// ---------------------------------------------------------------------------
// Path algebra: concatenation, reparametrisation, images, pairing.

inline StepPath concat(const StepPath& a, const StepPath& b) {
    if (!(a.space() == b.space())) throw std::invalid_argument("concat: paths live in different spaces");
    if (a.visits().back() != b.visits().front())
        throw std::invalid_argument("concat: second path must start where the first ends");
    std::vector<std::size_t> visits = a.visits();
    visits.insert(visits.end(), b.visits().begin() + 1, b.visits().end());
    // no switch at 1/2: a ends on the same point b starts on
    std::vector<Rational> times;
    for (const auto& t : a.switch_times()) times.emplace_back(Rational(t / 2));
    for (const auto& t : b.switch_times()) times.emplace_back(Rational((t + 1) / 2));
    auto out = StepPath::create(a.space(), std::move(visits), std::move(times));
    if (!(step_valuation(out).v == esum(step_valuation(a).v, step_valuation(b).v)))
        throw std::logic_error("concat: valuation failed to add");
    return out;
}

inline PLPath concat(const PLPath& a, const PLPath& b) {
    if (a.target() != b.target()) throw std::invalid_argument("concat: paths target different lines");
    if (a.values().back() != b.values().front())
        throw std::invalid_argument("concat: second path must start where the first ends");
    std::vector<Rational> times, values;
    for (std::size_t i = 0; i < a.times().size(); ++i) {
        times.emplace_back(Rational(a.times()[i] / 2));
        values.push_back(a.values()[i]);
    }
    for (std::size_t i = 1; i < b.times().size(); ++i) {
        times.emplace_back(Rational((b.times()[i] + 1) / 2));
        values.push_back(b.values()[i]);
    }
    auto out = PLPath::create(std::move(times), std::move(values), a.target());
    if (!(pl_valuation(out).v == esum(pl_valuation(a).v, pl_valuation(b).v)))
        throw std::logic_error("concat: valuation failed to add");
    return out;
}

/// Piecewise-linear nondecreasing time map [0,1] -> [0,1].
class PLTimeMap {
  public:
    static PLTimeMap create(std::vector<Rational> times, std::vector<Rational> values) {
        if (times.size() < 2 || times.size() != values.size())
            throw std::invalid_argument("time map: need matching times/values");
        if (times.front() != 0 || times.back() != 1)
            throw std::invalid_argument("time map: domain must run from 0 to 1");
        for (std::size_t i = 0; i + 1 < times.size(); ++i)
            if (!(times[i] < times[i + 1])) throw std::invalid_argument("time map: times must strictly increase");
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (values[i] < 0 || values[i] > 1)
                throw std::invalid_argument("time map: values must stay inside [0,1]");
            if (i > 0 && values[i] < values[i - 1])
                throw std::invalid_argument("time map: must be nondecreasing");
        }
        PLTimeMap m;
        m.times_ = std::move(times);
        m.values_ = std::move(values);
        return m;
    }

    static PLTimeMap identity() { return create({Rational(0), Rational(1)}, {Rational(0), Rational(1)}); }

    [[nodiscard]] const std::vector<Rational>& times() const { return times_; }
    [[nodiscard]] const std::vector<Rational>& values() const { return values_; }
    [[nodiscard]] bool surjective() const { return values_.front() == 0 && values_.back() == 1; }

    [[nodiscard]] Rational operator()(const Rational& t) const {
        if (t < 0 || t > 1) throw std::domain_error("time map: argument outside [0,1]");
        std::size_t i = 1;
        while (i + 1 < times_.size() && t > times_[i]) ++i;
        const Rational &t0 = times_[i - 1], &t1 = times_[i];
        const Rational &v0 = values_[i - 1], &v1 = values_[i];
        return v0 + (t - t0) * (v1 - v0) / (t1 - t0);
    }

    /// Least t with phi(t) >= s; none when s is never reached.
    [[nodiscard]] std::optional<Rational> first_reach(const Rational& s) const {
        if (values_.front() >= s) return Rational(0);
        for (std::size_t i = 1; i < times_.size(); ++i)
            if (values_[i] >= s) {
                // first segment crossing s; its left value sits below s
                const Rational &t0 = times_[i - 1], &t1 = times_[i];
                const Rational &v0 = values_[i - 1], &v1 = values_[i];
                return Rational(t0 + (s - v0) * (t1 - t0) / (v1 - v0));
            }
        return std::nullopt;
    }

  private:
    std::vector<Rational> times_;
    std::vector<Rational> values_;
};

/// Composite a(phi(t)) as a step path. For a surjective (endpoint-fixing)
/// phi the valuation is unchanged and that is re-checked here; otherwise
/// only finiteness survives, also re-checked.
inline StepPath reparametrize(const StepPath& a, const PLTimeMap& phi) {
    const auto& switches = a.switch_times();
    std::vector<std::size_t> visits{a.value_at(phi(Rational(0)))};
    std::vector<Rational> new_times;
    for (std::size_t j = 0; j < switches.size(); ++j) {
        auto hit = phi.first_reach(switches[j]);
        if (!hit || *hit == 0) continue;  // piece skipped, or already inside it at t = 0
        if (*hit == 1)
            throw std::invalid_argument(
                "reparametrize: phi first reaches a switch value exactly at t = 1; "
                "not representable as a step path");
        new_times.push_back(*hit);
        visits.push_back(a.visits()[j + 1]);
    }
    auto out = StepPath::create(a.space(), std::move(visits), std::move(new_times));
    ExtReal va = step_valuation(a).v;
    ExtReal vc = step_valuation(out).v;
    if (phi.surjective()) {
        if (!(vc == va)) throw std::logic_error("reparametrize: surjective phi must preserve the valuation");
    } else if (!va.is_pos_inf() && vc.is_pos_inf()) {
        throw std::logic_error("reparametrize: finiteness must be preserved");
    }
    return out;
}

/// Image of a step path under an l-Lipschitz map; the valuation inequality
/// v(f a) <= l * v(a) is re-checked on the way out.
inline StepPath map_path(const PointMap& f, const Coeff& l, const StepPath& a) {
    if (!(a.space() == f.source())) throw std::invalid_argument("map_path: path does not live in the source");
    if (!is_lipschitz(f, l)) throw std::domain_error("map_path: map is not Lipschitz for the given constant");
    std::vector<std::size_t> visits;
    for (std::size_t x : a.visits()) visits.push_back(f(x));
    auto out = StepPath::create(f.target(), std::move(visits), a.switch_times());
    if (scale(l, step_valuation(a).v) < step_valuation(out).v)
        throw std::logic_error("map_path: image valuation exceeded the Lipschitz bound");
    return out;
}

/// Valuation of the paired path <a,b> into the tensor of the two spaces;
/// computed directly and through the components, which must agree.
inline ExtReal tensor_path_valuation(const StepPath& a, const StepPath& b) {
    auto T = tensor({a.space(), b.space()});
    std::vector<Rational> merged = a.switch_times();
    merged.insert(merged.end(), b.switch_times().begin(), b.switch_times().end());
    std::sort(merged.begin(), merged.end());
    merged.erase(std::unique(merged.begin(), merged.end()), merged.end());

    std::vector<std::size_t> visits;
    std::vector<Rational> boundaries{Rational(0)};
    boundaries.insert(boundaries.end(), merged.begin(), merged.end());
    for (const Rational& t : boundaries)
        visits.push_back(a.value_at(t) * b.space().size() + b.value_at(t));
    auto paired = StepPath::create(T, std::move(visits), std::move(merged));

    ExtReal direct = step_valuation(paired).v;
    ExtReal split = esum(step_valuation(a).v, step_valuation(b).v);
    if (!(direct == split)) throw std::logic_error("tensor_path_valuation: the two routes disagree");
    return direct;
}

// ---------------------------------------------------------------------------
// The two physical potentials used as stock linear metrics.

/// Potential energy per unit mass at altitude ratio x >= 0 (altitude over
/// planet radius), normalised to vanish at the surface: k x / (1 + x).
inline Rational gravitational_potential(const Rational& x, const Rational& k) {
    if (x < 0) throw std::domain_error("gravitational_potential: altitude ratio must be >= 0");
    if (k <= 0) throw std::domain_error("gravitational_potential: k must be positive");
    return k * x / (1 + x);
}

/// Elastic potential lam * (x^2 + y^2) around the origin of the plane.
inline Rational elastic_potential(const Rational& x, const Rational& y, const Rational& lam) {
    if (lam <= 0) throw std::domain_error("elastic_potential: lam must be positive");
    return lam * (x * x + y * y);
}

}  // namespace rhometric
