#pragma once

// Reference implementations used to cross-check the library: straightforward
// bounded enumerations, sharing no code with the closure kernel or the
// analytic valuations they are compared against. Desk scale only.

#include <vector>

#include "rhometric/constructions.hpp"
#include "rhometric/paths.hpp"
#include "rhometric/space.hpp"

namespace rhometric::oracle {

/// Infimum over walks of at most max_edges arcs, by plain relaxation rounds,
/// plus a negative-cycle sweep done by exhaustive simple-cycle enumeration.
/// Exact for spaces small enough that minimising walks fit in the bound.
inline Matrix walk_infimum(const Matrix& arcs, std::size_t max_edges) {
    const std::size_t n = arcs.size();

    // walks with <= k arcs, k growing one at a time
    Matrix best(n, std::vector<ExtReal>(n, ExtReal::pos_inf()));
    for (std::size_t i = 0; i < n; ++i) best[i][i] = ExtReal(0);
    for (std::size_t round = 0; round < max_edges; ++round) {
        Matrix next = best;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t k = 0; k < n; ++k) {
                    ExtReal via = esum(best[i][k], arcs[k][j]);
                    if (via < next[i][j]) next[i][j] = via;
                }
        best = std::move(next);
    }

    // reachability along arcs cheaper than +inf, by fixpoint
    std::vector<std::vector<char>> reach(n, std::vector<char>(n, 0));
    for (std::size_t i = 0; i < n; ++i) reach[i][i] = 1;
    bool grew = true;
    while (grew) {
        grew = false;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (reach[i][j])
                    for (std::size_t k = 0; k < n; ++k)
                        if (!arcs[j][k].is_pos_inf() && !reach[i][k]) {
                            reach[i][k] = 1;
                            grew = true;
                        }
    }

    // nodes on a strictly negative simple cycle
    std::vector<char> on_negative(n, 0);
    std::vector<std::size_t> stack;
    std::vector<char> used(n, 0);
    auto dfs = [&](auto&& self, std::size_t start, std::size_t at, const ExtReal& cost) -> void {
        for (std::size_t to = 0; to < n; ++to) {
            if (arcs[at][to].is_pos_inf()) continue;
            ExtReal total = esum(cost, arcs[at][to]);
            if (to == start) {
                if (total < ExtReal(0))
                    for (std::size_t v : stack) on_negative[v] = 1;
                continue;
            }
            if (used[to]) continue;
            used[to] = 1;
            stack.push_back(to);
            self(self, start, to, total);
            stack.pop_back();
            used[to] = 0;
        }
    };
    for (std::size_t v = 0; v < n; ++v) {
        stack.assign(1, v);
        used.assign(n, 0);
        used[v] = 1;
        dfs(dfs, v, v, ExtReal(0));
    }

    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t v = 0; v < n; ++v)
                if (on_negative[v] && reach[i][v] && reach[v][j]) best[i][j] = ExtReal::neg_inf();
    return best;
}

/// Step-path infimum behind the reflective symmetrisation: walks over the
/// pointwise min of the two directions.
inline Matrix reflective_sym_infimum(const FiniteRhoSpace& s, std::size_t max_edges) {
    const std::size_t n = s.size();
    Matrix arcs(n, std::vector<ExtReal>(n));
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) arcs[x][y] = emin(s.rho(x, y), s.rho(y, x));
    return walk_infimum(arcs, max_edges);
}

/// Chain infimum behind the quotient cost: original arcs plus free jumps
/// inside classes, minimised over class representatives.
inline Matrix quotient_chain_infimum(const FiniteRhoSpace& s, const EquivRelation& rel,
                                     std::size_t max_edges) {
    const std::size_t n = s.size();
    Matrix arcs(n, std::vector<ExtReal>(n));
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = 0; v < n; ++v)
            arcs[u][v] = (u != v && rel.related(u, v)) ? emin(s.rho(u, v), ExtReal(0)) : s.rho(u, v);
    Matrix walks = walk_infimum(arcs, max_edges);
    const auto& classes = rel.classes();
    Matrix out(classes.size(), std::vector<ExtReal>(classes.size(), ExtReal::pos_inf()));
    for (std::size_t c = 0; c < classes.size(); ++c)
        for (std::size_t d = 0; d < classes.size(); ++d)
            for (std::size_t x : classes[c])
                for (std::size_t y : classes[d]) out[c][d] = emin(out[c][d], walks[x][y]);
    return out;
}

// ---------------------------------------------------------------------------
// Partition-based valuation of piecewise-linear paths.

inline Rational pl_value_at(const PLPath& p, const Rational& t) {
    const auto& ts = p.times();
    const auto& ys = p.values();
    std::size_t i = 1;
    while (i + 1 < ts.size() && t > ts[i]) ++i;
    return ys[i - 1] + (t - ts[i - 1]) * (ys[i] - ys[i - 1]) / (ts[i] - ts[i - 1]);
}

struct PLValuationBound {
    ExtReal v;
    Weight v_plus;
};

/// Supremum over sampled partitions: every subset of the breakpoints, and
/// the breakpoints refined by segment midpoints. For piecewise-linear paths
/// this attains the true supremum.
inline PLValuationBound pl_partition_supremum(const PLPath& p) {
    const auto& ts = p.times();
    std::vector<std::vector<Rational>> partitions;

    const std::size_t interior = ts.size() - 2;
    for (std::size_t mask = 0; mask < (std::size_t(1) << interior); ++mask) {
        std::vector<Rational> part{ts.front()};
        for (std::size_t i = 0; i < interior; ++i)
            if (mask & (std::size_t(1) << i)) part.push_back(ts[i + 1]);
        part.push_back(ts.back());
        partitions.push_back(std::move(part));
    }
    std::vector<Rational> refined;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        refined.push_back(ts[i]);
        if (i + 1 < ts.size()) refined.push_back((ts[i] + ts[i + 1]) / 2);
    }
    partitions.push_back(std::move(refined));

    ExtReal v = ExtReal::neg_inf();
    Weight ascent(0);
    for (const auto& part : partitions) {
        ExtReal sum(0);
        Weight plus(0);
        for (std::size_t j = 1; j < part.size(); ++j) {
            ExtReal step = line_cost(p.target(), pl_value_at(p, part[j - 1]), pl_value_at(p, part[j]));
            sum = esum(sum, step);
            plus = plus + positive_part(step);
        }
        v = emax(v, sum);
        if (ascent < plus) ascent = plus;
    }
    return {v, ascent};
}

struct MonotoneSummary {
    Rational rise;
    Rational drop;
};

/// Total ascent and descent read off the maximal monotone runs of a profile.
inline MonotoneSummary monotone_segments(const std::vector<Rational>& values) {
    MonotoneSummary m{0, 0};
    for (std::size_t i = 1; i < values.size(); ++i) {
        Rational d = values[i] - values[i - 1];
        if (d > 0) m.rise += d;
        if (d < 0) m.drop -= d;
    }
    return m;
}

}  // namespace rhometric::oracle
