#pragma once

#include <cstddef>
#include <vector>

#include "rhometric/space.hpp"

namespace rhometric {

/// Reflexive-transitive min-plus closure of an arc matrix, with the walk
/// semantics every infimum formula in the library reduces to:
///
///   out[x][y] = inf over all finite walks x -> y of the summed arc costs,
///               the empty walk (cost 0) included on the diagonal.
///
/// The infimum ranges over unbounded walk lengths, so any strictly negative
/// cycle (and any -inf arc) reachable between x and y pushes the value to
/// -inf; +inf arcs never help and are ignored. Entries not touched by either
/// effect are exact shortest simple-walk sums.
struct ClosureResult {
    Matrix dist;
    // next[x][y] = first hop of a minimising walk, n when x == y with the
    // empty walk, or n+1 when no finite witness exists (-inf / +inf entries).
    std::vector<std::vector<std::size_t>> next;
};

inline ClosureResult min_plus_closure(const Matrix& arcs) {
    const std::size_t n = arcs.size();
    const std::size_t kEmpty = n, kNone = n + 1;
    ClosureResult r;
    r.dist.assign(n, std::vector<ExtReal>(n, ExtReal::pos_inf()));
    r.next.assign(n, std::vector<std::size_t>(n, kNone));

    // Reachability along every arc that costs less than +inf.
    std::vector<std::vector<char>> reach(n, std::vector<char>(n, 0));
    for (std::size_t x = 0; x < n; ++x) {
        reach[x][x] = 1;
        for (std::size_t y = 0; y < n; ++y)
            if (!arcs[x][y].is_pos_inf()) reach[x][y] = 1;
    }
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t x = 0; x < n; ++x)
            for (std::size_t y = 0; y < n; ++y)
                if (reach[x][k] && reach[k][y]) reach[x][y] = 1;

    // Shortest walks over the finite arcs alone. Entries that negative
    // cycles corrupt are overwritten below, so plain Floyd-Warshall is safe.
    for (std::size_t x = 0; x < n; ++x) {
        r.dist[x][x] = ExtReal(0);
        r.next[x][x] = kEmpty;
        for (std::size_t y = 0; y < n; ++y)
            if (arcs[x][y].is_finite() && arcs[x][y] < r.dist[x][y]) {
                r.dist[x][y] = arcs[x][y];
                r.next[x][y] = y;
            }
    }
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t x = 0; x < n; ++x) {
            if (r.dist[x][k].is_pos_inf()) continue;
            for (std::size_t y = 0; y < n; ++y) {
                if (r.dist[k][y].is_pos_inf()) continue;
                ExtReal via = esum(r.dist[x][k], r.dist[k][y]);
                if (via < r.dist[x][y]) {
                    r.dist[x][y] = via;
                    r.next[x][y] = r.next[x][k];
                }
            }
        }

    // A node with a negative self-walk lies on a negative cycle.
    std::vector<char> sink(n, 0);
    for (std::size_t v = 0; v < n; ++v)
        if (r.dist[v][v] < ExtReal(0)) sink[v] = 1;

    auto drown = [&](std::size_t u, std::size_t v) {
        for (std::size_t x = 0; x < n; ++x) {
            if (!reach[x][u]) continue;
            for (std::size_t y = 0; y < n; ++y)
                if (reach[v][y]) {
                    r.dist[x][y] = ExtReal::neg_inf();
                    r.next[x][y] = kNone;
                }
        }
    };
    for (std::size_t v = 0; v < n; ++v)
        if (sink[v]) drown(v, v);
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = 0; v < n; ++v)
            if (arcs[u][v].is_neg_inf()) drown(u, v);

    return r;
}

/// Hops of a minimising walk recorded by min_plus_closure, empty for the
/// empty walk; call only for finite dist entries.
inline std::vector<std::size_t> closure_walk(const ClosureResult& r, std::size_t x, std::size_t y) {
    const std::size_t n = r.dist.size();
    std::vector<std::size_t> nodes{x};
    std::size_t at = x;
    while (at != y || nodes.size() == 1) {
        if (at == y && r.next[x][y] == n) break;  // empty walk on the diagonal
        std::size_t hop = r.next[at][y];
        if (hop > n) throw std::logic_error("closure_walk: no finite witness recorded");
        nodes.push_back(hop);
        at = hop;
        if (nodes.size() > n + 2) throw std::logic_error("closure_walk: witness reconstruction looped");
    }
    return nodes;
}

}  // namespace rhometric
