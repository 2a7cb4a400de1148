#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rhometric/closure.hpp"
#include "rhometric/space.hpp"

namespace rhometric {

inline constexpr std::size_t kDefaultPointCap = 4096;   // carrier size of product/tensor
inline constexpr std::size_t kDefaultMapCap = 1000000;  // candidate maps of an exponential

/// Enumeration limits are explicit configuration; hitting one is a
/// deterministic, recoverable failure, distinct from validation errors.
class CapExceeded : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

namespace detail {

inline std::string tuple_label(const std::vector<FiniteRhoSpace>& spaces, const std::vector<std::size_t>& at) {
    std::string s = "(";
    for (std::size_t i = 0; i < spaces.size(); ++i) {
        if (i) s += ",";
        s += spaces[i].label(at[i]);
    }
    return s + ")";
}

/// Row-major tuple enumeration: the last component varies fastest, so the
/// pair (x, y) of a binary product/tensor sits at index x*|Y| + y.
template <typename Fn>
void for_each_tuple(const std::vector<FiniteRhoSpace>& spaces, Fn&& fn) {
    std::vector<std::size_t> at(spaces.size(), 0);
    while (true) {
        fn(const_cast<const std::vector<std::size_t>&>(at));
        std::size_t i = spaces.size();
        while (i > 0) {
            --i;
            if (++at[i] < spaces[i].size()) break;
            at[i] = 0;
            if (i == 0) return;
        }
        if (spaces.empty()) return;
    }
}

inline std::size_t checked_carrier_size(const std::vector<FiniteRhoSpace>& spaces, std::size_t cap,
                                        const char* what) {
    std::size_t total = 1;
    for (const auto& s : spaces) {
        if (s.size() == 0) return 0;
        if (total > cap / s.size()) throw CapExceeded(std::string(what) + ": carrier exceeds cap");
        total *= s.size();
    }
    if (total > cap) throw CapExceeded(std::string(what) + ": carrier exceeds cap");
    return total;
}

}  // namespace detail

/// One-point space with cost -inf: the terminal object. Every space has a
/// unique structure-respecting map into it.
inline FiniteRhoSpace terminal() {
    return FiniteRhoSpace::create({"*"}, {{ExtReal::neg_inf()}});
}

/// One-point space with cost 0: the unit of the tensor product.
inline FiniteRhoSpace delta_singleton() {
    return FiniteRhoSpace::create({"*"}, {{ExtReal(0)}});
}

/// Cartesian product with the sup-type cost. The empty product is the
/// terminal object (the max over no components is the lattice bottom).
inline FiniteRhoSpace product(const std::vector<FiniteRhoSpace>& spaces, std::size_t cap = kDefaultPointCap) {
    if (spaces.empty()) return terminal();
    std::size_t total = detail::checked_carrier_size(spaces, cap, "product");
    std::vector<std::string> labels;
    std::vector<std::vector<std::size_t>> tuples;
    labels.reserve(total);
    if (total > 0)
        detail::for_each_tuple(spaces, [&](const std::vector<std::size_t>& at) {
            labels.push_back(detail::tuple_label(spaces, at));
            tuples.push_back(at);
        });
    Matrix rho(total, std::vector<ExtReal>(total));
    for (std::size_t a = 0; a < total; ++a)
        for (std::size_t b = 0; b < total; ++b) {
            ExtReal v = ExtReal::neg_inf();
            for (std::size_t i = 0; i < spaces.size(); ++i)
                v = emax(v, spaces[i].rho(tuples[a][i], tuples[b][i]));
            rho[a][b] = v;
        }
    return FiniteRhoSpace::create(std::move(labels), std::move(rho));
}

/// Tensor product: same carrier as the product, costs added instead of
/// joined. The empty tensor is the delta-singleton unit.
inline FiniteRhoSpace tensor(const std::vector<FiniteRhoSpace>& spaces, std::size_t cap = kDefaultPointCap) {
    if (spaces.empty()) return delta_singleton();
    std::size_t total = detail::checked_carrier_size(spaces, cap, "tensor");
    std::vector<std::string> labels;
    std::vector<std::vector<std::size_t>> tuples;
    labels.reserve(total);
    if (total > 0)
        detail::for_each_tuple(spaces, [&](const std::vector<std::size_t>& at) {
            labels.push_back(detail::tuple_label(spaces, at));
            tuples.push_back(at);
        });
    Matrix rho(total, std::vector<ExtReal>(total));
    for (std::size_t a = 0; a < total; ++a)
        for (std::size_t b = 0; b < total; ++b) {
            ExtReal v(0);
            for (std::size_t i = 0; i < spaces.size(); ++i)
                v = esum(v, spaces[i].rho(tuples[a][i], tuples[b][i]));
            rho[a][b] = v;
        }
    return FiniteRhoSpace::create(std::move(labels), std::move(rho));
}

/// Disjoint union; transitions across components cost +inf. The empty sum
/// is the empty space, the initial object.
inline FiniteRhoSpace sum(const std::vector<FiniteRhoSpace>& spaces) {
    std::vector<std::string> labels;
    std::size_t total = 0;
    for (const auto& s : spaces) total += s.size();
    labels.reserve(total);
    for (std::size_t i = 0; i < spaces.size(); ++i)
        for (std::size_t p = 0; p < spaces[i].size(); ++p)
            labels.push_back(std::to_string(i) + ":" + spaces[i].label(p));
    Matrix rho(total, std::vector<ExtReal>(total, ExtReal::pos_inf()));
    std::size_t base = 0;
    for (const auto& s : spaces) {
        for (std::size_t x = 0; x < s.size(); ++x)
            for (std::size_t y = 0; y < s.size(); ++y) rho[base + x][base + y] = s.rho(x, y);
        base += s.size();
    }
    return FiniteRhoSpace::create(std::move(labels), std::move(rho));
}

struct SubspaceResult {
    FiniteRhoSpace space;
    PointMap inclusion;
};

/// Points where two parallel 1-Lipschitz maps agree, with the restricted cost.
inline SubspaceResult equalizer(const PointMap& f, const PointMap& g) {
    if (!(f.source() == g.source()) || !(f.target() == g.target()))
        throw std::invalid_argument("equalizer: maps are not parallel");
    if (!is_one_lipschitz(f) || !is_one_lipschitz(g))
        throw std::invalid_argument("equalizer: maps must be 1-Lipschitz");
    const auto& X = f.source();
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < X.size(); ++i)
        if (f(i) == g(i)) keep.push_back(i);
    std::vector<std::string> labels;
    for (std::size_t i : keep) labels.push_back(X.label(i));
    Matrix rho(keep.size(), std::vector<ExtReal>(keep.size()));
    for (std::size_t a = 0; a < keep.size(); ++a)
        for (std::size_t b = 0; b < keep.size(); ++b) rho[a][b] = X.rho(keep[a], keep[b]);
    auto sub = FiniteRhoSpace::create(std::move(labels), std::move(rho));
    return {sub, PointMap::create(sub, X, keep)};
}

// ---------------------------------------------------------------------------
// Quotients.

class EquivRelation {
  public:
    /// Partition of {0..n-1}; every point in exactly one class.
    static EquivRelation create(std::size_t n, std::vector<std::vector<std::size_t>> classes) {
        EquivRelation r;
        r.class_of_.assign(n, n);
        for (std::size_t c = 0; c < classes.size(); ++c) {
            if (classes[c].empty()) throw std::invalid_argument("partition: empty class");
            for (std::size_t p : classes[c]) {
                if (p >= n) throw std::invalid_argument("partition: point out of range");
                if (r.class_of_[p] != n) throw std::invalid_argument("partition: point in two classes");
                r.class_of_[p] = c;
            }
        }
        for (std::size_t p = 0; p < n; ++p)
            if (r.class_of_[p] == n) throw std::invalid_argument("partition: point in no class");
        r.classes_ = std::move(classes);
        return r;
    }

    static EquivRelation identity(std::size_t n) {
        std::vector<std::vector<std::size_t>> cls(n);
        for (std::size_t i = 0; i < n; ++i) cls[i] = {i};
        return create(n, std::move(cls));
    }

    /// Merges the named pairs into joint classes, everything else singleton.
    static EquivRelation from_pairs(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& pairs) {
        std::vector<std::size_t> parent(n);
        for (std::size_t i = 0; i < n; ++i) parent[i] = i;
        auto find = [&](std::size_t a) {
            while (parent[a] != a) a = parent[a] = parent[parent[a]];
            return a;
        };
        for (auto [a, b] : pairs) {
            if (a >= n || b >= n) throw std::invalid_argument("partition: point out of range");
            parent[find(a)] = find(b);
        }
        std::vector<std::vector<std::size_t>> cls;
        std::vector<std::size_t> root_class(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            std::size_t r = find(i);
            if (root_class[r] == n) {
                root_class[r] = cls.size();
                cls.emplace_back();
            }
            cls[root_class[r]].push_back(i);
        }
        return create(n, std::move(cls));
    }

    [[nodiscard]] std::size_t point_count() const { return class_of_.size(); }
    [[nodiscard]] const std::vector<std::vector<std::size_t>>& classes() const { return classes_; }
    [[nodiscard]] std::size_t class_of(std::size_t p) const { return class_of_.at(p); }
    [[nodiscard]] bool related(std::size_t a, std::size_t b) const { return class_of(a) == class_of(b); }

  private:
    std::vector<std::vector<std::size_t>> classes_;
    std::vector<std::size_t> class_of_;
};

/// A minimising chain behind one quotient cost: the costed steps, linked by
/// class jumps. Empty steps witness a same-class cost of 0.
struct ChainWitness {
    std::vector<std::pair<std::size_t, std::size_t>> steps;  // indices in the source space
    ExtReal total;
};

struct QuotientResult {
    FiniteRhoSpace space;
    PointMap projection;
    std::vector<std::vector<std::optional<ChainWitness>>> witnesses;  // per class pair, finite costs only
};

/// Quotient by a partition: the finest cost making the projection
/// structure-respecting. Costs are walk infima over the original costs plus
/// free jumps inside classes; arbitrarily negative chains give -inf.
inline QuotientResult quotient(const FiniteRhoSpace& s, const EquivRelation& rel) {
    const std::size_t n = s.size();
    if (rel.point_count() != n) throw std::invalid_argument("quotient: partition size mismatch");

    Matrix arcs(n, std::vector<ExtReal>(n));
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = 0; v < n; ++v)
            arcs[u][v] = (u != v && rel.related(u, v)) ? emin(s.rho(u, v), ExtReal(0)) : s.rho(u, v);
    ClosureResult cl = min_plus_closure(arcs);

    const auto& classes = rel.classes();
    const std::size_t m = classes.size();
    std::vector<std::string> labels;
    for (const auto& cls : classes) {
        std::string l = "{";
        for (std::size_t i = 0; i < cls.size(); ++i) {
            if (i) l += ",";
            l += s.label(cls[i]);
        }
        labels.push_back(l + "}");
    }

    Matrix rho(m, std::vector<ExtReal>(m, ExtReal::pos_inf()));
    std::vector<std::vector<std::optional<ChainWitness>>> wit(m, std::vector<std::optional<ChainWitness>>(m));
    for (std::size_t c = 0; c < m; ++c)
        for (std::size_t d = 0; d < m; ++d) {
            std::size_t bx = n, by = n;
            for (std::size_t x : classes[c])
                for (std::size_t y : classes[d])
                    if (bx == n || cl.dist[x][y] < rho[c][d]) {
                        rho[c][d] = cl.dist[x][y];
                        bx = x;
                        by = y;
                    }
            if (rho[c][d].is_finite()) {
                ChainWitness w;
                w.total = ExtReal(0);
                auto nodes = closure_walk(cl, bx, by);
                for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
                    std::size_t a = nodes[i], b = nodes[i + 1];
                    bool jump = rel.related(a, b) && a != b && !(s.rho(a, b) < ExtReal(0));
                    if (!jump) {
                        w.steps.emplace_back(a, b);
                        w.total = esum(w.total, s.rho(a, b));
                    }
                }
                if (!(w.total == rho[c][d]))
                    throw std::logic_error("quotient: witness total disagrees with closure");
                wit[c][d] = std::move(w);
            }
        }

    auto qspace = FiniteRhoSpace::create(std::move(labels), std::move(rho));
    std::vector<std::size_t> proj(n);
    for (std::size_t p = 0; p < n; ++p) proj[p] = rel.class_of(p);
    return {qspace, PointMap::create(s, qspace, std::move(proj)), std::move(wit)};
}

// ---------------------------------------------------------------------------
// Exponentials and the tensor-hom correspondence.

struct ExponentialSpace {
    FiniteRhoSpace space;                        // points are the 1-Lipschitz maps base -> target
    FiniteRhoSpace base, target;                 // Y and Z of Z^Y
    std::vector<std::vector<std::size_t>> maps;  // assignment table per point
};

/// Z^Y: all 1-Lipschitz maps Y -> Z under the sup cost
/// rho(h,k) = max over y of rho_Z(h y, k y); -inf for empty Y.
inline ExponentialSpace exponential(const FiniteRhoSpace& Y, const FiniteRhoSpace& Z,
                                    std::size_t cap = kDefaultMapCap) {
    std::size_t candidates = 1;
    for (std::size_t i = 0; i < Y.size(); ++i) {
        if (Z.size() == 0) {
            candidates = 0;
            break;
        }
        if (candidates > cap / Z.size()) throw CapExceeded("exponential: candidate maps exceed cap");
        candidates *= Z.size();
    }

    std::vector<std::vector<std::size_t>> maps;
    std::vector<std::size_t> at(Y.size(), 0);
    for (std::size_t c = 0; c < candidates; ++c) {
        bool lip = true;
        for (std::size_t x = 0; x < Y.size() && lip; ++x)
            for (std::size_t y = 0; y < Y.size() && lip; ++y)
                if (Y.rho(x, y) < Z.rho(at[x], at[y])) lip = false;
        if (lip) maps.push_back(at);
        std::size_t i = Y.size();
        while (i > 0) {
            --i;
            if (++at[i] < Z.size()) break;
            at[i] = 0;
        }
    }

    std::vector<std::string> labels;
    for (const auto& h : maps) {
        std::string l = "[";
        for (std::size_t y = 0; y < h.size(); ++y) {
            if (y) l += ",";
            l += Z.label(h[y]);
        }
        labels.push_back(l + "]");
    }
    Matrix rho(maps.size(), std::vector<ExtReal>(maps.size()));
    for (std::size_t a = 0; a < maps.size(); ++a)
        for (std::size_t b = 0; b < maps.size(); ++b) {
            ExtReal v = ExtReal::neg_inf();
            for (std::size_t y = 0; y < Y.size(); ++y) v = emax(v, Z.rho(maps[a][y], maps[b][y]));
            rho[a][b] = v;
        }
    return {FiniteRhoSpace::create(std::move(labels), std::move(rho)), Y, Z, std::move(maps)};
}

/// Transposes a 1-Lipschitz map X (x) Y -> Z into X -> Z^Y. The source of f
/// must be tensor({X, Y}) with its row-major point order.
inline PointMap curry(const PointMap& f, const FiniteRhoSpace& X, const FiniteRhoSpace& Y,
                      std::size_t cap = kDefaultMapCap) {
    if (!(f.source() == tensor({X, Y}))) throw std::invalid_argument("curry: source is not the given tensor");
    if (!is_one_lipschitz(f)) throw std::domain_error("curry: map is not 1-Lipschitz");
    ExponentialSpace E = exponential(Y, f.target(), cap);
    std::vector<std::size_t> g(X.size());
    for (std::size_t x = 0; x < X.size(); ++x) {
        std::vector<std::size_t> slice(Y.size());
        for (std::size_t y = 0; y < Y.size(); ++y) slice[y] = f(x * Y.size() + y);
        std::size_t found = E.maps.size();
        for (std::size_t i = 0; i < E.maps.size(); ++i)
            if (E.maps[i] == slice) {
                found = i;
                break;
            }
        if (found == E.maps.size()) throw std::logic_error("curry: slice of a 1-Lipschitz map must be 1-Lipschitz");
        g[x] = found;
    }
    auto out = PointMap::create(X, E.space, std::move(g));
    if (!is_one_lipschitz(out)) throw std::logic_error("curry: transpose must be 1-Lipschitz");
    return out;
}

/// Inverse transpose: g : X -> Z^Y back to X (x) Y -> Z.
inline PointMap uncurry(const PointMap& g, const FiniteRhoSpace& Y, const FiniteRhoSpace& Z,
                        std::size_t cap = kDefaultMapCap) {
    ExponentialSpace E = exponential(Y, Z, cap);
    if (!(g.target() == E.space)) throw std::invalid_argument("uncurry: target is not the given exponential");
    if (!is_one_lipschitz(g)) throw std::domain_error("uncurry: map is not 1-Lipschitz");
    const FiniteRhoSpace& X = g.source();
    auto XY = tensor({X, Y});
    std::vector<std::size_t> f(XY.size());
    for (std::size_t x = 0; x < X.size(); ++x)
        for (std::size_t y = 0; y < Y.size(); ++y) f[x * Y.size() + y] = E.maps[g(x)][y];
    auto out = PointMap::create(XY, Z, std::move(f));
    if (!is_one_lipschitz(out)) throw std::logic_error("uncurry: transpose must be 1-Lipschitz");
    return out;
}

}  // namespace rhometric
