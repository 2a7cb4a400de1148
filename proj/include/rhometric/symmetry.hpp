#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rhometric/closure.hpp"
#include "rhometric/space.hpp"

namespace rhometric {

/// Greatest symmetric cost below rho: the walk infimum over steps costed by
/// min(rho(x,y), rho(y,x)). Shares the closure kernel (and its
/// negative-cycle semantics) with quotient. The result can turn regular
/// points flat; it still validates, and that is the intended value.
inline FiniteRhoSpace reflective_sym(const FiniteRhoSpace& s) {
    const std::size_t n = s.size();
    Matrix arcs(n, std::vector<ExtReal>(n));
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) arcs[x][y] = emin(s.rho(x, y), s.rho(y, x));
    ClosureResult cl = min_plus_closure(arcs);
    return FiniteRhoSpace::create(s.points(), std::move(cl.dist));
}

/// Least symmetric cost above rho: the pointwise join, no closure needed.
inline FiniteRhoSpace coreflective_sym(const FiniteRhoSpace& s) {
    const std::size_t n = s.size();
    Matrix t(n, std::vector<ExtReal>(n));
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) t[x][y] = emax(s.rho(x, y), s.rho(y, x));
    return FiniteRhoSpace::create(s.points(), std::move(t));
}

// ---------------------------------------------------------------------------
// Preorders carried by a space, and the embeddings going back.

class Preorder {
  public:
    static Preorder create(std::vector<std::string> carrier, std::vector<std::vector<char>> rel) {
        const std::size_t n = carrier.size();
        if (rel.size() != n) throw std::invalid_argument("preorder: relation size mismatch");
        for (const auto& row : rel)
            if (row.size() != n) throw std::invalid_argument("preorder: relation is not square");
        for (std::size_t x = 0; x < n; ++x)
            if (!rel[x][x]) throw std::invalid_argument("preorder: not reflexive at " + carrier[x]);
        for (std::size_t x = 0; x < n; ++x)
            for (std::size_t y = 0; y < n; ++y)
                for (std::size_t z = 0; z < n; ++z)
                    if (rel[x][y] && rel[y][z] && !rel[x][z])
                        throw std::invalid_argument("preorder: not transitive via " + carrier[x] + "," +
                                                    carrier[y] + "," + carrier[z]);
        Preorder p;
        p.carrier_ = std::move(carrier);
        p.rel_ = std::move(rel);
        return p;
    }

    [[nodiscard]] std::size_t size() const { return carrier_.size(); }
    [[nodiscard]] const std::vector<std::string>& carrier() const { return carrier_; }
    [[nodiscard]] bool leq(std::size_t x, std::size_t y) const { return rel_.at(x).at(y) != 0; }
    [[nodiscard]] const std::vector<std::vector<char>>& relation() const { return rel_; }

    bool operator==(const Preorder& o) const { return carrier_ == o.carrier_ && rel_ == o.rel_; }

  private:
    std::vector<std::string> carrier_;
    std::vector<std::vector<char>> rel_;
};

/// x precedes x' when the transition is affordable: rho(x,x') < +inf.
/// Transitivity is a consequence of the triangle axiom (+inf absorbs), so
/// construction re-checks it rather than assuming.
inline Preorder reflective_preorder(const FiniteRhoSpace& s) {
    const std::size_t n = s.size();
    std::vector<std::vector<char>> rel(n, std::vector<char>(n, 0));
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) rel[x][y] = s.rho(x, y).is_pos_inf() ? 0 : 1;
    return Preorder::create(s.points(), std::move(rel));
}

/// x precedes x' when going back is free or a gain: rho(x',x) <= 0.
inline Preorder coreflective_preorder(const FiniteRhoSpace& s) {
    const std::size_t n = s.size();
    std::vector<std::vector<char>> rel(n, std::vector<char>(n, 0));
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) rel[x][y] = s.rho(y, x) <= ExtReal(0) ? 1 : 0;
    return Preorder::create(s.points(), std::move(rel));
}

/// Embeds a preorder as a flat space: -inf along the relation, +inf off it.
/// reflective_preorder inverts this embedding.
inline FiniteRhoSpace mt_inf(const Preorder& p) {
    const std::size_t n = p.size();
    Matrix rho(n, std::vector<ExtReal>(n));
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            rho[x][y] = p.leq(x, y) ? ExtReal::neg_inf() : ExtReal::pos_inf();
    return FiniteRhoSpace::create(p.carrier(), std::move(rho));
}

/// Embeds a preorder as a nonnegative space: cost 0 from y to y' exactly
/// when y' precedes y (the variables swap sides), +inf otherwise.
/// coreflective_preorder inverts this embedding; the swap is deliberate and
/// matches the adjunction the two functors form.
inline FiniteRhoSpace mt_0(const Preorder& p) {
    const std::size_t n = p.size();
    Matrix rho(n, std::vector<ExtReal>(n));
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) rho[x][y] = p.leq(y, x) ? ExtReal(0) : ExtReal::pos_inf();
    return FiniteRhoSpace::create(p.carrier(), std::move(rho));
}

}  // namespace rhometric
