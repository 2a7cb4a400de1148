#pragma once

#include <algorithm>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "rhometric/space.hpp"
#include "rhometric/symmetry.hpp"

namespace rhometric {

/// Subset of a fixed finite carrier, packed into 64-bit blocks.
class PointSet {
  public:
    PointSet() = default;
    explicit PointSet(std::size_t carrier_size)
        : n_(carrier_size), bits_((carrier_size + 63) / 64, 0) {}

    static PointSet full(std::size_t n) {
        PointSet s(n);
        for (std::size_t i = 0; i < n; ++i) s.insert(i);
        return s;
    }

    void insert(std::size_t i) { bits_.at(i / 64) |= std::uint64_t(1) << (i % 64); }
    [[nodiscard]] bool contains(std::size_t i) const {
        return (bits_.at(i / 64) >> (i % 64)) & 1;
    }
    [[nodiscard]] std::size_t carrier_size() const { return n_; }

    [[nodiscard]] PointSet united(const PointSet& o) const {
        PointSet s = *this;
        for (std::size_t b = 0; b < bits_.size(); ++b) s.bits_[b] |= o.bits_[b];
        return s;
    }
    [[nodiscard]] PointSet intersected(const PointSet& o) const {
        PointSet s = *this;
        for (std::size_t b = 0; b < bits_.size(); ++b) s.bits_[b] &= o.bits_[b];
        return s;
    }
    [[nodiscard]] bool subset_of(const PointSet& o) const {
        for (std::size_t b = 0; b < bits_.size(); ++b)
            if (bits_[b] & ~o.bits_[b]) return false;
        return true;
    }
    [[nodiscard]] std::vector<std::size_t> indices() const {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < n_; ++i)
            if (contains(i)) out.push_back(i);
        return out;
    }

    bool operator==(const PointSet& o) const { return n_ == o.n_ && bits_ == o.bits_; }
    bool operator<(const PointSet& o) const { return bits_ < o.bits_; }

  private:
    std::size_t n_ = 0;
    std::vector<std::uint64_t> bits_;
};

/// An explicit family of open subsets. Construction verifies the axioms:
/// empty set and carrier present, closed under union and intersection
/// (finite carrier, so both suffice in their finitary form).
class FiniteTopology {
  public:
    static FiniteTopology create(std::vector<std::string> carrier, std::vector<PointSet> opens) {
        const std::size_t n = carrier.size();
        std::set<PointSet> family(opens.begin(), opens.end());
        family.insert(PointSet(n));
        family.insert(PointSet::full(n));
        for (const auto& a : family)
            for (const auto& b : family) {
                if (!family.count(a.united(b)))
                    throw std::invalid_argument("topology: family not closed under union");
                if (!family.count(a.intersected(b)))
                    throw std::invalid_argument("topology: family not closed under intersection");
            }
        FiniteTopology t;
        t.carrier_ = std::move(carrier);
        t.opens_.assign(family.begin(), family.end());
        return t;
    }

    /// Closes a base under unions; the intersection axiom is then verified,
    /// not assumed (it holds whenever the base really is a base).
    static FiniteTopology generate(std::vector<std::string> carrier, const std::vector<PointSet>& base) {
        std::set<PointSet> family(base.begin(), base.end());
        family.insert(PointSet(carrier.size()));
        family.insert(PointSet::full(carrier.size()));
        bool grew = true;
        while (grew) {
            grew = false;
            std::vector<PointSet> snapshot(family.begin(), family.end());
            for (std::size_t i = 0; i < snapshot.size(); ++i)
                for (std::size_t j = i + 1; j < snapshot.size(); ++j)
                    if (family.insert(snapshot[i].united(snapshot[j])).second) grew = true;
        }
        return create(std::move(carrier), std::vector<PointSet>(family.begin(), family.end()));
    }

    [[nodiscard]] const std::vector<std::string>& carrier() const { return carrier_; }
    [[nodiscard]] const std::vector<PointSet>& opens() const { return opens_; }
    [[nodiscard]] bool is_open(const PointSet& s) const {
        return std::binary_search(opens_.begin(), opens_.end(), s);
    }

    bool operator==(const FiniteTopology& o) const { return carrier_ == o.carrier_ && opens_ == o.opens_; }

  private:
    std::vector<std::string> carrier_;
    std::vector<PointSet> opens_;  // sorted, unique
};

enum class TopoCompare { Equal, Finer, Coarser, Incomparable };

/// Containment verdict on the open families: Finer means a has every open
/// of b (and more or the same).
inline TopoCompare compare(const FiniteTopology& a, const FiniteTopology& b) {
    if (a.carrier() != b.carrier()) throw std::invalid_argument("topology compare: carrier mismatch");
    bool a_has_b = std::includes(a.opens().begin(), a.opens().end(), b.opens().begin(), b.opens().end());
    bool b_has_a = std::includes(b.opens().begin(), b.opens().end(), a.opens().begin(), a.opens().end());
    if (a_has_b && b_has_a) return TopoCompare::Equal;
    if (a_has_b) return TopoCompare::Finer;
    if (b_has_a) return TopoCompare::Coarser;
    return TopoCompare::Incomparable;
}

/// Points reachable from x0 below cost eps: { x | rho(x0, x) < eps }.
inline PointSet future_ball(const FiniteRhoSpace& s, std::size_t x0, const Rational& eps) {
    if (eps <= 0) throw std::domain_error("future_ball: eps must be positive");
    if (x0 >= s.size()) throw std::out_of_range("future_ball: centre out of range");
    PointSet out(s.size());
    ExtReal bound{eps};
    for (std::size_t x = 0; x < s.size(); ++x)
        if (s.rho(x0, x) < bound) out.insert(x);
    return out;
}

namespace detail {

/// Radii that realise every distinct ball: midpoints between consecutive
/// attained values in {0} u {positive finite entries}, plus one radius past
/// the maximum. Balls only change when eps crosses an attained value.
inline std::vector<Rational> ball_radii(const FiniteRhoSpace& s) {
    std::vector<Rational> attained{0};
    for (std::size_t x = 0; x < s.size(); ++x)
        for (std::size_t y = 0; y < s.size(); ++y) {
            const ExtReal& v = s.rho(x, y);
            if (v.is_finite() && v.finite() > 0) attained.push_back(v.finite());
        }
    std::sort(attained.begin(), attained.end());
    attained.erase(std::unique(attained.begin(), attained.end()), attained.end());
    std::vector<Rational> radii;
    for (std::size_t i = 0; i + 1 < attained.size(); ++i)
        radii.push_back((attained[i] + attained[i + 1]) / 2);
    radii.push_back(attained.back() + 1);
    return radii;
}

}  // namespace detail

inline FiniteTopology future_topology(const FiniteRhoSpace& s) {
    std::vector<PointSet> base;
    for (const Rational& eps : detail::ball_radii(s))
        for (std::size_t x0 = 0; x0 < s.size(); ++x0) base.push_back(future_ball(s, x0, eps));
    return FiniteTopology::generate(s.points(), base);
}

inline FiniteTopology past_topology(const FiniteRhoSpace& s) { return future_topology(opposite(s)); }

inline FiniteTopology reflective_topology(const FiniteRhoSpace& s) {
    return future_topology(reflective_sym(s));
}

inline FiniteTopology coreflective_topology(const FiniteRhoSpace& s) {
    return future_topology(coreflective_sym(s));
}

}  // namespace rhometric
