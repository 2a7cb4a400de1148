#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "rhometric/extreal.hpp"

namespace rhometric {

using Matrix = std::vector<std::vector<ExtReal>>;

struct AxiomViolation {
    enum class Kind { Triangle, Diagonal };
    Kind kind;
    std::size_t x = 0, y = 0, z = 0;  // diagonal violations use x only
    ExtReal lhs, rhs;                 // triangle: lhs = rho(x,y)+rho(y,z), rhs = rho(x,z)

    std::string describe(const std::vector<std::string>& points) const {
        if (kind == Kind::Diagonal)
            return "diagonal at " + points[x] + ": rho = " + to_string(lhs) + ", must be 0 or -inf";
        return "triangle (" + points[x] + "," + points[y] + "," + points[z] + "): " + to_string(lhs) +
               " < " + to_string(rhs);
    }
};

class SpaceError : public std::runtime_error {
  public:
    SpaceError(std::string msg, std::vector<AxiomViolation> v)
        : std::runtime_error(std::move(msg)), violations_(std::move(v)) {}
    const std::vector<AxiomViolation>& violations() const { return violations_; }

  private:
    std::vector<AxiomViolation> violations_;
};

/// A finite set of labelled points with a cost matrix over the extended
/// line, satisfying the two axioms
///
///     rho(x,y) + rho(y,z) >= rho(x,z)        (costs compose),
///     rho(x,x) in {0, -inf}                  (staying put is free or flat).
///
/// Instances are immutable and always valid: every construction path runs
/// the axiom check and throws SpaceError otherwise. The empty space is
/// allowed (it is the initial object of the category).
class FiniteRhoSpace {
  public:
    FiniteRhoSpace() = default;

    /// Axiom check only; structural problems (non-square matrix, duplicate
    /// labels) throw std::invalid_argument instead of being reported.
    static std::vector<AxiomViolation> check(const std::vector<std::string>& points, const Matrix& rho) {
        const std::size_t n = points.size();
        if (rho.size() != n) throw std::invalid_argument("space: matrix row count != point count");
        for (const auto& row : rho)
            if (row.size() != n) throw std::invalid_argument("space: matrix is not square");
        std::unordered_set<std::string> seen;
        for (const auto& p : points)
            if (!seen.insert(p).second) throw std::invalid_argument("space: duplicate point label '" + p + "'");

        std::vector<AxiomViolation> out;
        for (std::size_t x = 0; x < n; ++x) {
            const ExtReal& d = rho[x][x];
            if (!(d == ExtReal(0) || d.is_neg_inf()))
                out.push_back({AxiomViolation::Kind::Diagonal, x, x, x, d, ExtReal(0)});
        }
        for (std::size_t x = 0; x < n; ++x)
            for (std::size_t y = 0; y < n; ++y)
                for (std::size_t z = 0; z < n; ++z) {
                    ExtReal via = esum(rho[x][y], rho[y][z]);
                    if (via < rho[x][z])
                        out.push_back({AxiomViolation::Kind::Triangle, x, y, z, via, rho[x][z]});
                }
        return out;
    }

    static FiniteRhoSpace create(std::vector<std::string> points, Matrix rho) {
        auto violations = check(points, rho);
        if (!violations.empty()) {
            std::string msg = "space axioms violated:";
            for (const auto& v : violations) msg += "\n  " + v.describe(points);
            throw SpaceError(std::move(msg), std::move(violations));
        }
        FiniteRhoSpace s;
        s.points_ = std::move(points);
        s.rho_ = std::move(rho);
        return s;
    }

    [[nodiscard]] std::size_t size() const { return points_.size(); }
    [[nodiscard]] const std::vector<std::string>& points() const { return points_; }
    [[nodiscard]] const std::string& label(std::size_t i) const { return points_.at(i); }
    [[nodiscard]] const ExtReal& rho(std::size_t x, std::size_t y) const { return rho_.at(x).at(y); }
    [[nodiscard]] const Matrix& matrix() const { return rho_; }

    [[nodiscard]] std::optional<std::size_t> index_of(std::string_view label) const {
        for (std::size_t i = 0; i < points_.size(); ++i)
            if (points_[i] == label) return i;
        return std::nullopt;
    }

    bool operator==(const FiniteRhoSpace& o) const { return points_ == o.points_ && rho_ == o.rho_; }

  private:
    std::vector<std::string> points_;
    Matrix rho_;
};

inline std::vector<std::string> auto_labels(std::size_t n, std::string_view prefix = "x") {
    std::vector<std::string> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(std::string(prefix) + std::to_string(i));
    return out;
}

// ---------------------------------------------------------------------------
// Classification.

struct SpaceProfile {
    bool positive = true;       // all entries >= 0
    bool finite_valued = true;  // no +-inf entry
    bool symmetric = true;
    bool linear = true;         // finite and additive along all triples
    bool affordable = true;     // no +inf entry
    std::vector<std::size_t> flat_points;     // rho(x,x) == -inf
    std::vector<std::size_t> regular_points;  // rho(x,x) == 0
};

inline SpaceProfile classify(const FiniteRhoSpace& s) {
    SpaceProfile p;
    const std::size_t n = s.size();
    for (std::size_t x = 0; x < n; ++x) {
        if (s.rho(x, x).is_neg_inf())
            p.flat_points.push_back(x);
        else
            p.regular_points.push_back(x);
        for (std::size_t y = 0; y < n; ++y) {
            const ExtReal& v = s.rho(x, y);
            if (v < ExtReal(0)) p.positive = false;
            if (!v.is_finite()) p.finite_valued = false;
            if (v.is_pos_inf()) p.affordable = false;
            if (!(v == s.rho(y, x))) p.symmetric = false;
        }
    }
    p.linear = p.finite_valued;
    for (std::size_t x = 0; x < n && p.linear; ++x)
        for (std::size_t y = 0; y < n && p.linear; ++y)
            for (std::size_t z = 0; z < n && p.linear; ++z)
                if (!(esum(s.rho(x, y), s.rho(y, z)) == s.rho(x, z))) p.linear = false;
    return p;
}

// ---------------------------------------------------------------------------
// Elementary builders and unary operations.

inline FiniteRhoSpace opposite(const FiniteRhoSpace& s) {
    const std::size_t n = s.size();
    Matrix t(n, std::vector<ExtReal>(n));
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) t[x][y] = s.rho(y, x);
    return FiniteRhoSpace::create(s.points(), std::move(t));
}

/// Truncates negative costs at 0: the closest nonnegative space above.
inline FiniteRhoSpace positive_coreflection(const FiniteRhoSpace& s) {
    const std::size_t n = s.size();
    Matrix t(n, std::vector<ExtReal>(n));
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) t[x][y] = positive_part(s.rho(x, y)).value();
    return FiniteRhoSpace::create(s.points(), std::move(t));
}

/// Greatest metric on the labels: 0 on the diagonal, +inf elsewhere.
inline FiniteRhoSpace discrete(std::vector<std::string> labels) {
    if (labels.empty()) throw std::invalid_argument("discrete: empty label list");
    const std::size_t n = labels.size();
    Matrix t(n, std::vector<ExtReal>(n, ExtReal::pos_inf()));
    for (std::size_t x = 0; x < n; ++x) t[x][x] = ExtReal(0);
    return FiniteRhoSpace::create(std::move(labels), std::move(t));
}

/// Least metric on the labels: -inf everywhere.
inline FiniteRhoSpace chaotic(std::vector<std::string> labels) {
    if (labels.empty()) throw std::invalid_argument("chaotic: empty label list");
    const std::size_t n = labels.size();
    Matrix t(n, std::vector<ExtReal>(n, ExtReal::neg_inf()));
    return FiniteRhoSpace::create(std::move(labels), std::move(t));
}

inline FiniteRhoSpace scale_space(const Coeff& l, const FiniteRhoSpace& s) {
    const std::size_t n = s.size();
    Matrix t(n, std::vector<ExtReal>(n));
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) t[x][y] = scale(l, s.rho(x, y));
    return FiniteRhoSpace::create(s.points(), std::move(t));
}

/// rho(x,y) = phi(y) - phi(x); the result is linear by construction.
inline FiniteRhoSpace potential_space(std::vector<std::string> labels, const std::vector<Rational>& phi) {
    if (labels.size() != phi.size()) throw std::invalid_argument("potential_space: label/value count mismatch");
    const std::size_t n = labels.size();
    Matrix t(n, std::vector<ExtReal>(n));
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) t[x][y] = ExtReal(Rational(phi[y] - phi[x]));
    return FiniteRhoSpace::create(std::move(labels), std::move(t));
}

/// Inverse of potential_space up to the additive constant fixed by
/// phi(base) = 0. Only linear spaces have a potential.
inline std::vector<Rational> recover_potential(const FiniteRhoSpace& s, std::size_t base) {
    if (base >= s.size()) throw std::out_of_range("recover_potential: base point out of range");
    if (!classify(s).linear) throw std::domain_error("recover_potential: space is not linear");
    std::vector<Rational> phi(s.size());
    for (std::size_t x = 0; x < s.size(); ++x) phi[x] = s.rho(base, x).finite();
    return phi;
}

// ---------------------------------------------------------------------------
// Finite abelian groups, for translation-invariant metrics.

class CayleyTable {
  public:
    static CayleyTable create(std::vector<std::vector<std::size_t>> add) {
        const std::size_t n = add.size();
        if (n == 0) throw std::invalid_argument("group: empty carrier");
        for (const auto& row : add) {
            if (row.size() != n) throw std::invalid_argument("group: table is not square");
            for (std::size_t v : row)
                if (v >= n) throw std::invalid_argument("group: table entry out of range");
        }
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) {
                if (add[a][b] != add[b][a]) throw std::invalid_argument("group: not abelian");
                for (std::size_t c = 0; c < n; ++c)
                    if (add[add[a][b]][c] != add[a][add[b][c]])
                        throw std::invalid_argument("group: not associative");
            }
        std::size_t e = n;
        for (std::size_t cand = 0; cand < n && e == n; ++cand) {
            bool ok = true;
            for (std::size_t a = 0; a < n; ++a) ok = ok && add[cand][a] == a;
            if (ok) e = cand;
        }
        if (e == n) throw std::invalid_argument("group: no identity element");
        CayleyTable g;
        g.add_ = std::move(add);
        g.identity_ = e;
        g.inverse_.assign(n, n);
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                if (g.add_[a][b] == e) g.inverse_[a] = b;
        for (std::size_t a = 0; a < n; ++a)
            if (g.inverse_[a] == n) throw std::invalid_argument("group: missing inverse");
        return g;
    }

    static CayleyTable cyclic(std::size_t n) {
        std::vector<std::vector<std::size_t>> add(n, std::vector<std::size_t>(n));
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) add[a][b] = (a + b) % n;
        return create(std::move(add));
    }

    [[nodiscard]] std::size_t size() const { return add_.size(); }
    [[nodiscard]] std::size_t add(std::size_t a, std::size_t b) const { return add_.at(a).at(b); }
    [[nodiscard]] std::size_t identity() const { return identity_; }
    [[nodiscard]] std::size_t inverse(std::size_t a) const { return inverse_.at(a); }
    [[nodiscard]] std::size_t sub(std::size_t a, std::size_t b) const { return add(a, inverse(b)); }

  private:
    std::vector<std::vector<std::size_t>> add_;
    std::vector<std::size_t> inverse_;
    std::size_t identity_ = 0;
};

/// Translation-invariant metric rho(x,y) = mu(y - x) from a group norm.
/// mu must be subadditive with mu(0) in {0, -inf}; violations are rejected
/// with the offending pair in the message.
inline FiniteRhoSpace norm_space(const CayleyTable& g, const std::vector<ExtReal>& mu,
                                 std::vector<std::string> labels = {}) {
    const std::size_t n = g.size();
    if (mu.size() != n) throw std::invalid_argument("norm_space: norm/carrier size mismatch");
    if (labels.empty()) labels = auto_labels(n, "g");
    if (labels.size() != n) throw std::invalid_argument("norm_space: label count mismatch");

    const ExtReal& at0 = mu[g.identity()];
    if (!(at0 == ExtReal(0) || at0.is_neg_inf()))
        throw std::domain_error("norm_space: mu(0) = " + to_string(at0) + ", must be 0 or -inf");
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            if (esum(mu[x], mu[y]) < mu[g.add(x, y)])
                throw std::domain_error("norm_space: mu not subadditive at pair (" + std::to_string(x) + "," +
                                        std::to_string(y) + ")");

    Matrix t(n, std::vector<ExtReal>(n));
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) t[x][y] = mu[g.sub(y, x)];
    return FiniteRhoSpace::create(std::move(labels), std::move(t));
}

// ---------------------------------------------------------------------------
// Maps between spaces and their Lipschitz analysis.

class PointMap {
  public:
    static PointMap create(FiniteRhoSpace source, FiniteRhoSpace target, std::vector<std::size_t> assignment) {
        if (assignment.size() != source.size())
            throw std::invalid_argument("map: assignment size != source size");
        for (std::size_t v : assignment)
            if (v >= target.size()) throw std::invalid_argument("map: image point out of range");
        PointMap f;
        f.source_ = std::move(source);
        f.target_ = std::move(target);
        f.assignment_ = std::move(assignment);
        return f;
    }

    [[nodiscard]] const FiniteRhoSpace& source() const { return source_; }
    [[nodiscard]] const FiniteRhoSpace& target() const { return target_; }
    [[nodiscard]] const std::vector<std::size_t>& assignment() const { return assignment_; }
    std::size_t operator()(std::size_t i) const { return assignment_.at(i); }

    bool operator==(const PointMap& o) const {
        return source_ == o.source_ && target_ == o.target_ && assignment_ == o.assignment_;
    }

  private:
    FiniteRhoSpace source_, target_;
    std::vector<std::size_t> assignment_;
};

/// The set of finite constants l >= 0 with l*rho_X(x,x') >= rho_Y(fx,fx')
/// for all pairs. Each pair contributes a constraint linear in l, so the
/// set is exactly an interval [min, max], a ray [min, inf), or empty.
struct AdmissibleConstants {
    bool empty = false;
    Rational min = 0;
    std::optional<Rational> max;  // nullopt = unbounded above

    [[nodiscard]] bool contains(const Coeff& l) const {
        if (empty) return false;
        if (l.value() < min) return false;
        return !max || l.value() <= *max;
    }
};

inline AdmissibleConstants admissible_constants(const PointMap& f) {
    AdmissibleConstants out;
    const auto& X = f.source();
    const auto& Y = f.target();
    for (std::size_t x = 0; x < X.size() && !out.empty; ++x)
        for (std::size_t y = 0; y < X.size(); ++y) {
            const ExtReal& s = X.rho(x, y);
            const ExtReal& t = Y.rho(f(x), f(y));
            if (s.is_pos_inf()) continue;              // l*inf = inf >= anything
            if (s.is_neg_inf()) {
                if (t.is_neg_inf()) continue;          // l*(-inf) = -inf
                out.empty = true;
                break;
            }
            if (t.is_neg_inf()) continue;
            if (t.is_pos_inf()) {                      // finite l * finite s stays finite
                out.empty = true;
                break;
            }
            const Rational& sv = s.finite();
            const Rational& tv = t.finite();
            if (sv > 0) {
                Rational bound = tv / sv;
                if (bound > out.min) out.min = bound;
            } else if (sv == 0) {
                if (tv > 0) {
                    out.empty = true;
                    break;
                }
            } else {
                Rational bound = tv / sv;              // dividing by a negative flips the side
                if (!out.max || bound < *out.max) out.max = bound;
            }
        }
    if (!out.empty && out.max && *out.max < out.min) out.empty = true;
    if (out.empty) {
        out.min = 0;
        out.max.reset();
    }
    return out;
}

inline bool is_lipschitz(const PointMap& f, const Coeff& l) {
    const auto& X = f.source();
    const auto& Y = f.target();
    for (std::size_t x = 0; x < X.size(); ++x)
        for (std::size_t y = 0; y < X.size(); ++y)
            if (scale(l, X.rho(x, y)) < Y.rho(f(x), f(y))) return false;
    return true;
}

inline bool is_one_lipschitz(const PointMap& f) { return is_lipschitz(f, Coeff(1)); }

/// Least Lipschitz constant of a map out of a positive space (+inf when no
/// constant works). Only defined there: with negative source costs the
/// admissible constants are not upward closed, so no least one is canonical;
/// use admissible_constants for the general picture.
inline Weight lipschitz_weight(const PointMap& f) {
    if (!classify(f.source()).positive)
        throw std::domain_error("lipschitz_weight: source space must be positive");
    auto set = admissible_constants(f);
    return set.empty ? Weight::pos_inf() : Weight(set.min);
}

/// Isometric isomorphism onto the opposite space, by exhaustive search over
/// point bijections. Factorial in the point count; capped.
inline bool is_reversive(const FiniteRhoSpace& s, std::size_t cap = 8) {
    const std::size_t n = s.size();
    if (n > cap) throw std::domain_error("is_reversive: space too large for exhaustive search");
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    do {
        bool ok = true;
        for (std::size_t x = 0; x < n && ok; ++x)
            for (std::size_t y = 0; y < n && ok; ++y)
                if (!(s.rho(perm[y], perm[x]) == s.rho(x, y))) ok = false;
        if (ok) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

}  // namespace rhometric
