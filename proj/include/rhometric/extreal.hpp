#pragma once

#include <compare>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

#include "rhometric/rational.hpp"

namespace rhometric {

/// A value of the extended line [-inf, +inf] with exact rational finite part.
///
/// The arithmetic is the cost arithmetic of the library, not IEEE arithmetic:
/// the sum is a commutative monoid with unit 0 in which +inf absorbs
/// everything, including -inf. The matching "difference" is ediff below,
/// which is an adjoint, not an inverse; in particular
/// ediff(+inf, +inf) == -inf while esum(-inf, +inf) == +inf. Keeping the two
/// infinities as explicit tags (never sentinel numerics) is what makes that
/// asymmetry impossible to lose to IEEE semantics.
class ExtReal {
  public:
    enum class Tag { NegInf, Finite, PosInf };

    ExtReal() : tag_(Tag::Finite), q_(0) {}
    ExtReal(Rational q) : tag_(Tag::Finite), q_(std::move(q)) {}
    ExtReal(long long n) : tag_(Tag::Finite), q_(n) {}
    ExtReal(int n) : tag_(Tag::Finite), q_(n) {}

    static ExtReal neg_inf() { return ExtReal(Tag::NegInf); }
    static ExtReal pos_inf() { return ExtReal(Tag::PosInf); }

    [[nodiscard]] bool is_finite() const { return tag_ == Tag::Finite; }
    [[nodiscard]] bool is_pos_inf() const { return tag_ == Tag::PosInf; }
    [[nodiscard]] bool is_neg_inf() const { return tag_ == Tag::NegInf; }
    [[nodiscard]] Tag tag() const { return tag_; }

    /// Finite payload; only meaningful when is_finite().
    [[nodiscard]] const Rational& finite() const {
        if (!is_finite()) throw std::logic_error("ExtReal: no finite payload");
        return q_;
    }

    bool operator==(const ExtReal& o) const { return tag_ == o.tag_ && (tag_ != Tag::Finite || q_ == o.q_); }

    std::strong_ordering operator<=>(const ExtReal& o) const {
        if (tag_ != o.tag_) return static_cast<int>(tag_) <=> static_cast<int>(o.tag_);
        if (tag_ != Tag::Finite) return std::strong_ordering::equal;
        if (q_ < o.q_) return std::strong_ordering::less;
        if (q_ > o.q_) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

  private:
    explicit ExtReal(Tag t) : tag_(t), q_(0) {}
    Tag tag_;
    Rational q_;
};

/// Extended sum: +inf absorbs everything (also -inf + +inf == +inf).
inline ExtReal esum(const ExtReal& a, const ExtReal& b) {
    if (a.is_pos_inf() || b.is_pos_inf()) return ExtReal::pos_inf();
    if (a.is_neg_inf() || b.is_neg_inf()) return ExtReal::neg_inf();
    return ExtReal(a.finite() + b.finite());
}

inline ExtReal operator+(const ExtReal& a, const ExtReal& b) { return esum(a, b); }

/// Extended difference, the adjoint of esum:
/// ediff(nu, mu) = min{ l | esum(l, mu) >= nu }.
/// It is total; the indeterminate forms come out as
/// ediff(+inf, +inf) == ediff(-inf, -inf) == -inf.
inline ExtReal ediff(const ExtReal& nu, const ExtReal& mu) {
    if (mu.is_pos_inf()) return ExtReal::neg_inf();
    if (nu.is_neg_inf()) return ExtReal::neg_inf();
    if (mu.is_neg_inf() || nu.is_pos_inf()) return ExtReal::pos_inf();
    return ExtReal(nu.finite() - mu.finite());
}

inline ExtReal emin(const ExtReal& a, const ExtReal& b) { return a < b ? a : b; }
inline ExtReal emax(const ExtReal& a, const ExtReal& b) { return a < b ? b : a; }

inline ExtReal negate(const ExtReal& a) {
    if (a.is_pos_inf()) return ExtReal::neg_inf();
    if (a.is_neg_inf()) return ExtReal::pos_inf();
    return ExtReal(Rational(-a.finite()));
}

inline ExtReal ext_abs(const ExtReal& a) {
    if (!a.is_finite()) return ExtReal::pos_inf();
    return ExtReal(rational_abs(a.finite()));
}

/// A nonnegative extended value (an element of [0, +inf]).
class Weight {
  public:
    Weight() : v_(0) {}
    Weight(ExtReal v) : v_(std::move(v)) {
        if (v_.is_neg_inf() || (v_.is_finite() && v_.finite() < 0))
            throw std::domain_error("Weight: value must be >= 0");
    }
    Weight(Rational q) : Weight(ExtReal(std::move(q))) {}
    Weight(long long n) : Weight(ExtReal(n)) {}
    Weight(int n) : Weight(ExtReal(n)) {}

    static Weight pos_inf() { return Weight(ExtReal::pos_inf()); }

    [[nodiscard]] const ExtReal& value() const { return v_; }
    [[nodiscard]] bool is_finite() const { return v_.is_finite(); }
    [[nodiscard]] bool is_pos_inf() const { return v_.is_pos_inf(); }
    [[nodiscard]] const Rational& finite() const { return v_.finite(); }

    bool operator==(const Weight& o) const { return v_ == o.v_; }
    std::strong_ordering operator<=>(const Weight& o) const { return v_ <=> o.v_; }

  private:
    ExtReal v_;
};

inline Weight operator+(const Weight& a, const Weight& b) { return Weight(esum(a.value(), b.value())); }

/// Positive part a v 0. Total; sends -inf to 0.
inline Weight positive_part(const ExtReal& a) {
    if (a.is_neg_inf()) return Weight(0);
    if (a.is_pos_inf()) return Weight::pos_inf();
    return a.finite() < 0 ? Weight(0) : Weight(a.finite());
}

/// Adjoint of esum inside [0, inf]:
/// trunc_diff(nu, mu) = min{ l in [0,inf] | esum(l, mu) >= nu } = (nu - mu) v 0.
/// In particular trunc_diff(inf, inf) == 0.
inline Weight trunc_diff(const Weight& nu, const Weight& mu) {
    return positive_part(ediff(nu.value(), mu.value()));
}

/// A finite nonnegative scalar (a Lipschitz constant).
class Coeff {
  public:
    Coeff() : q_(0) {}
    Coeff(Rational q) : q_(std::move(q)) {
        if (q_ < 0) throw std::domain_error("Coeff: constant must be >= 0");
    }
    Coeff(long long n) : Coeff(Rational(n)) {}
    Coeff(int n) : Coeff(Rational(n)) {}

    [[nodiscard]] const Rational& value() const { return q_; }
    bool operator==(const Coeff& o) const = default;
    bool operator<(const Coeff& o) const { return q_ < o.q_; }

  private:
    Rational q_;
};

/// Scalar action of a finite nonnegative constant. The infinities are fixed
/// points for every constant, including zero: 0 * (+inf) == +inf and
/// 0 * (-inf) == -inf.
inline ExtReal scale(const Coeff& l, const ExtReal& a) {
    if (!a.is_finite()) return a;
    return ExtReal(l.value() * a.finite());
}

/// Multiplicative product on [0, inf]: +inf absorbs everything, even 0.
inline Weight wprod(const Weight& a, const Weight& b) {
    if (a.is_pos_inf() || b.is_pos_inf()) return Weight::pos_inf();
    return Weight(a.finite() * b.finite());
}

/// Adjoint of wprod, an extended quotient:
/// equot(nu, mu) = min{ l in [0,inf] | wprod(l, mu) >= nu }.
/// Exact on all inputs; in particular inf/inf == 0 == 0/0.
inline Weight equot(const Weight& nu, const Weight& mu) {
    if (mu.is_pos_inf()) return Weight(0);
    if (nu.is_pos_inf()) return Weight::pos_inf();          // mu finite
    if (nu.finite() == 0) return Weight(0);
    if (mu.finite() == 0) return Weight::pos_inf();         // only inf*0 == inf reaches nu
    Rational q = nu.finite() / mu.finite();
    return q < 0 ? Weight(0) : Weight(q);
}

// ---------------------------------------------------------------------------
// Rendering and parsing. to_string/parse_extreal are exact inverses.

inline std::string to_string(const ExtReal& a) {
    if (a.is_pos_inf()) return "inf";
    if (a.is_neg_inf()) return "-inf";
    return rational_to_string(a.finite());
}

inline std::string to_string(const Weight& w) { return to_string(w.value()); }

inline ExtReal parse_extreal(std::string_view text) {
    if (text == "inf" || text == "+inf") return ExtReal::pos_inf();
    if (text == "-inf") return ExtReal::neg_inf();
    return ExtReal(parse_rational(text));
}

// ---------------------------------------------------------------------------
// Exponential / logarithm bridge to the multiplicative structure.
//
// These two are the only approximate operations in the library and are kept
// out of every exact identity check. Finite arguments are evaluated to 12
// decimal digits; `exact` is true only where the result is exact by
// definition (the tags, and 0 <-> 1).

struct ApproxWeight {
    Weight value;
    bool exact;
};

struct ApproxExtReal {
    ExtReal value;
    bool exact;
};

namespace detail {

inline constexpr int kExpDigits = 12;
inline constexpr int kExpMaxArg = 64;

inline Rational round_to_decimals(const Rational& q, int digits) {
    BigInt pow10 = 1;
    for (int i = 0; i < digits; ++i) pow10 *= 10;
    Rational scaled = q * pow10 + Rational(1, 2);
    BigInt fl = numerator(scaled) / denominator(scaled);
    if (scaled < 0 && fl * denominator(scaled) != numerator(scaled)) fl -= 1;
    return Rational(fl, pow10);
}

/// Taylor evaluation of e^x, exact partial sums, tail below 10^-18.
inline Rational exp_series(const Rational& x) {
    Rational term = 1;
    Rational sum = 1;
    Rational ax = rational_abs(x);
    Rational tiny(1, BigInt("1000000000000000000"));
    for (int k = 1; k < 4096; ++k) {
        term = term * x / k;
        sum += term;
        // once the term ratio drops below 1/2 the tail is bounded by the term
        if (ax < Rational(k + 1, 2) && rational_abs(term) < tiny) return sum;
    }
    throw std::logic_error("exp_series: did not converge");
}

}  // namespace detail

/// Order isomorphism [-inf,inf] -> [0,inf], a |-> e^a.
inline ApproxWeight exp_iso(const ExtReal& a) {
    if (a.is_neg_inf()) return {Weight(0), true};
    if (a.is_pos_inf()) return {Weight::pos_inf(), true};
    if (a.finite() == 0) return {Weight(1), true};
    if (rational_abs(a.finite()) > detail::kExpMaxArg)
        throw std::domain_error("exp_iso: finite argument outside [-64, 64]");
    Rational approx = detail::round_to_decimals(detail::exp_series(a.finite()), detail::kExpDigits);
    if (approx < 0) approx = 0;
    return {Weight(approx), false};
}

/// Inverse bridge [0,inf] -> [-inf,inf]; finite values by bisection against
/// the series evaluator.
inline ApproxExtReal ln_iso(const Weight& b) {
    if (b.value() == ExtReal(0)) return {ExtReal::neg_inf(), true};
    if (b.is_pos_inf()) return {ExtReal::pos_inf(), true};
    if (b.finite() == 1) return {ExtReal(0), true};
    Rational lo(-detail::kExpMaxArg), hi(detail::kExpMaxArg);
    if (detail::exp_series(hi) < b.finite() || detail::exp_series(lo) > b.finite())
        throw std::domain_error("ln_iso: argument outside [e^-64, e^64]");
    for (int i = 0; i < 60; ++i) {
        Rational mid = (lo + hi) / 2;
        if (detail::exp_series(mid) < b.finite())
            lo = mid;
        else
            hi = mid;
    }
    return {ExtReal(detail::round_to_decimals((lo + hi) / 2, detail::kExpDigits)), false};
}

}  // namespace rhometric
