#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace rhometric {

/// Exact rational number used for every finite value in the library.
/// No operation in the core ever rounds; decimal input is converted exactly.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline BigInt numerator(const Rational& q) { return boost::multiprecision::numerator(q); }
inline BigInt denominator(const Rational& q) { return boost::multiprecision::denominator(q); }

inline Rational rational_abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

/// Renders as "p" when integral, "p/q" otherwise. parse_rational inverts this.
inline std::string rational_to_string(const Rational& q) {
    std::string s = numerator(q).str();
    if (denominator(q) != 1) {
        s += '/';
        s += denominator(q).str();
    }
    return s;
}

/// Accepts "p", "p/q" and plain decimal strings like "-2.75"; always exact.
inline Rational parse_rational(std::string_view text) {
    auto fail = [&] { throw std::invalid_argument("not a rational literal: '" + std::string(text) + "'"); };
    if (text.empty()) fail();

    std::size_t slash = text.find('/');
    if (slash != std::string_view::npos) {
        std::string_view num = text.substr(0, slash);
        std::string_view den = text.substr(slash + 1);
        if (num.empty() || den.empty() || den.find('.') != std::string_view::npos) fail();
        try {
            BigInt p{std::string(num)};
            BigInt q{std::string(den)};
            if (q == 0) throw std::invalid_argument("zero denominator: '" + std::string(text) + "'");
            return Rational(p, q);
        } catch (const std::runtime_error&) {
            fail();
        }
    }

    std::size_t dot = text.find('.');
    try {
        if (dot == std::string_view::npos) return Rational(BigInt{std::string(text)});
        std::string_view whole = text.substr(0, dot);
        std::string_view frac = text.substr(dot + 1);
        if (frac.empty()) fail();
        bool negative = !whole.empty() && whole.front() == '-';
        std::string digits(whole.empty() || whole == "-" || whole == "+" ? "0" : std::string(whole));
        BigInt scaled{digits};
        BigInt pow10 = 1;
        for (char c : frac) {
            if (c < '0' || c > '9') fail();
            scaled = scaled * 10 + (negative ? -(c - '0') : (c - '0'));
            pow10 *= 10;
        }
        return Rational(scaled, pow10);
    } catch (const std::runtime_error&) {
        fail();
    }
    return Rational();  // unreachable
}

/// Exact value of an IEEE double (every finite double is a dyadic rational).
inline Rational rational_from_double(double x) {
    if (x != x || x == 1.0 / 0.0 || x == -1.0 / 0.0)
        throw std::invalid_argument("non-finite double has no rational value");
    Rational r;
    bool neg = x < 0;
    if (neg) x = -x;
    // Peel the mantissa bit by bit; doubles have at most 52 fractional bits
    // after normalisation, so this terminates quickly.
    Rational scale = 1;
    while (x >= 1.0) {
        double half = x / 2.0;
        x = half;
        scale *= 2;
    }
    Rational acc = 0;
    Rational bit(1, 2);
    for (int i = 0; i < 1100 && x != 0.0; ++i) {
        x *= 2.0;
        if (x >= 1.0) {
            acc += bit;
            x -= 1.0;
        }
        bit /= 2;
    }
    Rational out = acc * scale;
    return neg ? Rational(-out) : out;
}

}  // namespace rhometric
