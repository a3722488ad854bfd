#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace kdv {

/// Exact arbitrary-precision rational scalar. All symbolic computation in
/// this library runs over this type; floating point enters only through
/// explicit conversion at the numeric boundary.
using Rational = mpq_class;

inline Rational rat(long num, long den = 1) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

/// Parses "p", "p/q" or a plain decimal like "-0.25" into an exact rational.
inline Rational rat_from_string(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty rational literal");
    auto dot = s.find('.');
    if (dot != std::string::npos) {
        std::string digits = s.substr(0, dot) + s.substr(dot + 1);
        std::size_t frac_len = s.size() - dot - 1;
        mpz_class num;
        if (num.set_str(digits, 10) != 0)
            throw std::invalid_argument("bad decimal literal: " + s);
        mpz_class den;
        mpz_ui_pow_ui(den.get_mpz_t(), 10, frac_len);
        Rational r(num, den);
        r.canonicalize();
        return r;
    }
    Rational r;
    if (r.set_str(s, 10) != 0)
        throw std::invalid_argument("bad rational literal: " + s);
    r.canonicalize();
    if (r.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
    return r;
}

inline std::string rat_to_string(const Rational& r) { return r.get_str(); }

inline double rat_to_double(const Rational& r) { return r.get_d(); }

inline Rational rat_pow(const Rational& base, long e) {
    if (e == 0) return Rational(1);
    Rational b = e > 0 ? base : Rational(1) / base;
    unsigned long n = static_cast<unsigned long>(e > 0 ? e : -e);
    Rational acc(1);
    while (n) {
        if (n & 1) acc *= b;
        b *= b;
        n >>= 1;
    }
    return acc;
}

// Uniform scalar helpers so templated code can mix Rational, double and
// complex<double> without special cases at each call site.

template <class K>
inline bool scalar_is_zero(const K& v) {
    return v == K(0);
}
inline bool scalar_is_zero(const Rational& v) { return sgn(v) == 0; }

template <class K>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
    static constexpr bool exact = true;
    static Rational from_rational(const Rational& r) { return r; }
    static double abs(const Rational& r) { return sgn(r) == 0 ? 0.0 : 1.0; }
};
template <>
struct ScalarTraits<double> {
    static constexpr bool exact = false;
    static double from_rational(const Rational& r) { return r.get_d(); }
    static double abs(double v) { return std::abs(v); }
};
template <>
struct ScalarTraits<std::complex<double>> {
    static constexpr bool exact = false;
    static std::complex<double> from_rational(const Rational& r) {
        return {r.get_d(), 0.0};
    }
    static double abs(const std::complex<double>& v) { return std::abs(v); }
};

}  // namespace kdv
