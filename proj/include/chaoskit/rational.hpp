#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <sstream>
#include <string>

#include "chaoskit/errors.hpp"

namespace chaoskit {

using BigInt = boost::multiprecision::cpp_int;

// Exact scalar used throughout the library. cpp_rational keeps values in
// lowest terms with a positive denominator, which is exactly the invariant
// the exact engines rely on.
using Rational = boost::multiprecision::cpp_rational;

inline BigInt numerator(const Rational& r) { return boost::multiprecision::numerator(r); }
inline BigInt denominator(const Rational& r) { return boost::multiprecision::denominator(r); }

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

inline Rational rational_pow(const Rational& base, unsigned exp) {
    Rational acc{1};
    Rational b = base;
    unsigned e = exp;
    while (e > 0) {
        if (e & 1u) acc *= b;
        b *= b;
        e >>= 1u;
    }
    return acc;
}

inline Rational rational_abs(const Rational& r) { return r < 0 ? Rational(-r) : r; }

// "num/den" with the denominator always spelled out; used by canonical
// serializations that must be byte-stable.
inline std::string to_fraction_string(const Rational& r) {
    std::ostringstream os;
    os << numerator(r) << '/' << denominator(r);
    return os.str();
}

// Compact rendering: integers print without the "/1".
inline std::string to_plain_string(const Rational& r) {
    std::ostringstream os;
    os << r;
    return os.str();
}

// Accepts "3", "-3", "3/4", "-3/4". Whitespace is not tolerated.
inline Rational parse_rational(const std::string& text) {
    if (text.empty()) throw InputError("empty rational literal");
    try {
        const auto slash = text.find('/');
        if (slash == std::string::npos) return Rational(BigInt(text));
        BigInt num(text.substr(0, slash));
        BigInt den(text.substr(slash + 1));
        if (den == 0) throw InputError("zero denominator in rational literal: " + text);
        return Rational(num, den);
    } catch (const std::exception&) {
        throw InputError("malformed rational literal: " + text);
    }
}

// Complex number with exact rational real and imaginary parts. Only the
// handful of operations the permanent evaluator needs.
struct ComplexRational {
    Rational re{0};
    Rational im{0};

    ComplexRational() = default;
    explicit ComplexRational(int v) : re(v), im(0) {}
    ComplexRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

    ComplexRational conj() const { return {re, Rational(-im)}; }
    bool is_zero() const { return re == 0 && im == 0; }

    ComplexRational& operator+=(const ComplexRational& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    ComplexRational& operator-=(const ComplexRational& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    friend ComplexRational operator+(ComplexRational a, const ComplexRational& b) { return a += b; }
    friend ComplexRational operator-(ComplexRational a, const ComplexRational& b) { return a -= b; }
    friend ComplexRational operator*(const ComplexRational& a, const ComplexRational& b) {
        return {Rational(a.re * b.re - a.im * b.im), Rational(a.re * b.im + a.im * b.re)};
    }
    friend bool operator==(const ComplexRational& a, const ComplexRational& b) {
        return a.re == b.re && a.im == b.im;
    }
};

}  // namespace chaoskit
