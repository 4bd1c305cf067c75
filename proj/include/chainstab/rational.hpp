#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>

namespace chainstab {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Parses "p", "p/q", with optional sign; accepts the UTF-8 minus sign
// U+2212 as well as '-'.
Rational parse_rational(const std::string& text);

// Canonical form: "p" when the denominator is 1, otherwise "p/q" with q > 0.
std::string rational_to_string(const Rational& x);

std::string integer_to_string(const Integer& x);
Integer parse_integer(const std::string& text);

// A complex number with exact rational real and imaginary parts.
struct ComplexQ {
    Rational re;
    Rational im;

    ComplexQ() = default;
    ComplexQ(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

    bool is_zero() const { return re == 0 && im == 0; }

    ComplexQ operator+(const ComplexQ& o) const { return {re + o.re, im + o.im}; }
    ComplexQ operator-(const ComplexQ& o) const { return {re - o.re, im - o.im}; }
    ComplexQ operator-() const { return {-re, -im}; }
    bool operator==(const ComplexQ& o) const { return re == o.re && im == o.im; }
    bool operator!=(const ComplexQ& o) const { return !(*this == o); }

    ComplexQ scaled(const Rational& c) const { return {re * c, im * c}; }
};

// Re(a)Im(b) - Re(b)Im(a); the sign decides angular order within a half plane.
inline Rational cross(const ComplexQ& a, const ComplexQ& b) {
    return a.re * b.im - b.re * a.im;
}

inline Rational dot(const ComplexQ& a, const ComplexQ& b) {
    return a.re * b.re + a.im * b.im;
}

std::string complex_to_string(const ComplexQ& z);

}  // namespace chainstab
