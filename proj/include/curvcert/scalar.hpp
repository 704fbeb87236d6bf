#pragma once

// Scalar modes. The library is templated over the coefficient type: exact
// rationals (GMP-backed) for certified runs, binary64 for quick numerics.

#include <boost/multiprecision/gmp.hpp>

#include <cmath>
#include <cstdlib>
#include <string>

#include "curvcert/errors.hpp"

namespace curvcert {

// Expression templates are disabled so that a * b is again a Rational; the
// generic linear algebra code relies on arithmetic being type-stable.
using Rational =
    boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                  boost::multiprecision::et_off>;
using BigInt = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                             boost::multiprecision::et_off>;

template <class T>
struct scalar_traits;

template <>
struct scalar_traits<Rational> {
  static constexpr bool exact = true;
  static bool is_zero(const Rational& x) { return x.is_zero(); }
  static double to_double(const Rational& x) { return x.convert_to<double>(); }
  static std::string to_string(const Rational& x) { return x.str(); }
  static Rational abs(const Rational& x) { return x < 0 ? Rational(-x) : x; }
  // Exact mode admits no tolerance anywhere.
  static Rational default_tolerance() { return Rational(0); }
  static const char* mode_name() { return "rational"; }
};

template <>
struct scalar_traits<double> {
  static constexpr bool exact = false;
  static bool is_zero(double x) { return x == 0.0; }
  static double to_double(double x) { return x; }
  static std::string to_string(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
  }
  static double abs(double x) { return std::fabs(x); }
  static double default_tolerance() { return 1e-12; }
  static const char* mode_name() { return "float64"; }
};

// Parse a scalar literal: an integer "p" or a fraction "p/q" with decimal
// digits and optional leading minus. Used for both modes so that float input
// files can reuse exact-mode documents verbatim; float mode additionally
// accepts plain decimal notation.
inline Rational parse_rational(const std::string& text) {
  const auto bad = [&]() -> ParseError {
    return ParseError("invalid rational literal '" + text +
                      "' (expected \"p\" or \"p/q\" with integer p, q)");
  };
  if (text.empty()) throw bad();
  std::size_t slash = text.find('/');
  const auto check_int = [&](std::size_t from, std::size_t to) {
    if (from >= to) throw bad();
    std::size_t i = from;
    if (text[i] == '-') ++i;
    if (i >= to) throw bad();
    for (; i < to; ++i)
      if (text[i] < '0' || text[i] > '9') throw bad();
  };
  check_int(0, slash == std::string::npos ? text.size() : slash);
  if (slash != std::string::npos) {
    check_int(slash + 1, text.size());
    const std::string den = text.substr(slash + 1);
    if (Rational(den) == 0) throw ParseError("zero denominator in '" + text + "'");
  }
  return Rational(text);
}

template <class T>
T scalar_from_string(const std::string& text);

template <>
inline Rational scalar_from_string<Rational>(const std::string& text) {
  return parse_rational(text);
}

template <>
inline double scalar_from_string<double>(const std::string& text) {
  // Accept the exact-mode grammar plus decimal/scientific literals.
  std::size_t slash = text.find('/');
  if (slash != std::string::npos) {
    Rational r = parse_rational(text);
    return r.convert_to<double>();
  }
  const char* begin = text.c_str();
  char* end = nullptr;
  double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0')
    throw ParseError("invalid numeric literal '" + text + "'");
  return v;
}

// Minimal complex type that works over both scalar modes (std::complex is
// only specified for the builtin floating types).
template <class T>
struct Complex {
  T re{};
  T im{};

  Complex() = default;
  Complex(T r) : re(std::move(r)) {}
  Complex(T r, T i) : re(std::move(r)), im(std::move(i)) {}

  friend Complex operator+(const Complex& a, const Complex& b) {
    return {T(a.re + b.re), T(a.im + b.im)};
  }
  friend Complex operator-(const Complex& a, const Complex& b) {
    return {T(a.re - b.re), T(a.im - b.im)};
  }
  friend Complex operator-(const Complex& a) { return {T(-a.re), T(-a.im)}; }
  friend Complex operator*(const Complex& a, const Complex& b) {
    return {T(a.re * b.re - a.im * b.im), T(a.re * b.im + a.im * b.re)};
  }
  friend Complex operator/(const Complex& a, const Complex& b) {
    T n = b.re * b.re + b.im * b.im;
    return {T((a.re * b.re + a.im * b.im) / n), T((a.im * b.re - a.re * b.im) / n)};
  }
  Complex& operator+=(const Complex& o) { return *this = *this + o; }
  Complex& operator-=(const Complex& o) { return *this = *this - o; }
  Complex& operator*=(const Complex& o) { return *this = *this * o; }
  friend bool operator==(const Complex& a, const Complex& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend bool operator!=(const Complex& a, const Complex& b) { return !(a == b); }
};

template <class T>
Complex<T> conj(const Complex<T>& z) {
  return {z.re, T(-z.im)};
}

template <class T>
struct scalar_traits<Complex<T>> {
  static constexpr bool exact = scalar_traits<T>::exact;
  static bool is_zero(const Complex<T>& z) {
    return scalar_traits<T>::is_zero(z.re) && scalar_traits<T>::is_zero(z.im);
  }
  static std::string to_string(const Complex<T>& z) {
    return scalar_traits<T>::to_string(z.re) + " + " +
           scalar_traits<T>::to_string(z.im) + "i";
  }
  static const char* mode_name() { return "complex"; }
};

// |z|^2, exact in rational mode.
template <class T>
T norm_sq(const Complex<T>& z) {
  return z.re * z.re + z.im * z.im;
}

}  // namespace curvcert
