#pragma once

// Exact rational arithmetic and exact comparisons against rational powers
// with fractional exponents (eta^{1/3}, eta^{2^j}, ...).

#include <gmp.h>

#include <boost/multiprecision/gmp.hpp>

#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hdx/error.hpp"

namespace hdx {

using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

inline Rational ratio(long long p, long long q = 1) { return Rational(Integer(p), Integer(q)); }

inline std::string to_string(const Rational& r) { return r.str(); }

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

/// Parses "p/q", "p" or a finite decimal such as "0.125" exactly.
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto trim = [](std::string& t) {
    while (!t.empty() && std::isspace(static_cast<unsigned char>(t.back()))) t.pop_back();
    std::size_t i = 0;
    while (i < t.size() && std::isspace(static_cast<unsigned char>(t[i]))) ++i;
    t.erase(0, i);
  };
  trim(s);
  if (s.empty()) fail(ErrorCode::ParseError, "empty rational");
  try {
    auto slash = s.find('/');
    if (slash != std::string::npos) {
      Integer p(s.substr(0, slash));
      Integer q(s.substr(slash + 1));
      if (q == 0) fail(ErrorCode::ParseError, "zero denominator in '" + s + "'");
      return Rational(p, q);
    }
    auto dot = s.find('.');
    if (dot != std::string::npos) {
      std::string digits = s.substr(0, dot) + s.substr(dot + 1);
      if (digits.empty() || digits == "-") fail(ErrorCode::ParseError, "bad decimal '" + s + "'");
      Integer p(digits);
      Integer q(1);
      for (std::size_t i = dot + 1; i < s.size(); ++i) q *= 10;
      return Rational(p, q);
    }
    return Rational(Integer(s));
  } catch (const std::runtime_error& e) {
    if (dynamic_cast<const Error*>(&e)) throw;
    fail(ErrorCode::ParseError, "cannot parse rational '" + s + "'");
  }
}

/// base^exp for any integer exponent (base must be nonzero when exp < 0).
inline Rational pow(const Rational& base, long long exp) {
  if (exp < 0) {
    if (base == 0) fail(ErrorCode::BadParams, "zero to a negative power");
    return pow(1 / base, -exp);
  }
  Integer num = numerator(base);
  Integer den = denominator(base);
  Integer rn, rd;
  mpz_pow_ui(rn.backend().data(), num.backend().data(), static_cast<unsigned long>(exp));
  mpz_pow_ui(rd.backend().data(), den.backend().data(), static_cast<unsigned long>(exp));
  return Rational(rn, rd);
}

/// Smallest rational upper bound we can cheaply certify for a double: the
/// double is dyadic, so its exact value is used after rounding one ulp up.
inline Rational rational_upper_bound(double x) {
  if (!std::isfinite(x)) fail(ErrorCode::BadParams, "non-finite bound");
  return Rational(std::nextafter(x, INFINITY));
}

/// Exact test x <= eta^{num/den} for x >= 0, eta > 0, den > 0.
/// Decided as x^den <= eta^num by cross-multiplication.
inline bool leq_power(const Rational& x, const Rational& eta, long long num, long long den) {
  if (den <= 0) fail(ErrorCode::BadParams, "non-positive root index");
  if (x < 0) return true;
  return pow(x, den) <= pow(eta, num);
}

/// Exact integer k-th root of a nonnegative integer if it exists.
inline bool exact_root(const Integer& value, unsigned long index, Integer& root) {
  if (value < 0) return false;
  int exact = mpz_root(root.backend().data(), value.backend().data(), index);
  return exact != 0;
}

/// Exact rational k-th root of a positive rational if it exists.
inline bool exact_root(const Rational& value, unsigned long index, Rational& root) {
  Integer n, d;
  if (!exact_root(numerator(value), index, n)) return false;
  if (!exact_root(denominator(value), index, d)) return false;
  root = Rational(n, d);
  return true;
}

/// Sign (-1, 0, +1) of the polynomial sum_i coeffs[i] * t^i evaluated at
/// t = radicand^{1/index} > 0.  Exact: a rational root is evaluated directly;
/// otherwise t is bracketed by rational bisection until interval arithmetic
/// fixes the sign.  For an irrational t the value cannot vanish unless the
/// polynomial is identically zero, provided deg < index, so the loop ends.
inline int sign_at_root(std::span<const Rational> coeffs, const Rational& radicand, unsigned index) {
  if (radicand <= 0 || index == 0) fail(ErrorCode::BadParams, "sign_at_root needs a positive radicand");
  bool all_zero = true;
  for (const auto& c : coeffs) all_zero = all_zero && c == 0;
  if (all_zero) return 0;

  auto eval = [&](const Rational& t) {
    Rational acc = 0;
    Rational p = 1;
    for (const auto& c : coeffs) {
      acc += c * p;
      p *= t;
    }
    return acc;
  };
  Rational t;
  if (exact_root(radicand, index, t)) {
    Rational v = eval(t);
    return v > 0 ? 1 : (v < 0 ? -1 : 0);
  }
  if (coeffs.size() > index) fail(ErrorCode::BadParams, "polynomial degree too high for exact root sign");

  Rational lo = 0;
  Rational hi = radicand > 1 ? radicand : Rational(1);
  for (int iter = 0; iter < 4096; ++iter) {
    // Interval enclosure of the polynomial on [lo, hi]; t^i is monotone for t >= 0.
    Rational low_sum = 0, high_sum = 0;
    Rational plo = 1, phi = 1;
    for (const auto& c : coeffs) {
      if (c >= 0) {
        low_sum += c * plo;
        high_sum += c * phi;
      } else {
        low_sum += c * phi;
        high_sum += c * plo;
      }
      plo *= lo;
      phi *= hi;
    }
    if (low_sum > 0) return 1;
    if (high_sum < 0) return -1;
    Rational mid = (lo + hi) / 2;
    if (pow(mid, index) <= radicand)
      lo = mid;
    else
      hi = mid;
  }
  fail(ErrorCode::BadParams, "sign_at_root did not converge");
}

/// Floating approximation of radicand^{num/den}, for reporting only.
inline double approx_power(const Rational& radicand, double exponent) {
  return std::pow(to_double(radicand), exponent);
}

inline long long binomial(long long n, long long k) {
  if (k < 0 || k > n) return 0;
  long long r = 1;
  for (long long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

inline long long factorial(long long n) {
  long long r = 1;
  for (long long i = 2; i <= n; ++i) r *= i;
  return r;
}

}  // namespace hdx
