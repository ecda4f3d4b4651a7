#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>

// Small exact-arithmetic types for the canned scenario tables. Amplitude
// coefficients there are all of the form (p/q)*sqrt(m), so joint
// probabilities reduce to plain rationals with no floating-point tolerance.

namespace jorca {

struct Rational {
  long long num = 0;
  long long den = 1;

  Rational() = default;
  Rational(long long n) : num(n), den(1) {}  // implicit: integers promote
  Rational(long long n, long long d) : num(n), den(d) { reduce(); }

  void reduce() {
    if (den == 0) throw std::domain_error("Rational: zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    const long long g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }

  double to_double() const {
    return static_cast<double>(num) / static_cast<double>(den);
  }

  friend Rational operator+(Rational a, Rational b) {
    return {a.num * b.den + b.num * a.den, a.den * b.den};
  }
  friend Rational operator-(Rational a, Rational b) {
    return {a.num * b.den - b.num * a.den, a.den * b.den};
  }
  friend Rational operator*(Rational a, Rational b) {
    return {a.num * b.num, a.den * b.den};
  }
  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num == b.num && a.den == b.den;
  }
};

/// Value r * sqrt(m) with rational r and square-free integer m >= 1.
/// Addition is defined only for matching radicands (zero matches anything),
/// which covers every canned scenario coefficient.
struct SqrtRational {
  Rational r{};
  long long m = 1;

  SqrtRational() = default;
  SqrtRational(Rational coeff, long long radicand = 1) : r(coeff), m(radicand) {
    if (m < 1) throw std::domain_error("SqrtRational: radicand must be >= 1");
    normalize();
  }

  void normalize() {
    if (r.num == 0) {
      m = 1;
      return;
    }
    // pull square factors of m into r
    for (long long p = 2; p * p <= m; ++p) {
      while (m % (p * p) == 0) {
        m /= p * p;
        r = r * Rational(p);
      }
    }
  }

  double to_double() const {
    return r.to_double() * std::sqrt(static_cast<double>(m));
  }

  friend SqrtRational operator*(const SqrtRational& a, const SqrtRational& b) {
    return SqrtRational(a.r * b.r, a.m * b.m);
  }
  friend SqrtRational operator-(const SqrtRational& a) {
    SqrtRational out = a;
    out.r.num = -out.r.num;
    return out;
  }
  friend SqrtRational operator+(const SqrtRational& a, const SqrtRational& b) {
    if (a.r.num == 0) return b;
    if (b.r.num == 0) return a;
    if (a.m != b.m) {
      throw std::domain_error("SqrtRational: radicand mismatch in addition");
    }
    return SqrtRational(a.r + b.r, a.m);
  }

  /// Exact square, always rational.
  Rational squared() const { return r * r * Rational(m); }
};

}  // namespace jorca
