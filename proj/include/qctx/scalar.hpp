#pragma once

// Exact scalars: rationals, the real quadratic field Q(sqrt 2), and complex
// numbers whose components lie in it.

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <ostream>
#include <string>
#include <string_view>

namespace qctx {

using Rational = mpq_class;

/// Parses "3", "-2/7", "0.25", "1.5e-3" into an exact rational.
Rational parse_rational(std::string_view text);

/// Exact value of a finite double (every double is a dyadic rational).
Rational rational_from_double(double value);

std::string to_string(const Rational& q);

/// a + b*sqrt(2) with a, b rational. Arithmetic is closed, division by a
/// nonzero element is always defined, and the order is decidable.
class QuadraticNumber {
 public:
  QuadraticNumber() = default;
  QuadraticNumber(long value) : a_(value) {}  // NOLINT(google-explicit-constructor)
  QuadraticNumber(Rational a) : a_(std::move(a)) { a_.canonicalize(); }  // NOLINT
  QuadraticNumber(Rational a, Rational b) : a_(std::move(a)), b_(std::move(b)) {
    a_.canonicalize();
    b_.canonicalize();
  }

  static QuadraticNumber sqrt2() { return {Rational(0), Rational(1)}; }

  const Rational& rational_part() const { return a_; }
  const Rational& sqrt2_part() const { return b_; }

  bool is_zero() const { return sgn(a_) == 0 && sgn(b_) == 0; }
  bool is_rational() const { return sgn(b_) == 0; }
  int sign() const;

  QuadraticNumber conjugate() const { return {a_, -b_}; }
  /// a^2 - 2 b^2, the field norm; zero only for zero.
  Rational norm() const { return a_ * a_ - 2 * b_ * b_; }
  QuadraticNumber inverse() const;

  double to_double() const;

  QuadraticNumber& operator+=(const QuadraticNumber& o);
  QuadraticNumber& operator-=(const QuadraticNumber& o);
  QuadraticNumber& operator*=(const QuadraticNumber& o);
  QuadraticNumber& operator/=(const QuadraticNumber& o);

  friend QuadraticNumber operator+(QuadraticNumber x, const QuadraticNumber& y) { return x += y; }
  friend QuadraticNumber operator-(QuadraticNumber x, const QuadraticNumber& y) { return x -= y; }
  friend QuadraticNumber operator*(QuadraticNumber x, const QuadraticNumber& y) { return x *= y; }
  friend QuadraticNumber operator/(QuadraticNumber x, const QuadraticNumber& y) { return x /= y; }
  QuadraticNumber operator-() const { return {-a_, -b_}; }

  friend bool operator==(const QuadraticNumber& x, const QuadraticNumber& y) {
    return x.a_ == y.a_ && x.b_ == y.b_;
  }
  friend std::strong_ordering operator<=>(const QuadraticNumber& x, const QuadraticNumber& y) {
    const int s = (x - y).sign();
    return s < 0 ? std::strong_ordering::less
                 : (s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  /// Canonical text: "0", "-3/4", "sqrt2", "1/2-3*sqrt2". Round-trips
  /// through parse_quadratic.
  std::string to_string() const;

 private:
  Rational a_{0};
  Rational b_{0};
};

/// Accepts sums of terms "q", "q*sqrt2", "sqrt2" with optional signs, where q
/// is anything parse_rational accepts.
QuadraticNumber parse_quadratic(std::string_view text);

std::ostream& operator<<(std::ostream& os, const QuadraticNumber& x);

/// re + i*im over Q(sqrt 2).
class ExactComplex {
 public:
  ExactComplex() = default;
  ExactComplex(long value) : re_(value) {}                       // NOLINT
  ExactComplex(QuadraticNumber re) : re_(std::move(re)) {}       // NOLINT
  ExactComplex(QuadraticNumber re, QuadraticNumber im) : re_(std::move(re)), im_(std::move(im)) {}

  const QuadraticNumber& real() const { return re_; }
  const QuadraticNumber& imag() const { return im_; }

  bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
  ExactComplex conj() const { return {re_, -im_}; }
  QuadraticNumber norm2() const { return re_ * re_ + im_ * im_; }
  ExactComplex inverse() const;

  ExactComplex& operator+=(const ExactComplex& o);
  ExactComplex& operator-=(const ExactComplex& o);
  ExactComplex& operator*=(const ExactComplex& o);
  ExactComplex& operator/=(const ExactComplex& o) { return *this *= o.inverse(); }

  friend ExactComplex operator+(ExactComplex x, const ExactComplex& y) { return x += y; }
  friend ExactComplex operator-(ExactComplex x, const ExactComplex& y) { return x -= y; }
  friend ExactComplex operator*(ExactComplex x, const ExactComplex& y) { return x *= y; }
  friend ExactComplex operator/(ExactComplex x, const ExactComplex& y) { return x /= y; }
  ExactComplex operator-() const { return {-re_, -im_}; }

  friend bool operator==(const ExactComplex& x, const ExactComplex& y) {
    return x.re_ == y.re_ && x.im_ == y.im_;
  }

 private:
  QuadraticNumber re_;
  QuadraticNumber im_;
};

std::ostream& operator<<(std::ostream& os, const ExactComplex& z);

}  // namespace qctx
