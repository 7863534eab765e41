#pragma once

// Scalar backends. Every algorithm in the library is written against this
// interface, so it runs either exactly over Q(sqrt 2, i) or in double
// precision with the global tolerance from tolerance.hpp.

#include <cmath>
#include <complex>
#include <concepts>
#include <cstdio>
#include <string>
#include <string_view>

#include "qctx/scalar.hpp"
#include "qctx/tolerance.hpp"

namespace qctx {

struct ExactBackend {
  using Real = QuadraticNumber;
  using Scalar = ExactComplex;
  static constexpr std::string_view name = "exact";
  static constexpr bool is_exact = true;

  static bool is_zero(const Scalar& s) { return s.is_zero(); }
  static bool is_zero(const Real& r) { return r.is_zero(); }
  static bool equal(const Scalar& x, const Scalar& y) { return x == y; }
  static bool equal(const Real& x, const Real& y) { return x == y; }
  static bool less(const Real& x, const Real& y) { return x < y; }
  /// x >= y.
  static bool at_least(const Real& x, const Real& y) { return x >= y; }
  static bool positive(const Real& x) { return x.sign() > 0; }

  static Real real(const Scalar& s) { return s.real(); }
  static Real imag(const Scalar& s) { return s.imag(); }
  static Scalar from_real(Real r) { return Scalar(std::move(r)); }
  static Scalar conj(const Scalar& s) { return s.conj(); }
  static Real norm2(const Scalar& s) { return s.norm2(); }
  static Scalar inverse(const Scalar& s) { return s.inverse(); }

  static Real real_from_double(double v) { return Real(rational_from_double(v)); }
  static Real parse_real(std::string_view text) { return parse_quadratic(text); }
  static double to_double(const Real& r) { return r.to_double(); }
  static std::complex<double> to_complex(const Scalar& s) {
    return {s.real().to_double(), s.imag().to_double()};
  }

  /// Pivot preference for elimination; any nonzero entry is as good as any
  /// other in exact arithmetic.
  static double pivot_weight(const Scalar& s) { return s.is_zero() ? 0.0 : 1.0; }

  /// Total order by real part then imaginary part.
  static int compare(const Scalar& x, const Scalar& y) {
    if (auto c = x.real() <=> y.real(); c != 0) return c < 0 ? -1 : 1;
    if (auto c = x.imag() <=> y.imag(); c != 0) return c < 0 ? -1 : 1;
    return 0;
  }
  static int compare(const Real& x, const Real& y) {
    auto c = x <=> y;
    return c < 0 ? -1 : (c > 0 ? 1 : 0);
  }

  static std::string to_string(const Real& r) { return r.to_string(); }
  static std::string key(const Scalar& s) {
    return s.imag().is_zero() ? s.real().to_string() : s.real().to_string() + "|" + s.imag().to_string();
  }
};

struct FloatBackend {
  using Real = double;
  using Scalar = std::complex<double>;
  static constexpr std::string_view name = "float";
  static constexpr bool is_exact = false;

  static bool is_zero(const Scalar& s) { return std::abs(s) <= tolerance(); }
  static bool is_zero(Real r) { return std::abs(r) <= tolerance(); }
  static bool equal(const Scalar& x, const Scalar& y) { return std::abs(x - y) <= tolerance(); }
  static bool equal(Real x, Real y) { return std::abs(x - y) <= tolerance(); }
  static bool less(Real x, Real y) { return x < y - tolerance(); }
  static bool at_least(Real x, Real y) { return x >= y - tolerance(); }
  static bool positive(Real x) { return x > tolerance(); }

  static Real real(const Scalar& s) { return s.real(); }
  static Real imag(const Scalar& s) { return s.imag(); }
  static Scalar from_real(Real r) { return {r, 0.0}; }
  static Scalar conj(const Scalar& s) { return std::conj(s); }
  static Real norm2(const Scalar& s) { return std::norm(s); }
  static Scalar inverse(const Scalar& s) { return 1.0 / s; }

  static Real real_from_double(double v) { return v; }
  static Real parse_real(std::string_view text) { return parse_quadratic(text).to_double(); }
  static double to_double(Real r) { return r; }
  static std::complex<double> to_complex(const Scalar& s) { return s; }

  static double pivot_weight(const Scalar& s) { return std::abs(s); }

  static int compare(const Scalar& x, const Scalar& y) {
    if (int c = compare(x.real(), y.real()); c != 0) return c;
    return compare(x.imag(), y.imag());
  }
  static int compare(Real x, Real y) {
    if (equal(x, y)) return 0;
    return x < y ? -1 : 1;
  }

  static std::string to_string(Real r) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", r);
    return buf;
  }
  /// Rounded rendering used for canonical keys and context ids.
  static std::string key(const Scalar& s) { return round6(s.real()) + "|" + round6(s.imag()); }

 private:
  static std::string round6(double v) {
    if (std::abs(v) < 5e-7) return "0";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
  }
};

template <class B>
concept Backend = std::same_as<B, ExactBackend> || std::same_as<B, FloatBackend>;

}  // namespace qctx
