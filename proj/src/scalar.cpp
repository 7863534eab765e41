#include "qctx/scalar.hpp"

#include <cctype>
#include <cmath>
#include <string>

#include "qctx/error.hpp"

namespace qctx {

namespace {

std::string strip_spaces(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
  }
  return out;
}

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

mpz_class parse_integer(std::string_view s, std::string_view whole) {
  std::string digits(s);
  bool negative = false;
  if (!digits.empty() && (digits[0] == '+' || digits[0] == '-')) {
    negative = digits[0] == '-';
    digits.erase(0, 1);
  }
  if (!all_digits(digits)) {
    throw InputError("malformed number '" + std::string(whole) + "'");
  }
  mpz_class z(digits, 10);
  return negative ? mpz_class(-z) : z;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const std::string s = strip_spaces(text);
  if (s.empty()) throw InputError("empty number");

  if (const auto slash = s.find('/'); slash != std::string::npos) {
    mpz_class num = parse_integer(std::string_view(s).substr(0, slash), s);
    mpz_class den = parse_integer(std::string_view(s).substr(slash + 1), s);
    if (den == 0) throw InputError("zero denominator in '" + s + "'");
    Rational q(num, den);
    q.canonicalize();
    return q;
  }

  std::string_view rest(s);
  bool negative = false;
  if (rest.front() == '+' || rest.front() == '-') {
    negative = rest.front() == '-';
    rest.remove_prefix(1);
  }
  long exponent = 0;
  if (const auto e = rest.find_first_of("eE"); e != std::string_view::npos) {
    const mpz_class ez = parse_integer(rest.substr(e + 1), s);
    if (!ez.fits_slong_p() || abs(ez) > 4096) throw InputError("exponent out of range in '" + s + "'");
    exponent = ez.get_si();
    rest = rest.substr(0, e);
  }
  std::string digits;
  if (const auto dot = rest.find('.'); dot != std::string_view::npos) {
    const std::string_view int_part = rest.substr(0, dot);
    const std::string_view frac_part = rest.substr(dot + 1);
    if ((int_part.empty() && frac_part.empty()) || (!int_part.empty() && !all_digits(int_part)) ||
        (!frac_part.empty() && !all_digits(frac_part))) {
      throw InputError("malformed number '" + s + "'");
    }
    digits = std::string(int_part) + std::string(frac_part);
    exponent -= static_cast<long>(frac_part.size());
  } else {
    if (!all_digits(rest)) throw InputError("malformed number '" + s + "'");
    digits = std::string(rest);
  }
  mpz_class mantissa(digits, 10);
  if (negative) mantissa = -mantissa;
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exponent)));
  Rational q = exponent >= 0 ? Rational(mantissa * scale) : Rational(mantissa, scale);
  q.canonicalize();
  return q;
}

Rational rational_from_double(double value) {
  if (!std::isfinite(value)) throw InputError("non-finite value cannot be made exact");
  return Rational(value);  // mpq_set_d is exact
}

std::string to_string(const Rational& q) { return q.get_str(); }

int QuadraticNumber::sign() const {
  const int sa = sgn(a_);
  const int sb = sgn(b_);
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sa == 0 ? sb : sa;
  // Opposite signs: compare |a| with |b| sqrt 2 through squares.
  const Rational lhs = a_ * a_;
  const Rational rhs = 2 * b_ * b_;
  return lhs > rhs ? sa : sb;
}

QuadraticNumber QuadraticNumber::inverse() const {
  if (is_zero()) throw ValidationError("division by zero in Q(sqrt2)");
  const Rational n = norm();
  return {a_ / n, -b_ / n};
}

double QuadraticNumber::to_double() const { return a_.get_d() + b_.get_d() * M_SQRT2; }

QuadraticNumber& QuadraticNumber::operator+=(const QuadraticNumber& o) {
  a_ += o.a_;
  b_ += o.b_;
  return *this;
}

QuadraticNumber& QuadraticNumber::operator-=(const QuadraticNumber& o) {
  a_ -= o.a_;
  b_ -= o.b_;
  return *this;
}

QuadraticNumber& QuadraticNumber::operator*=(const QuadraticNumber& o) {
  Rational a = a_ * o.a_ + 2 * b_ * o.b_;
  Rational b = a_ * o.b_ + b_ * o.a_;
  a_ = std::move(a);
  b_ = std::move(b);
  return *this;
}

QuadraticNumber& QuadraticNumber::operator/=(const QuadraticNumber& o) { return *this *= o.inverse(); }

std::string QuadraticNumber::to_string() const {
  if (is_zero()) return "0";
  std::string out;
  if (sgn(a_) != 0) out = a_.get_str();
  if (sgn(b_) != 0) {
    if (b_ == 1) {
      out += out.empty() ? "sqrt2" : "+sqrt2";
    } else if (b_ == -1) {
      out += "-sqrt2";
    } else {
      if (!out.empty() && sgn(b_) > 0) out += "+";
      out += b_.get_str() + "*sqrt2";
    }
  }
  return out;
}

QuadraticNumber parse_quadratic(std::string_view text) {
  std::string s = strip_spaces(text);
  for (std::size_t pos; (pos = s.find("sqrt(2)")) != std::string::npos;) s.replace(pos, 7, "sqrt2");
  if (s.empty()) throw InputError("empty number");

  QuadraticNumber total;
  std::size_t start = 0;
  for (std::size_t i = 1; i <= s.size(); ++i) {
    const bool boundary = i == s.size() || ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' &&
                                            s[i - 1] != 'E' && s[i - 1] != '/' && s[i - 1] != '*');
    if (!boundary) continue;
    std::string term = s.substr(start, i - start);
    start = i;
    constexpr std::string_view kRoot = "sqrt2";
    if (term.size() >= kRoot.size() && term.compare(term.size() - kRoot.size(), kRoot.size(), kRoot) == 0) {
      std::string coeff = term.substr(0, term.size() - kRoot.size());
      if (!coeff.empty() && coeff.back() == '*') coeff.pop_back();
      Rational c(1);
      if (coeff == "-") {
        c = -1;
      } else if (!coeff.empty() && coeff != "+") {
        c = parse_rational(coeff);
      }
      total += QuadraticNumber(Rational(0), c);
    } else {
      total += QuadraticNumber(parse_rational(term));
    }
  }
  return total;
}

std::ostream& operator<<(std::ostream& os, const QuadraticNumber& x) { return os << x.to_string(); }

ExactComplex ExactComplex::inverse() const {
  if (is_zero()) throw ValidationError("division by zero in Q(sqrt2, i)");
  const QuadraticNumber n = norm2();
  return {re_ / n, -im_ / n};
}

ExactComplex& ExactComplex::operator+=(const ExactComplex& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

ExactComplex& ExactComplex::operator-=(const ExactComplex& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

ExactComplex& ExactComplex::operator*=(const ExactComplex& o) {
  QuadraticNumber re = re_ * o.re_ - im_ * o.im_;
  QuadraticNumber im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

std::ostream& operator<<(std::ostream& os, const ExactComplex& z) {
  if (z.imag().is_zero()) return os << z.real();
  return os << "(" << z.real() << ")+(" << z.imag() << ")i";
}

}  // namespace qctx
