#pragma once

#include <complex>
#include <ostream>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace dsp {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Parses "p/q" or "p" (optional sign). Decimal points and exponents are
/// rejected so that no float ever enters the exact layer.
Rational parse_rational(const std::string& text);
/// "p/q", or "p" for integers.
std::string to_string(const Rational& r);
bool is_integer(const Rational& r);

/// Exact element of Q(i).
struct GaussianRational {
  Rational re{0};
  Rational im{0};

  GaussianRational() = default;
  GaussianRational(Rational r, Rational i = Rational(0))
      : re(std::move(r)), im(std::move(i)) {}
  GaussianRational(int r) : re(r) {}

  bool is_zero() const { return re == 0 && im == 0; }
  /// Real integer (im == 0, re in Z).
  bool is_real_integer() const { return im == 0 && is_integer(re); }

  GaussianRational& operator+=(const GaussianRational& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  GaussianRational& operator-=(const GaussianRational& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  friend GaussianRational operator+(GaussianRational a,
                                    const GaussianRational& b) {
    return a += b;
  }
  friend GaussianRational operator-(GaussianRational a,
                                    const GaussianRational& b) {
    return a -= b;
  }
  friend GaussianRational operator*(const GaussianRational& a, int k) {
    return {a.re * k, a.im * k};
  }
  friend bool operator==(const GaussianRational& a,
                         const GaussianRational& b) {
    return a.re == b.re && a.im == b.im;
  }
  /// Lexicographic on (re, im); only used for deterministic ordering.
  friend bool operator<(const GaussianRational& a, const GaussianRational& b) {
    return a.re < b.re || (a.re == b.re && a.im < b.im);
  }

  std::complex<double> to_complex() const {
    return {re.convert_to<double>(), im.convert_to<double>()};
  }
};

std::string to_string(const GaussianRational& z);
std::ostream& operator<<(std::ostream& os, const GaussianRational& z);

}  // namespace dsp
