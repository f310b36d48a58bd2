#pragma once

#include <complex>
#include <string>

#include <gmpxx.h>

namespace prres {

using Rational = mpq_class;

Rational make_rational(long num, long den = 1);

/// Parses "p", "p/q", or a decimal literal such as "0.75" / "-1.5e-2" exactly.
Rational parse_rational(const std::string& text);

/// Exact rational value of the shortest round-trip decimal form of `x`.
/// 0.96 maps to 24/25, not to the binary double nearest 0.96.
Rational rational_from_double(double x);

std::string to_string(const Rational& q);

/// a + b i with a, b rational.
class GaussRational {
 public:
  GaussRational() = default;
  GaussRational(Rational re) : re_(std::move(re)) {}  // NOLINT: implicit by intent
  GaussRational(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}
  GaussRational(long re) : re_(re) {}  // NOLINT
  GaussRational(int re) : re_(re) {}   // NOLINT

  static GaussRational i() { return {Rational(0), Rational(1)}; }

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  GaussRational conj() const { return {re_, -im_}; }
  Rational norm2() const { return re_ * re_ + im_ * im_; }
  std::complex<double> to_complex() const { return {re_.get_d(), im_.get_d()}; }

  GaussRational& operator+=(const GaussRational& o);
  GaussRational& operator-=(const GaussRational& o);
  GaussRational& operator*=(const GaussRational& o);
  GaussRational& operator/=(const GaussRational& o);

  friend GaussRational operator+(GaussRational a, const GaussRational& b) { return a += b; }
  friend GaussRational operator-(GaussRational a, const GaussRational& b) { return a -= b; }
  friend GaussRational operator*(GaussRational a, const GaussRational& b) { return a *= b; }
  friend GaussRational operator/(GaussRational a, const GaussRational& b) { return a /= b; }
  friend GaussRational operator-(const GaussRational& a) { return {-a.re_, -a.im_}; }
  friend bool operator==(const GaussRational& a, const GaussRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  friend bool operator!=(const GaussRational& a, const GaussRational& b) { return !(a == b); }

  /// Human-readable form: "3/2", "-i", "1/2 i", "(1+2i)".
  std::string str() const;

 private:
  Rational re_{0};
  Rational im_{0};
};

GaussRational pow(const GaussRational& base, unsigned exponent);

}  // namespace prres
