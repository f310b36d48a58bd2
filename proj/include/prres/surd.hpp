#pragma once

#include <complex>
#include <string>

#include "prres/exact.hpp"

namespace prres {

/// Exact number of the form a + s * sqrt(D), a and D rational, s in {-1,0,+1}.
/// sqrt of a negative D is the principal root i*sqrt(-D).
///
/// Canonical form: when sqrt(D) is rational (D >= 0 a perfect square) it is
/// folded into `a`, leaving s = 0 and D = 0. Two canonical surds are equal as
/// complex numbers iff their fields are equal.
class Surd {
 public:
  Surd() = default;
  Surd(Rational rational) : offset_(std::move(rational)) {}  // NOLINT
  Surd(Rational offset, int sign, Rational radicand);

  const Rational& offset() const { return offset_; }
  int sign() const { return sign_; }
  const Rational& radicand() const { return radicand_; }

  bool is_rational() const { return sign_ == 0; }
  bool is_real() const { return sign_ == 0 || sgn(radicand_) > 0; }

  Surd operator+(const Rational& shift) const { return {offset_ + shift, sign_, radicand_}; }
  Surd operator-(const Rational& shift) const { return {offset_ - shift, sign_, radicand_}; }

  /// Real part approximated with `bits` of precision (used for ordering).
  mpf_class real_approx(unsigned bits = 256) const;
  mpf_class imag_approx(unsigned bits = 256) const;
  std::complex<double> to_complex() const;

  /// Exact comparison of real parts.
  static int compare_real(const Surd& a, const Surd& b);
  /// Exact comparison of imaginary parts.
  static int compare_imag(const Surd& a, const Surd& b);

  friend bool operator==(const Surd& a, const Surd& b) {
    return a.offset_ == b.offset_ && a.sign_ == b.sign_ && a.radicand_ == b.radicand_;
  }
  friend bool operator!=(const Surd& a, const Surd& b) { return !(a == b); }
  /// Strict weak order on the canonical fields (for sets), not on value.
  friend bool operator<(const Surd& a, const Surd& b);

  /// "a", "a + sqrt(D)", "a - i sqrt(-D)" etc.
  std::string str() const;

 private:
  Rational offset_{0};
  int sign_ = 0;
  Rational radicand_{0};
};

/// Whether q >= 0 has a rational square root; writes it to `root` if so.
bool rational_sqrt(const Rational& q, Rational& root);

}  // namespace prres
