#include "prres/surd.hpp"

#include <cmath>
#include <stdexcept>

namespace prres {

bool rational_sqrt(const Rational& q, Rational& root) {
  if (sgn(q) < 0) return false;
  const mpz_class& num = q.get_num();
  const mpz_class& den = q.get_den();
  if (mpz_perfect_square_p(num.get_mpz_t()) == 0 || mpz_perfect_square_p(den.get_mpz_t()) == 0) return false;
  mpz_class rn;
  mpz_class rd;
  mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
  root = Rational(rn, rd);
  root.canonicalize();
  return true;
}

Surd::Surd(Rational offset, int sign, Rational radicand)
    : offset_(std::move(offset)), sign_(sign), radicand_(std::move(radicand)) {
  if (sign_ < -1 || sign_ > 1) throw std::invalid_argument("Surd: sign must be -1, 0 or 1");
  if (sign_ == 0 || sgn(radicand_) == 0) {
    sign_ = 0;
    radicand_ = 0;
    return;
  }
  Rational root;
  if (rational_sqrt(radicand_, root)) {
    offset_ += sign_ > 0 ? root : Rational(-root);
    sign_ = 0;
    radicand_ = 0;
  }
}

mpf_class Surd::real_approx(unsigned bits) const {
  mpf_class v(offset_, bits);
  if (sign_ != 0 && sgn(radicand_) > 0) {
    mpf_class r(radicand_, bits);
    mpf_class s(0, bits);
    s = sqrt(r);
    v += sign_ > 0 ? s : mpf_class(-s);
  }
  return v;
}

mpf_class Surd::imag_approx(unsigned bits) const {
  mpf_class v(0, bits);
  if (sign_ != 0 && sgn(radicand_) < 0) {
    mpf_class r(-radicand_, bits);
    mpf_class s(0, bits);
    s = sqrt(r);
    v = sign_ > 0 ? s : mpf_class(-s);
  }
  return v;
}

std::complex<double> Surd::to_complex() const {
  if (sign_ == 0) return {offset_.get_d(), 0.0};
  const double root = std::sqrt(std::abs(radicand_.get_d()));
  if (sgn(radicand_) > 0) return {offset_.get_d() + sign_ * root, 0.0};
  return {offset_.get_d(), sign_ * root};
}

namespace {

// sign(e + s sqrt(c)) for c >= 0, s in {-1, 0, 1}.
int sign_plus_root(const Rational& e, int s, const Rational& c) {
  if (s == 0 || sgn(c) == 0) return sgn(e);
  if (sgn(e) == 0 || sgn(e) == s) return s;
  const int m = cmp(Rational(e * e), c);  // |e| against sqrt(c)
  return m > 0 ? sgn(e) : (m < 0 ? s : 0);
}

}  // namespace

int Surd::compare_imag(const Surd& a, const Surd& b) {
  auto imag_sign = [](const Surd& x) { return sgn(x.radicand_) < 0 ? x.sign_ : 0; };
  const int sa = imag_sign(a);
  const int sb = imag_sign(b);
  if (sa != sb) return sa < sb ? -1 : 1;
  if (sa == 0) return 0;
  return sa * cmp(Rational(-a.radicand_), Rational(-b.radicand_));
}

int Surd::compare_real(const Surd& a, const Surd& b) {
  // Re = offset + s sqrt(D) for D > 0, offset otherwise.
  auto real_sign = [](const Surd& x) { return sgn(x.radicand_) > 0 ? x.sign_ : 0; };
  const int sa = real_sign(a);
  const int sb = real_sign(b);
  // Sign of d + w with w = sa sqrt(A) - sb sqrt(B).
  const Rational d = a.offset_ - b.offset_;
  if (sb == 0) return sign_plus_root(d, sa, a.radicand_);
  if (sa == 0) return sign_plus_root(d, -sb, b.radicand_);
  const Rational& A = a.radicand_;
  const Rational& B = b.radicand_;
  const int w = sa == sb ? sa * cmp(A, B) : sa;
  if (w == 0 || sgn(d) == 0 || sgn(d) == w) return w != 0 ? w : sgn(d);
  // Opposite signs: compare d^2 with w^2 = A + B - 2 sa sb sqrt(AB).
  const int m = sign_plus_root(Rational(d * d - A - B), 2 * sa * sb > 0 ? 1 : -1, Rational(4 * A * B));
  return m > 0 ? sgn(d) : (m < 0 ? w : 0);
}

bool operator<(const Surd& a, const Surd& b) {
  if (a.offset_ != b.offset_) return a.offset_ < b.offset_;
  if (a.sign_ != b.sign_) return a.sign_ < b.sign_;
  return a.radicand_ < b.radicand_;
}

std::string Surd::str() const {
  if (sign_ == 0) return offset_.get_str();
  std::string root = sgn(radicand_) > 0 ? "sqrt(" + radicand_.get_str() + ")"
                                         : "i sqrt(" + Rational(-radicand_).get_str() + ")";
  std::string head = sgn(offset_) == 0 ? "" : offset_.get_str() + " ";
  if (head.empty()) return (sign_ < 0 ? "-" : "") + root;
  return head + (sign_ < 0 ? "- " : "+ ") + root;
}

}  // namespace prres
