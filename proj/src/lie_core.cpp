#include "prres/lie_core.hpp"

#include <cmath>
#include <stdexcept>

namespace prres::lie {

namespace {

using Table = std::array<std::array<long, 4>, 4>;

constexpr Table kX = {{{0, 1, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}}};
constexpr Table kR = {{{0, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, -1, 0}}};
constexpr Table kU1Plus = {{{0, 0, -1, 0}, {0, 0, -1, 0}, {-1, 1, 0, 0}, {0, 0, 0, 0}}};
constexpr Table kU2Plus = {{{0, 0, 0, -1}, {0, 0, 0, -1}, {0, 0, 0, 0}, {-1, 1, 0, 0}}};
constexpr Table kU1Minus = {{{0, 0, -1, 0}, {0, 0, 1, 0}, {-1, -1, 0, 0}, {0, 0, 0, 0}}};
constexpr Table kU2Minus = {{{0, 0, 0, -1}, {0, 0, 0, 1}, {0, 0, 0, 0}, {-1, -1, 0, 0}}};

const GaussRational kHalf{make_rational(1, 2)};
const GaussRational kI = GaussRational::i();

}  // namespace

std::string label_name(BasisLabel label) {
  switch (label) {
    case BasisLabel::X: return "X";
    case BasisLabel::R: return "R";
    case BasisLabel::U1Plus: return "U1+";
    case BasisLabel::U2Plus: return "U2+";
    case BasisLabel::U1Minus: return "U1-";
    case BasisLabel::U2Minus: return "U2-";
    case BasisLabel::K1: return "K1";
    case BasisLabel::K2: return "K2";
    case BasisLabel::P1: return "P1";
    case BasisLabel::P2: return "P2";
    case BasisLabel::Composite: return "composite";
  }
  return "composite";
}

LieMatrix::LieMatrix(const std::array<std::array<long, 4>, 4>& entries) {
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) entries_[index(r, c)] = GaussRational(entries[r][c]);
}

LieMatrix LieMatrix::identity() {
  LieMatrix m;
  for (int k = 0; k < 4; ++k) m(k, k) = GaussRational(1);
  return m;
}

LieMatrix LieMatrix::basis(BasisLabel label) {
  LieMatrix m;
  switch (label) {
    case BasisLabel::X: m = LieMatrix(kX); break;
    case BasisLabel::R: m = LieMatrix(kR); break;
    case BasisLabel::U1Plus: m = LieMatrix(kU1Plus); break;
    case BasisLabel::U2Plus: m = LieMatrix(kU2Plus); break;
    case BasisLabel::U1Minus: m = LieMatrix(kU1Minus); break;
    case BasisLabel::U2Minus: m = LieMatrix(kU2Minus); break;
    case BasisLabel::K1: m = kHalf * (LieMatrix(kU1Plus) - LieMatrix(kU1Minus)); break;
    case BasisLabel::K2: m = kHalf * (LieMatrix(kU2Plus) - LieMatrix(kU2Minus)); break;
    case BasisLabel::P1: m = kHalf * (LieMatrix(kU1Plus) + LieMatrix(kU1Minus)); break;
    case BasisLabel::P2: m = kHalf * (LieMatrix(kU2Plus) + LieMatrix(kU2Minus)); break;
    case BasisLabel::Composite:
      throw std::invalid_argument("no basis matrix for the composite tag");
  }
  m.tag_ = label;
  return m;
}

LieMatrix LieMatrix::transpose() const {
  LieMatrix t;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) t(c, r) = (*this)(r, c);
  return t;
}

bool LieMatrix::is_zero() const {
  for (const auto& e : entries_)
    if (!e.is_zero()) return false;
  return true;
}

Eigen::Matrix4cd LieMatrix::to_complex() const {
  Eigen::Matrix4cd m;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) m(r, c) = (*this)(r, c).to_complex();
  return m;
}

Eigen::Matrix4d LieMatrix::to_real() const {
  Eigen::Matrix4d m;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) {
      const auto& e = (*this)(r, c);
      if (sgn(e.im()) != 0) throw std::domain_error("matrix has complex entries");
      m(r, c) = e.re().get_d();
    }
  return m;
}

LieMatrix& LieMatrix::operator+=(const LieMatrix& o) {
  for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] += o.entries_[k];
  tag_ = BasisLabel::Composite;
  return *this;
}

LieMatrix& LieMatrix::operator-=(const LieMatrix& o) {
  for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] -= o.entries_[k];
  tag_ = BasisLabel::Composite;
  return *this;
}

LieMatrix operator*(const LieMatrix& a, const LieMatrix& b) {
  LieMatrix p;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) {
      GaussRational sum;
      for (int k = 0; k < 4; ++k) {
        if (a(r, k).is_zero() || b(k, c).is_zero()) continue;
        sum += a(r, k) * b(k, c);
      }
      p(r, c) = std::move(sum);
    }
  return p;
}

LieMatrix operator*(const GaussRational& s, const LieMatrix& a) {
  LieMatrix p;
  for (std::size_t k = 0; k < a.entries_.size(); ++k) p.entries_[k] = s * a.entries_[k];
  return p;
}

LieMatrix minkowski_form() {
  LieMatrix j;
  j(0, 0) = GaussRational(1);
  for (int k = 1; k < 4; ++k) j(k, k) = GaussRational(-1);
  return j;
}

LieMatrix bracket(const LieMatrix& a, const LieMatrix& b) { return a * b - b * a; }

bool verify_so13(const LieMatrix& a) {
  const LieMatrix j = minkowski_form();
  return (a.transpose() * j + j * a).is_zero();
}

LieMatrix eta_plus() {
  return kHalf * (LieMatrix::basis(BasisLabel::U1Minus) + kI * LieMatrix::basis(BasisLabel::U2Minus));
}
LieMatrix eta_minus() {
  return kHalf * (LieMatrix::basis(BasisLabel::U1Minus) - kI * LieMatrix::basis(BasisLabel::U2Minus));
}
LieMatrix mu_plus() {
  return kHalf * (LieMatrix::basis(BasisLabel::U1Plus) + kI * LieMatrix::basis(BasisLabel::U2Plus));
}
LieMatrix mu_minus() {
  return kHalf * (LieMatrix::basis(BasisLabel::U1Plus) - kI * LieMatrix::basis(BasisLabel::U2Plus));
}
LieMatrix q_plus() { return -(LieMatrix::basis(BasisLabel::X) + kI * LieMatrix::basis(BasisLabel::R)); }
LieMatrix q_minus() { return -(LieMatrix::basis(BasisLabel::X) - kI * LieMatrix::basis(BasisLabel::R)); }

LieMatrix ComplexCombination::realize() const {
  return eta_plus * lie::eta_plus() + eta_minus * lie::eta_minus() + mu_plus * lie::mu_plus() +
         mu_minus * lie::mu_minus() + q_plus * lie::q_plus() + q_minus * lie::q_minus();
}

GroupMatrix exp_tX(double t) {
  GroupMatrix g = GroupMatrix::Identity();
  const double c = std::cosh(t);
  const double s = std::sinh(t);
  g(0, 0) = c;
  g(1, 1) = c;
  g(0, 1) = s;
  g(1, 0) = s;
  return g;
}

GroupMatrix exp_thetaR(double theta) {
  GroupMatrix g = GroupMatrix::Identity();
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  g(2, 2) = c;
  g(3, 3) = c;
  g(2, 3) = s;
  g(3, 2) = -s;
  return g;
}

Eigen::Matrix4cd ad_flow(double t, const LieMatrix& v) {
  const Eigen::Matrix4cd fwd = exp_tX(t).cast<std::complex<double>>();
  const Eigen::Matrix4cd bwd = exp_tX(-t).cast<std::complex<double>>();
  return fwd * v.to_complex() * bwd;
}

const Eigen::Matrix4d& minkowski_form_d() {
  static const Eigen::Matrix4d j = Eigen::Vector4d(1.0, -1.0, -1.0, -1.0).asDiagonal();
  return j;
}

double form_defect(const GroupMatrix& g) {
  const auto& j = minkowski_form_d();
  return (g.transpose() * j * g - j).cwiseAbs().maxCoeff();
}

bool is_lorentz(const GroupMatrix& g, double tol) { return form_defect(g) <= tol && g(0, 0) > 0.0; }

GroupMatrix lorentz_inverse(const GroupMatrix& g) {
  const auto& j = minkowski_form_d();
  return j * g.transpose() * j;
}

std::vector<BracketIdentity> commutation_identities() {
  using L = BasisLabel;
  const LieMatrix x = LieMatrix::basis(L::X);
  const LieMatrix r = LieMatrix::basis(L::R);
  const LieMatrix u1p = LieMatrix::basis(L::U1Plus);
  const LieMatrix u2p = LieMatrix::basis(L::U2Plus);
  const LieMatrix u1m = LieMatrix::basis(L::U1Minus);
  const LieMatrix u2m = LieMatrix::basis(L::U2Minus);
  const LieMatrix zero;
  const GaussRational two(2);

  std::vector<BracketIdentity> ids;
  auto add = [&ids](std::string family, std::string text, LieMatrix a, LieMatrix b, LieMatrix rhs) {
    ids.push_back({std::move(family), std::move(text), std::move(a), std::move(b), std::move(rhs)});
  };

  add("XUR", "[X,U1+] = U1+", x, u1p, u1p);
  add("XUR", "[X,U2+] = U2+", x, u2p, u2p);
  add("XUR", "[X,U1-] = -U1-", x, u1m, -u1m);
  add("XUR", "[X,U2-] = -U2-", x, u2m, -u2m);
  add("XUR", "[U1+,U1-] = 2X", u1p, u1m, two * x);
  add("XUR", "[U2+,U2-] = 2X", u2p, u2m, two * x);
  add("XUR", "[U1+,U2-] = 2R", u1p, u2m, two * r);
  add("XUR", "[U1-,U2+] = 2R", u1m, u2p, two * r);
  add("XUR", "[U1+,U2+] = 0", u1p, u2p, zero);
  add("XUR", "[U1-,U2-] = 0", u1m, u2m, zero);
  add("XUR", "[X,R] = 0", x, r, zero);
  add("XUR", "[R,U1+] = -U2+", r, u1p, -u2p);
  add("XUR", "[R,U1-] = -U2-", r, u1m, -u2m);
  add("XUR", "[R,U2+] = U1+", r, u2p, u1p);
  add("XUR", "[R,U2-] = U1-", r, u2m, u1m);

  const std::array<LieMatrix, 2> k{LieMatrix::basis(L::K1), LieMatrix::basis(L::K2)};
  const std::array<LieMatrix, 2> p{LieMatrix::basis(L::P1), LieMatrix::basis(L::P2)};
  for (int i = 0; i < 2; ++i) {
    const std::string si = std::to_string(i + 1);
    add("XKP", "[X,K" + si + "] = P" + si, x, k[i], p[i]);
    add("XKP", "[X,P" + si + "] = K" + si, x, p[i], k[i]);
  }
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      const std::string lhs = "[K" + std::to_string(i + 1) + ",P" + std::to_string(j + 1) + "]";
      add("XKP", lhs + (i == j ? " = X" : " = 0"), k[i], p[j], i == j ? x : zero);
    }

  const LieMatrix ep = eta_plus(), em = eta_minus(), mp = mu_plus(), mm = mu_minus();
  const LieMatrix qp = q_plus(), qm = q_minus();
  const GaussRational i = GaussRational::i();
  add("eta-mu", "[X,eta+] = -eta+", x, ep, -ep);
  add("eta-mu", "[X,eta-] = -eta-", x, em, -em);
  add("eta-mu", "[R,eta+] = i eta+", r, ep, i * ep);
  add("eta-mu", "[R,eta-] = -i eta-", r, em, -(i * em));
  add("eta-mu", "[Q+,mu-] = -2 mu-", qp, mm, GaussRational(-2) * mm);
  add("eta-mu", "[Q-,mu+] = -2 mu+", qm, mp, GaussRational(-2) * mp);
  add("eta-mu", "[X,mu+] = mu+", x, mp, mp);
  add("eta-mu", "[X,mu-] = mu-", x, mm, mm);
  add("eta-mu", "[R,mu+] = i mu+", r, mp, i * mp);
  add("eta-mu", "[R,mu-] = -i mu-", r, mm, -(i * mm));
  add("eta-mu", "[eta+,mu-] = Q+", ep, mm, qp);
  add("eta-mu", "[eta-,mu+] = Q-", em, mp, qm);
  add("eta-mu", "[eta+,mu+] = 0", ep, mp, zero);
  add("eta-mu", "[eta-,mu-] = 0", em, mm, zero);
  add("eta-mu", "[Q+,mu+] = 0", qp, mp, zero);
  add("eta-mu", "[Q-,mu-] = 0", qm, mm, zero);
  return ids;
}

}  // namespace prres::lie
