#pragma once

// Exact matrix model of so(1,3) in the basis X, R, U_j^{+-}, together with the
// complexified ladder elements eta, mu, Q and the one-parameter subgroup
// exp(tX).

#include <array>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "prres/exact.hpp"

namespace prres::lie {

enum class BasisLabel { X, R, U1Plus, U2Plus, U1Minus, U2Minus, K1, K2, P1, P2, Composite };

std::string label_name(BasisLabel label);

/// 4x4 matrix over the Gaussian rationals.
class LieMatrix {
 public:
  LieMatrix() = default;
  explicit LieMatrix(const std::array<std::array<long, 4>, 4>& entries);

  static LieMatrix zero() { return {}; }
  static LieMatrix identity();
  /// Exact basis matrix; the result carries `label` as its tag.
  static LieMatrix basis(BasisLabel label);

  const GaussRational& operator()(int row, int col) const { return entries_[index(row, col)]; }
  GaussRational& operator()(int row, int col) { return entries_[index(row, col)]; }

  BasisLabel tag() const { return tag_; }

  LieMatrix transpose() const;
  bool is_zero() const;
  Eigen::Matrix4cd to_complex() const;
  /// Throws std::domain_error if any entry has a nonzero imaginary part.
  Eigen::Matrix4d to_real() const;

  LieMatrix& operator+=(const LieMatrix& o);
  LieMatrix& operator-=(const LieMatrix& o);
  friend LieMatrix operator+(LieMatrix a, const LieMatrix& b) { return a += b; }
  friend LieMatrix operator-(LieMatrix a, const LieMatrix& b) { return a -= b; }
  friend LieMatrix operator-(const LieMatrix& a) { return GaussRational(-1) * a; }
  friend LieMatrix operator*(const LieMatrix& a, const LieMatrix& b);
  friend LieMatrix operator*(const GaussRational& s, const LieMatrix& a);
  /// Entry-wise equality; tags are ignored.
  friend bool operator==(const LieMatrix& a, const LieMatrix& b) { return a.entries_ == b.entries_; }

 private:
  static constexpr int index(int row, int col) { return 4 * row + col; }
  std::array<GaussRational, 16> entries_{};
  BasisLabel tag_ = BasisLabel::Composite;
};

/// J = diag(1,-1,-1,-1). Every basis matrix satisfies A^T J + J A = 0 for this
/// choice; it is fixed up to an overall sign by that requirement.
LieMatrix minkowski_form();

/// AB - BA, exact.
LieMatrix bracket(const LieMatrix& a, const LieMatrix& b);

/// True iff A^T J + J A = 0 exactly.
bool verify_so13(const LieMatrix& a);

// Complexified ladder elements:
//   eta_{+-} = (U1^- +- i U2^-)/2,  mu_{+-} = (U1^+ +- i U2^+)/2,  Q_{+-} = -(X +- i R).
LieMatrix eta_plus();
LieMatrix eta_minus();
LieMatrix mu_plus();
LieMatrix mu_minus();
LieMatrix q_plus();
LieMatrix q_minus();

/// Element of span{eta+, eta-, mu+, mu-, Q+, Q-} with Gaussian-rational coefficients.
struct ComplexCombination {
  GaussRational eta_plus, eta_minus, mu_plus, mu_minus, q_plus, q_minus;

  LieMatrix realize() const;
};

using GroupMatrix = Eigen::Matrix4d;

/// exp(tX): cosh t on the (0,0),(1,1) diagonal, sinh t off-diagonal in the
/// (0,1) block, identity on coordinates 2,3.
GroupMatrix exp_tX(double t);

/// exp(theta R): rotation of coordinates 2,3 (the right SO(2) fibre action).
GroupMatrix exp_thetaR(double theta);

/// Ad(exp(tX)) V = exp(tX) V exp(-tX).
Eigen::Matrix4cd ad_flow(double t, const LieMatrix& v);

const Eigen::Matrix4d& minkowski_form_d();

/// max-entry norm of g^T J g - J.
double form_defect(const GroupMatrix& g);

/// Membership in SO(1,3)^+ up to `tol`: form preserved and the upper sheet kept.
bool is_lorentz(const GroupMatrix& g, double tol = 1e-9);

/// g^{-1} = J g^T J for g in O(1,3).
GroupMatrix lorentz_inverse(const GroupMatrix& g);

/// One recorded identity from the bracket tables.
struct BracketIdentity {
  std::string family;  // "XUR", "XKP", "eta-mu"
  std::string text;    // e.g. "[X,U1+] = U1+"
  LieMatrix lhs_a;
  LieMatrix lhs_b;
  LieMatrix rhs;

  bool holds() const { return bracket(lhs_a, lhs_b) == rhs; }
};

/// Every identity of the X/U/R table (15), the X/K/P families with i,j
/// expanded (8) and the eta/mu/Q table with both signs expanded (16).
std::vector<BracketIdentity> commutation_identities();

}  // namespace prres::lie
