#pragma once

// SO(2) weight structure of symmetric tensor powers of C^2 = span{v+, v-}.
// s_{l,m-l} denotes the symmetrization of v+^{(x)l} (x) v-^{(x)(m-l)}, kept
// unnormalized.

#include <complex>
#include <map>
#include <vector>

#include <Eigen/Dense>

namespace prres::tensor {

using Complex = std::complex<double>;

/// Element of the m-th symmetric power in the basis s_{l,m-l}, l = 0..m.
class SymTensor {
 public:
  explicit SymTensor(unsigned degree);
  SymTensor(unsigned degree, std::vector<Complex> coefficients);

  /// s_{l, m-l}.
  static SymTensor basis(unsigned l, unsigned m);

  unsigned degree() const { return degree_; }
  /// Coefficient of s_{l, m-l}.
  const Complex& operator[](unsigned l) const { return coeffs_.at(l); }
  Complex& operator[](unsigned l) { return coeffs_.at(l); }
  const std::vector<Complex>& coefficients() const { return coeffs_; }

  SymTensor& operator+=(const SymTensor& o);
  friend SymTensor operator+(SymTensor a, const SymTensor& b) { return a += b; }
  friend SymTensor operator-(const SymTensor& a, const SymTensor& b);
  friend SymTensor operator*(Complex s, SymTensor a);

  double max_abs() const;

 private:
  unsigned degree_;
  std::vector<Complex> coeffs_;
};

/// Dense tensor in (C^2)^{(x)m} over the basis v_{k1} (x) ... (x) v_{km}.
/// Slot j of a flat index is bit j: 0 selects v+, 1 selects v-.
class FullTensor {
 public:
  explicit FullTensor(unsigned degree);
  FullTensor(unsigned degree, std::vector<Complex> data);

  /// v_{k1} (x) ... (x) v_{km}, `plus[j]` true for v+.
  static FullTensor pure(const std::vector<bool>& plus);

  unsigned degree() const { return degree_; }
  std::size_t size() const { return data_.size(); }
  const Complex& operator[](std::size_t index) const { return data_[index]; }
  Complex& operator[](std::size_t index) { return data_[index]; }
  const std::vector<Complex>& data() const { return data_; }

  friend FullTensor operator-(const FullTensor& a, const FullTensor& b);
  double max_abs() const;

 private:
  unsigned degree_;
  std::vector<Complex> data_;
};

/// (1/m!) sum over permutations of the slots.
FullTensor symmetrize(const FullTensor& t);

/// Expands sum_l c_l s_{l,m-l} into the full tensor product.
FullTensor to_full(const SymTensor& t);

/// Reads the s-coefficients of a symmetric full tensor. The input is
/// symmetrized first, so non-symmetric input is projected.
SymTensor from_full(const FullTensor& t);

/// T(s_{p,q}) = pq/((p+q)(p+q-1)) s_{p-1,q-1} for p,q >= 1, zero otherwise;
/// T is the zero map on degrees 0 and 1 (result of degree 0).
SymTensor trace(const SymTensor& t);

/// Matrix of the trace from degree m to degree m-2 in the s-bases
/// ((m-1) x (m+1)); requires m >= 2.
Eigen::MatrixXd trace_matrix(unsigned m);

struct KernelReport {
  unsigned dimension = 0;
  /// Kernel equals span{s_{m,0}, s_{0,m}}.
  bool extreme_span = false;
};

/// Kernel of the trace on degree m by a rank computation.
KernelReport trace_kernel(unsigned m);

/// Unit section of the weight-n line injected into degree m:
/// s_{(m+n)/2, (m-n)/2}. Throws InputError unless |n| <= m and m = n mod 2.
SymTensor inject(int n, unsigned m);

/// SO(2) weight of s_{l,m-l}: 2l - m.
inline int weight_of(unsigned l, unsigned m) { return 2 * static_cast<int>(l) - static_cast<int>(m); }

/// Component of each weight 2l - m (one entry per l, zero components kept).
std::map<int, SymTensor> weight_decompose(const SymTensor& t);

/// Multiplies the weight-w component by exp(-i w theta).
SymTensor so2_action(double theta, const SymTensor& t);

}  // namespace prres::tensor
