#include "prres/rep_tensor.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "prres/errors.hpp"

namespace prres::tensor {

namespace {

constexpr unsigned kMaxFullDegree = 20;

double binomial(unsigned n, unsigned k) {
  double b = 1.0;
  for (unsigned j = 1; j <= k; ++j) b = b * static_cast<double>(n - k + j) / static_cast<double>(j);
  return b;
}

}  // namespace

SymTensor::SymTensor(unsigned degree) : degree_(degree), coeffs_(degree + 1, Complex{}) {}

SymTensor::SymTensor(unsigned degree, std::vector<Complex> coefficients)
    : degree_(degree), coeffs_(std::move(coefficients)) {
  if (coeffs_.size() != degree_ + 1)
    throw std::invalid_argument("SymTensor: degree " + std::to_string(degree_) + " needs " +
                                std::to_string(degree_ + 1) + " coefficients");
}

SymTensor SymTensor::basis(unsigned l, unsigned m) {
  if (l > m) throw std::invalid_argument("SymTensor::basis: l > m");
  SymTensor t(m);
  t.coeffs_[l] = 1.0;
  return t;
}

SymTensor& SymTensor::operator+=(const SymTensor& o) {
  if (o.degree_ != degree_) throw std::invalid_argument("SymTensor: degree mismatch");
  for (unsigned l = 0; l <= degree_; ++l) coeffs_[l] += o.coeffs_[l];
  return *this;
}

SymTensor operator-(const SymTensor& a, const SymTensor& b) { return a + Complex(-1.0) * b; }

SymTensor operator*(Complex s, SymTensor a) {
  for (auto& c : a.coeffs_) c *= s;
  return a;
}

double SymTensor::max_abs() const {
  double m = 0.0;
  for (const auto& c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

FullTensor::FullTensor(unsigned degree) : degree_(degree) {
  if (degree > kMaxFullDegree) throw std::invalid_argument("FullTensor: degree too large");
  data_.assign(std::size_t{1} << degree, Complex{});
}

FullTensor::FullTensor(unsigned degree, std::vector<Complex> data) : degree_(degree), data_(std::move(data)) {
  if (degree > kMaxFullDegree || data_.size() != (std::size_t{1} << degree))
    throw std::invalid_argument("FullTensor: data size does not match degree");
}

FullTensor FullTensor::pure(const std::vector<bool>& plus) {
  FullTensor t(static_cast<unsigned>(plus.size()));
  std::size_t index = 0;
  for (std::size_t j = 0; j < plus.size(); ++j)
    if (!plus[j]) index |= std::size_t{1} << j;
  t.data_[index] = 1.0;
  return t;
}

FullTensor operator-(const FullTensor& a, const FullTensor& b) {
  if (a.degree_ != b.degree_) throw std::invalid_argument("FullTensor: degree mismatch");
  FullTensor d(a.degree_);
  for (std::size_t k = 0; k < a.data_.size(); ++k) d.data_[k] = a.data_[k] - b.data_[k];
  return d;
}

double FullTensor::max_abs() const {
  double m = 0.0;
  for (const auto& c : data_) m = std::max(m, std::abs(c));
  return m;
}

FullTensor symmetrize(const FullTensor& t) {
  const unsigned m = t.degree();
  std::vector<unsigned> perm(m);
  std::iota(perm.begin(), perm.end(), 0U);
  FullTensor out(m);
  double count = 0.0;
  do {
    for (std::size_t index = 0; index < t.size(); ++index) {
      if (t[index] == Complex{}) continue;
      // Slot j of the image carries the factor from slot perm[j] of the source.
      std::size_t image = 0;
      for (unsigned j = 0; j < m; ++j)
        if (index & (std::size_t{1} << perm[j])) image |= std::size_t{1} << j;
      out[image] += t[index];
    }
    count += 1.0;
  } while (std::next_permutation(perm.begin(), perm.end()));
  for (std::size_t index = 0; index < out.size(); ++index) out[index] /= count;
  return out;
}

FullTensor to_full(const SymTensor& t) {
  const unsigned m = t.degree();
  FullTensor out(m);
  for (std::size_t index = 0; index < out.size(); ++index) {
    const unsigned minus = static_cast<unsigned>(std::popcount(index));
    const unsigned l = m - minus;
    out[index] = t[l] / binomial(m, l);
  }
  return out;
}

SymTensor from_full(const FullTensor& t) {
  const FullTensor sym = symmetrize(t);
  const unsigned m = t.degree();
  SymTensor out(m);
  for (unsigned l = 0; l <= m; ++l) {
    // Representative index: v+ in the first l slots, v- in the rest.
    std::size_t index = 0;
    for (unsigned j = l; j < m; ++j) index |= std::size_t{1} << j;
    out[l] = sym[index] * binomial(m, l);
  }
  return out;
}

SymTensor trace(const SymTensor& t) {
  const unsigned m = t.degree();
  if (m < 2) return SymTensor(0);
  SymTensor out(m - 2);
  for (unsigned p = 1; p < m; ++p) {
    const unsigned q = m - p;
    const double factor = static_cast<double>(p * q) / static_cast<double>(m * (m - 1));
    out[p - 1] += factor * t[p];
  }
  return out;
}

Eigen::MatrixXd trace_matrix(unsigned m) {
  if (m < 2) throw std::invalid_argument("trace_matrix: degree must be at least 2");
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(m - 1, m + 1);
  for (unsigned l = 0; l <= m; ++l) {
    const SymTensor image = trace(SymTensor::basis(l, m));
    for (unsigned k = 0; k + 1 < m; ++k) a(k, l) = image[k].real();
  }
  return a;
}

KernelReport trace_kernel(unsigned m) {
  // Degrees 0 and 1: the trace is zero and the space is already spanned by the extreme vectors.
  if (m < 2) return {m + 1, true};
  const Eigen::MatrixXd a = trace_matrix(m);
  Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
  lu.setThreshold(1e-12);
  KernelReport r;
  r.dimension = static_cast<unsigned>(a.cols() - lu.rank());
  r.extreme_span = r.dimension == 2 && a.col(0).isZero(0.0) && a.col(m).isZero(0.0);
  return r;
}

SymTensor inject(int n, unsigned m) {
  const int mi = static_cast<int>(m);
  if (std::abs(n) > mi || ((mi + n) % 2) != 0)
    throw InputError("inject: weight " + std::to_string(n) + " does not occur in degree " + std::to_string(m));
  return SymTensor::basis(static_cast<unsigned>((mi + n) / 2), m);
}

std::map<int, SymTensor> weight_decompose(const SymTensor& t) {
  std::map<int, SymTensor> parts;
  const unsigned m = t.degree();
  for (unsigned l = 0; l <= m; ++l) {
    SymTensor part(m);
    part[l] = t[l];
    parts.emplace(weight_of(l, m), std::move(part));
  }
  return parts;
}

SymTensor so2_action(double theta, const SymTensor& t) {
  SymTensor out = t;
  const unsigned m = t.degree();
  for (unsigned l = 0; l <= m; ++l) {
    const double w = static_cast<double>(weight_of(l, m));
    out[l] *= std::polar(1.0, -w * theta);
  }
  return out;
}

}  // namespace prres::tensor
