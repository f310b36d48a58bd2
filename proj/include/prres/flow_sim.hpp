#pragma once

// Frame flow on Gamma\PSO(1,3): flow by right multiplication, greedy height
// reduction against lattice generators, SO(2) Fourier observables and Monte
// Carlo correlation series.

#include <array>
#include <complex>
#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "prres/lie_core.hpp"

namespace prres::flow {

using lie::GroupMatrix;

struct FrameState {
  GroupMatrix g = GroupMatrix::Identity();
  /// Generator indices applied on the left by reduce, in order.
  std::vector<int> word;
};

/// Drift above which flow() re-orthogonalizes.
inline constexpr double kRenormThreshold = 1e-10;

/// One Newton step towards g^T J g = J: g <- g (I - J E / 2), E = g^T J g - J.
GroupMatrix renormalize(const GroupMatrix& g);

/// g <- g exp(tX), renormalized when the form drift exceeds kRenormThreshold.
FrameState flow(const FrameState& s, double t);

/// (g o)_0 with o = (1,0,0,0), i.e. cosh of the distance from g o to o.
inline double height(const GroupMatrix& g) { return g(0, 0); }

struct LatticeData {
  std::string label;
  std::vector<GroupMatrix> generators;
  std::optional<double> diameter_hint;
};

/// {"label", "generators": [[16 doubles row-major] or [[4],[4],[4],[4]], ...],
///  "diameter_hint"}. Runs normalize_lattice and validate_lattice.
LatticeData lattice_from_json(const nlohmann::json& j);
LatticeData load_lattice(const std::string& path);
nlohmann::json lattice_to_json(const LatticeData& L);

/// Appends the inverse of every generator whose inverse is not already in
/// the list (matched to 1e-9). Returns the number appended.
std::size_t normalize_lattice(LatticeData& L);
/// Throws InputError naming the first generator that is not in SO+(1,3) to 1e-9.
void validate_lattice(const LatticeData& L);

struct ReduceStats {
  int steps = 0;
  bool hit_cap = false;
  double final_height = 1.0;
};

inline constexpr int kDefaultReduceCap = 10000;

/// Greedy descent: repeatedly left-multiplies by the generator giving the
/// lowest height while that lowers it by more than 1e-12.
FrameState reduce(const FrameState& s, const LatticeData& L, ReduceStats* stats = nullptr,
                  int max_steps = kDefaultReduceCap);

/// Functions on G evaluated at a representative matrix.
class Observable {
 public:
  enum class Kind { Constant, MatrixCoefficient, FourierProjected, CustomTable };

  /// c * prod g(i,j)^p
  struct Monomial {
    double coeff = 1.0;
    std::vector<std::array<int, 3>> factors;  // (i, j, power)
  };

  static Observable constant(double c);
  static Observable matrix_coefficient(int i, int j);
  static Observable custom_table(std::vector<Monomial> terms);

  /// Parses "const", "const=2.5", "coef(i,j)", "height", "poly(...)" and
  /// "fourier(<obs>, n[, P])". Throws InputError with the character position.
  static Observable parse(const std::string& text);

  Kind kind() const { return kind_; }
  bool mean_subtract() const { return mean_subtract_; }
  void set_mean_subtract(bool on) { mean_subtract_ = on; }
  int weight() const { return weight_; }
  int quadrature_points() const { return points_; }
  const Observable* inner() const { return inner_.get(); }

  std::complex<double> operator()(const GroupMatrix& g) const;

  /// Canonical spec string; parse(str()) reproduces the observable.
  std::string str() const;

 private:
  friend Observable fourier_project(const Observable& f, int n, int quadrature_points);

  Kind kind_ = Kind::Constant;
  bool mean_subtract_ = true;
  double value_ = 0.0;
  int i_ = 0;
  int j_ = 0;
  std::vector<Monomial> terms_;
  std::shared_ptr<const Observable> inner_;
  int weight_ = 0;
  int points_ = 0;
};

/// g -> (1/P) sum_p e^{-i n theta_p} f(g exp(theta_p R)), theta_p = 2 pi p / P,
/// so that the result satisfies F(g exp(theta R)) = e^{i n theta} F(g).
/// Throws InputError unless P >= 4|n| + 4.
Observable fourier_project(const Observable& f, int n, int quadrature_points);

/// Uniform SO(3) element acting on coordinates 1..3.
GroupMatrix random_rotation(std::mt19937_64& rng);

struct SamplerOptions {
  double burn_in = 2.0;  // mean of the exponential flow time
  int word_length = 4;  // left factor only; invisible on the quotient
  int reduce_cap = kDefaultReduceCap;
};

/// Approximate Haar sample: random word * uniform K element * exp(tX), t ~ Exp
/// with mean burn_in, then reduced. Right SO(2) invariance is exact.
FrameState haar_sample(const LatticeData& L, std::mt19937_64& rng, const SamplerOptions& opts = {},
                       ReduceStats* stats = nullptr);
FrameState haar_sample(const LatticeData& L, double burn_in, std::uint64_t seed);

struct CorrelateOptions {
  double t_max = 5.0;
  double dt = 0.5;
  std::size_t samples = 1000;
  std::uint64_t seed = 0;
  /// 0 picks PRRES_WORKERS or the hardware concurrency.
  unsigned workers = 0;
  SamplerOptions sampler;
  /// Samples per random stream; fixes the stream layout independently of workers.
  std::size_t chunk_size = 64;
  /// Reduced heights above this count as failures. Defaults to cosh(diameter_hint).
  std::optional<double> height_bound;
  /// Series is flagged when the failure fraction exceeds this.
  double failure_threshold = 1e-3;
};

struct CorrelationSeries {
  std::vector<double> times;
  std::vector<double> values;
  std::vector<double> values_imag;
  std::vector<double> stderrs;
  std::size_t samples = 0;
  bool flagged = false;
  std::vector<std::string> diagnostics;
  nlohmann::json metadata = nlohmann::json::object();

  /// Times strictly increasing, errors non-negative, equal lengths.
  void check_invariants() const;
};

/// Worker count from PRRES_WORKERS, else hardware concurrency (at least 1).
unsigned default_workers();

/// Estimates <f o phi_{-t}, f'> - <f><f'> (means subtracted per the
/// observables' flags) at t = 0, dt, ..., t_max. Output is deterministic in
/// the seed and independent of the worker count.
CorrelationSeries correlate(const Observable& f, const Observable& fprime, const LatticeData& L,
                            const CorrelateOptions& opts);

struct DecayFit {
  double rate = 0.0;
  double r_squared = 0.0;
  double rate_stderr = 0.0;
  std::size_t points = 0;
};

/// Weighted least squares of log|value| against t over points with t >= t_min
/// and |value| > 3 stderr. Weights (value/stderr)^2, uniform if any stderr is 0.
/// Throws InputError with fewer than 5 qualifying points.
DecayFit fit_decay(const CorrelationSeries& c, double t_min);

std::string series_to_csv(const CorrelationSeries& c);
nlohmann::json series_to_json(const CorrelationSeries& c);
/// Reads either format (JSON when the first non-space character is '{').
CorrelationSeries series_from_text(const std::string& text);
CorrelationSeries load_series(const std::string& path);

nlohmann::json fit_to_json(const DecayFit& fit);

}  // namespace prres::flow
