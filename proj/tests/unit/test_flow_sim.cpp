#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "prres/errors.hpp"
#include "prres/flow_sim.hpp"

using prres::InputError;
namespace lie = prres::lie;
using namespace prres::flow;
using nlohmann::json;

namespace {

const LatticeData& lattice() {
  static const LatticeData L = load_lattice(std::string(PRRES_DATA_DIR) + "/lattices/coxeter535.json");
  return L;
}

GroupMatrix random_group_element(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  return random_rotation(rng) * lie::exp_tX(u(rng)) * random_rotation(rng) * lie::exp_thetaR(u(rng));
}

double max_diff(const GroupMatrix& a, const GroupMatrix& b) { return (a - b).cwiseAbs().maxCoeff(); }

}  // namespace

TEST(Flow, ZeroTimeAndGroupLaw) {
  std::mt19937_64 rng(1);
  FrameState s{random_group_element(rng), {}};
  EXPECT_EQ(flow(s, 0.0).g, s.g);
  EXPECT_LT(max_diff(flow(flow(s, 0.7), 1.9).g, flow(s, 2.6).g), 1e-9);
  EXPECT_LT(max_diff(flow(flow(s, -3.0), 3.0).g, s.g), 1e-9);
}

TEST(Flow, IdentityFrameAtTimeOne) {
  const FrameState s = flow(FrameState{}, 1.0);
  EXPECT_NEAR(s.g(0, 0), 1.5430806348, 1e-10);
  const Eigen::Matrix4d x = lie::LieMatrix::basis(lie::BasisLabel::X).to_real();
  EXPECT_LT(max_diff(s.g, oracle::exp_series(x, 1.0)), 1e-14);
}

TEST(Flow, RenormalizationRestoresForm) {
  std::mt19937_64 rng(2);
  GroupMatrix g = random_group_element(rng);
  g(1, 2) += 1e-7;
  g(3, 0) -= 2e-7;
  EXPECT_GT(lie::form_defect(g), 1e-8);
  EXPECT_LT(lie::form_defect(renormalize(g)), 1e-12);
}

TEST(Flow, LongOrbitKeepsFormWithReduction) {
  std::mt19937_64 rng(3);
  FrameState s{random_rotation(rng), {}};
  double worst = 0.0;
  for (int k = 0; k < 500; ++k) {
    s = reduce(flow(s, 0.1), lattice());
    s.word.clear();
    worst = std::max(worst, lie::form_defect(s.g));
  }
  EXPECT_LT(worst, 1e-9);
}

TEST(Lattice, ShippedFileIsValidAndSymmetric) {
  const auto& L = lattice();
  EXPECT_EQ(L.label, "coxeter-535-rotation");
  ASSERT_TRUE(L.diameter_hint.has_value());
  LatticeData copy = L;
  EXPECT_EQ(normalize_lattice(copy), 0u);
  for (const auto& g : L.generators) EXPECT_TRUE(lie::is_lorentz(g));
}

TEST(Lattice, InversesAreAdded) {
  const GroupMatrix g = lie::exp_tX(1.2) * lie::exp_thetaR(0.4);
  json j = {{"label", "one"}, {"generators", json::array()}};
  json row = json::array();
  for (int k = 0; k < 16; ++k) row.push_back(g(k / 4, k % 4));
  j["generators"].push_back(row);
  const LatticeData L = lattice_from_json(j);
  ASSERT_EQ(L.generators.size(), 2u);
  EXPECT_LT(max_diff(L.generators[1] * g, GroupMatrix::Identity()), 1e-12);
}

TEST(Lattice, RejectsBadGenerators) {
  json j = {{"generators", json::array({json::array({2, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1})})}};
  EXPECT_THROW(lattice_from_json(j), InputError);
  json flip = {{"generators", json::array({json::array({1, 0, 0, 0, 0, -1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1})})}};
  EXPECT_THROW(lattice_from_json(flip), InputError);
  EXPECT_THROW(lattice_from_json(json{{"generators", json::array({json::array({1, 2})})}}), InputError);
  EXPECT_THROW(lattice_from_json(json::array()), InputError);
}

TEST(Reduce, BasepointAndSingleGenerator) {
  const auto& L = lattice();
  EXPECT_EQ(reduce(FrameState{}, L).g, GroupMatrix::Identity());
  for (const auto& gamma : L.generators) {
    ReduceStats st;
    const FrameState r = reduce(FrameState{gamma, {}}, L, &st);
    EXPECT_LT(max_diff(r.g, GroupMatrix::Identity()), 1e-9);
    EXPECT_EQ(st.steps, 1);
    EXPECT_EQ(r.word.size(), 1u);
  }
}

TEST(Reduce, MonotoneIdempotentAndBounded) {
  const auto& L = lattice();
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 200; ++trial) {
    FrameState s{random_group_element(rng), {}};
    const FrameState r = reduce(s, L);
    EXPECT_LE(height(r.g), height(s.g) + 1e-12);
    ReduceStats again;
    const FrameState rr = reduce(r, L, &again);
    EXPECT_EQ(again.steps, 0);
    EXPECT_EQ(rr.g, r.g);
    EXPECT_LE(height(r.g), std::cosh(*L.diameter_hint));
  }
  ReduceStats st;
  const FrameState far = reduce(flow(FrameState{}, 10.0), L, &st);
  EXPECT_FALSE(st.hit_cap);
  EXPECT_LE(height(far.g), std::cosh(*L.diameter_hint));
}

TEST(Reduce, CommutesWithRightRotation) {
  const auto& L = lattice();
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const GroupMatrix g = random_group_element(rng) * lie::exp_tX(2.0);
    const GroupMatrix k = random_rotation(rng);
    EXPECT_LT(max_diff(reduce(FrameState{g * k, {}}, L).g, reduce(FrameState{g, {}}, L).g * k), 1e-9);
  }
}

TEST(Reduce, IterationCapIsReported) {
  ReduceStats st;
  reduce(flow(FrameState{}, 8.0), lattice(), &st, 1);
  EXPECT_TRUE(st.hit_cap);
}

TEST(Observable, ParseAndPrint) {
  for (const char* text : {"const=2.5", "coef(2,3)", "poly(2*g(2,2)^2 - 0.5*g(2,3)*g(3,2))", "fourier(coef(2,2),1,8)",
                           "raw:coef(0,0)", "fourier(fourier(coef(2,2),-1,8),1,12)"}) {
    const Observable o = Observable::parse(text);
    EXPECT_EQ(Observable::parse(o.str()).str(), o.str()) << text;
  }
  EXPECT_EQ(Observable::parse("height").str(), "coef(0,0)");
  EXPECT_EQ(Observable::parse("const").str(), "const=1");
  EXPECT_EQ(Observable::parse("poly(g22^2)").str(), "poly(1*g(2,2)^2)");
  EXPECT_FALSE(Observable::parse("raw:height").mean_subtract());
}

TEST(Observable, ParseErrors) {
  EXPECT_THROW(Observable::parse("coef(4,0)"), InputError);
  EXPECT_THROW(Observable::parse("fourier(height,2,5)"), InputError);
  EXPECT_THROW(Observable::parse("poly()"), InputError);
  EXPECT_THROW(Observable::parse("sin(x)"), InputError);
  try {
    Observable::parse("coef(1,2) extra");
    FAIL();
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("position 10"), std::string::npos) << e.what();
  }
}

TEST(Observable, Evaluation) {
  std::mt19937_64 rng(6);
  const GroupMatrix g = random_group_element(rng);
  EXPECT_EQ(Observable::constant(3.0)(g), std::complex<double>(3.0));
  EXPECT_EQ(Observable::matrix_coefficient(1, 3)(g), std::complex<double>(g(1, 3)));
  const auto p = Observable::parse("poly(2*g22^2 - g01)");
  EXPECT_NEAR(p(g).real(), 2 * g(2, 2) * g(2, 2) - g(0, 1), 1e-14);
}

TEST(Fourier, ConstantObservable) {
  std::mt19937_64 rng(7);
  const GroupMatrix g = random_group_element(rng);
  EXPECT_LT(std::abs(fourier_project(Observable::constant(2.0), 1, 8)(g)), 1e-15);
  EXPECT_NEAR(fourier_project(Observable::constant(2.0), 0, 4)(g).real(), 2.0, 1e-15);
  EXPECT_THROW(fourier_project(Observable::constant(1.0), 2, 11), InputError);
}

TEST(Fourier, Equivariance) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> angle(-3.0, 3.0);
  const auto base = Observable::parse("poly(g22^2 + 3*g23*g12 - g02)");
  for (int n = -2; n <= 2; ++n) {
    const Observable f = fourier_project(base, n, 16);
    for (int trial = 0; trial < 20; ++trial) {
      const GroupMatrix g = random_group_element(rng);
      const double th = angle(rng);
      const auto lhs = f(g * lie::exp_thetaR(th));
      const auto rhs = std::polar(1.0, n * th) * f(g);
      EXPECT_LT(std::abs(lhs - rhs), 1e-8);
    }
  }
}

TEST(Fourier, Orthogonality) {
  std::mt19937_64 rng(9);
  const auto base = Observable::matrix_coefficient(2, 2);
  for (int n = -3; n <= 3; ++n) {
    for (int m = -3; m <= 3; ++m) {
      if (m == n) continue;
      const Observable twice = fourier_project(fourier_project(base, n, 24), m, 24);
      for (int trial = 0; trial < 5; ++trial) EXPECT_LT(std::abs(twice(random_group_element(rng))), 1e-8);
    }
  }
}

// Right rotation by theta R mixes g22 with g23 only, so g22 carries weights +-1.
TEST(Fourier, MatrixCoefficientWeights) {
  std::mt19937_64 rng(10);
  const GroupMatrix g = random_group_element(rng);
  const auto g22 = Observable::matrix_coefficient(2, 2);
  EXPECT_GT(std::abs(fourier_project(g22, 1, 16)(g)), 1e-3);
  EXPECT_GT(std::abs(fourier_project(g22, -1, 16)(g)), 1e-3);
  for (int n : {-3, -2, 0, 2, 3}) EXPECT_LT(std::abs(fourier_project(g22, n, 16)(g)), 1e-12) << n;
  const auto sq = Observable::parse("poly(g22^2)");
  EXPECT_GT(std::abs(fourier_project(sq, 2, 16)(g)), 1e-3);
  EXPECT_GT(std::abs(fourier_project(sq, -2, 16)(g)), 1e-3);
  EXPECT_LT(std::abs(fourier_project(sq, 3, 16)(g)), 1e-12);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int n : {-4, -3, 3, 4})
        EXPECT_LT(std::abs(fourier_project(Observable::matrix_coefficient(i, j), n, 20)(g)), 1e-12);
}

TEST(Haar, DeterministicAndLorentz) {
  const auto a = haar_sample(lattice(), 2.0, 42);
  const auto b = haar_sample(lattice(), 2.0, 42);
  EXPECT_EQ(a.g, b.g);
  EXPECT_LT(lie::form_defect(a.g), 1e-9);
  EXPECT_NE(haar_sample(lattice(), 2.0, 43).g, a.g);
}

TEST(Haar, WeightObservableHasZeroMean) {
  std::seed_seq seq{11};
  std::mt19937_64 rng(seq);
  const Observable f = fourier_project(Observable::matrix_coefficient(2, 2), 1, 8);
  const int n = 10000;
  std::complex<double> sum = 0.0;
  double sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const auto v = f(haar_sample(lattice(), rng).g);
    sum += v;
    sq += std::norm(v);
  }
  const std::complex<double> mean = sum / double(n);
  const double se = std::sqrt((sq / n - std::norm(mean)) / n);
  EXPECT_LT(std::abs(mean.real()), 4 * se);
  EXPECT_LT(std::abs(mean.imag()), 4 * se);
}

TEST(Correlate, ConstantIsZero) {
  CorrelateOptions o;
  o.samples = 200;
  o.t_max = 2.0;
  o.dt = 0.5;
  o.seed = 7;
  o.workers = 2;
  const auto c = correlate(Observable::constant(0.1), Observable::constant(0.1), lattice(), o);
  ASSERT_EQ(c.times.size(), 5u);
  for (std::size_t k = 0; k < c.times.size(); ++k) {
    EXPECT_EQ(c.values[k], 0.0);
    EXPECT_EQ(c.stderrs[k], 0.0);
  }
  EXPECT_FALSE(c.flagged);
}

TEST(Correlate, VarianceAtTimeZeroAndWorkerIndependence) {
  CorrelateOptions o;
  o.samples = 300;
  o.t_max = 1.0;
  o.dt = 0.25;
  o.seed = 3;
  o.chunk_size = 16;
  o.workers = 1;
  const auto f = Observable::parse("height");
  const auto one = correlate(f, f, lattice(), o);
  o.workers = 4;
  const auto four = correlate(f, f, lattice(), o);
  EXPECT_GT(one.values[0], 0.0);
  EXPECT_EQ(one.values, four.values);
  EXPECT_EQ(one.stderrs, four.stderrs);
  one.check_invariants();
}

TEST(Correlate, StandardErrorScalesWithSamples) {
  CorrelateOptions o;
  o.t_max = 0.0;
  o.dt = 1.0;
  o.seed = 21;
  o.workers = 0;
  const auto f = Observable::parse("height");
  o.samples = 2000;
  const double se1 = correlate(f, f, lattice(), o).stderrs[0];
  o.samples = 4000;
  const double se2 = correlate(f, f, lattice(), o).stderrs[0];
  EXPECT_NEAR(se2 / se1, 1.0 / std::sqrt(2.0), 0.2 / std::sqrt(2.0));
}

TEST(Correlate, InputValidation) {
  CorrelateOptions o;
  o.dt = 0.0;
  EXPECT_THROW(correlate(Observable::constant(1), Observable::constant(1), lattice(), o), InputError);
  o.dt = 1.0;
  o.samples = 1;
  EXPECT_THROW(correlate(Observable::constant(1), Observable::constant(1), lattice(), o), InputError);
}

TEST(Correlate, FlagsReductionFailures) {
  CorrelateOptions o;
  o.samples = 50;
  o.t_max = 1.0;
  o.dt = 1.0;
  o.height_bound = 1.0;  // nothing but the basepoint fits
  const auto c = correlate(Observable::constant(1), Observable::constant(1), lattice(), o);
  EXPECT_TRUE(c.flagged);
  EXPECT_FALSE(c.diagnostics.empty());
}

namespace {
CorrelationSeries synthetic(double rate, double noise, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> eps(0.0, noise);
  CorrelationSeries c;
  for (int k = 0; k <= 80; ++k) {
    const double t = 0.25 * k;
    c.times.push_back(t);
    c.values.push_back(std::exp(rate * t) + (noise > 0 ? eps(rng) : 0.0));
    c.stderrs.push_back(noise);
  }
  return c;
}
}  // namespace

TEST(Fit, ExactExponential) {
  const auto fit = fit_decay(synthetic(-0.5, 0.0, 0), 1.0);
  EXPECT_NEAR(fit.rate, -0.5, 1e-6);
  EXPECT_NEAR(fit.r_squared, 1.0, 1e-9);
  EXPECT_EQ(fit.points, 77u);
}

TEST(Fit, NoisyExponential) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto fit = fit_decay(synthetic(-0.5, 1e-3, seed), 0.0);
    EXPECT_NEAR(fit.rate, -0.5, 0.05) << seed;
    EXPECT_GT(fit.rate_stderr, 0.0);
  }
}

TEST(Fit, InsufficientPoints) {
  CorrelationSeries zero;
  for (int k = 0; k < 10; ++k) {
    zero.times.push_back(k);
    zero.values.push_back(0.0);
    zero.stderrs.push_back(0.0);
  }
  EXPECT_THROW(fit_decay(zero, 0.0), InputError);
  EXPECT_THROW(fit_decay(synthetic(-0.5, 0.0, 0), 19.5), InputError);
}

TEST(Series, CsvAndJsonRoundTrip) {
  CorrelationSeries c = synthetic(-0.3, 1e-2, 4);
  for (auto& s : c.stderrs) s = std::abs(s);
  const auto from_csv = series_from_text(series_to_csv(c));
  EXPECT_EQ(from_csv.times, c.times);
  EXPECT_EQ(from_csv.values, c.values);
  EXPECT_EQ(from_csv.stderrs, c.stderrs);
  c.values_imag.assign(c.times.size(), 0.0);
  const auto from_json = series_from_text(series_to_json(c).dump());
  EXPECT_EQ(from_json.values, c.values);
  EXPECT_THROW(series_from_text("t,value,stderr\n1,2,3\n0,1,1\n"), InputError);
  EXPECT_THROW(series_from_text("0,1,-1\n"), InputError);
  EXPECT_THROW(series_from_text("0,abc\n"), InputError);
}
