#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "prres/errors.hpp"
#include "prres/rep_tensor.hpp"

using namespace prres;
using namespace prres::tensor;

TEST(RepTensor, ClosedFormTraceCoefficients) {
  EXPECT_NEAR(trace(SymTensor::basis(1, 2))[0].real(), 0.5, 1e-15);
  EXPECT_NEAR(trace(SymTensor::basis(2, 4))[1].real(), 4.0 / 12.0, 1e-15);
  EXPECT_EQ(trace(SymTensor::basis(3, 3)).max_abs(), 0.0);
  EXPECT_EQ(trace(SymTensor::basis(0, 5)).max_abs(), 0.0);
  EXPECT_EQ(trace(SymTensor::basis(1, 1)).degree(), 0u);
}

// The contraction oracle with an orthonormal v+- gives twice the closed form.
TEST(RepTensor, ContractionOracleIsTwiceClosedForm) {
  for (unsigned m = 2; m <= 8; ++m) {
    for (unsigned p = 0; p <= m; ++p) {
      const auto ref = oracle::brute_force_trace(p, m - p);
      const auto got = trace(SymTensor::basis(p, m));
      for (unsigned l = 0; l + 2 <= m; ++l) EXPECT_NEAR(std::abs(ref[l] - 2.0 * got[l]), 0.0, 1e-12) << p << "," << m;
    }
  }
}

TEST(RepTensor, FullTensorRoundTrip) {
  SymTensor t(4, {1.0, {0.0, 2.0}, -3.0, 0.5, {1.0, 1.0}});
  const FullTensor f = to_full(t);
  EXPECT_LT((symmetrize(f) - f).max_abs(), 1e-14);
  EXPECT_LT((from_full(f) - t).max_abs(), 1e-14);
  const FullTensor pure = FullTensor::pure({true, false, false});
  EXPECT_LT((from_full(pure) - (1.0 / 1.0) * SymTensor::basis(1, 3)).max_abs(), 1e-14);
}

TEST(RepTensor, TraceFreeKernelIsExtremeSpan) {
  for (unsigned m = 0; m <= 8; ++m) {
    const auto r = trace_kernel(m);
    EXPECT_TRUE(r.extreme_span) << m;
    EXPECT_EQ(r.dimension, m == 0 ? 1u : 2u);
  }
}

TEST(RepTensor, InjectionsAndWeights) {
  EXPECT_EQ(inject(2, 4)[3], Complex(1.0));
  EXPECT_EQ(inject(-4, 4)[0], Complex(1.0));
  EXPECT_THROW(inject(1, 4), InputError);
  EXPECT_THROW(inject(6, 4), InputError);
  EXPECT_EQ(weight_of(3, 4), 2);
  const auto parts = weight_decompose(SymTensor(2, {1.0, 2.0, 3.0}));
  ASSERT_EQ(parts.size(), 3u);
  EXPECT_EQ(parts.at(0)[1], Complex(2.0));
}

TEST(RepTensor, So2ActionMultipliesByCharacter) {
  const double th = 0.37;
  for (unsigned l = 0; l <= 3; ++l) {
    const SymTensor out = so2_action(th, SymTensor::basis(l, 3));
    const Complex expect = std::polar(1.0, -weight_of(l, 3) * th);
    EXPECT_LT(std::abs(out[l] - expect), 1e-15);
  }
}
