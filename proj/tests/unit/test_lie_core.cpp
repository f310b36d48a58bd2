#include <gtest/gtest.h>

#include <cmath>
#include <map>

#include "oracles.hpp"
#include "prres/lie_core.hpp"

using namespace prres;
using namespace prres::lie;

TEST(LieCore, BasisLiesInSo13) {
  for (auto l : {BasisLabel::X, BasisLabel::R, BasisLabel::U1Plus, BasisLabel::U2Plus, BasisLabel::U1Minus,
                 BasisLabel::U2Minus, BasisLabel::K1, BasisLabel::K2, BasisLabel::P1, BasisLabel::P2})
    EXPECT_TRUE(verify_so13(LieMatrix::basis(l))) << label_name(l);
}

TEST(LieCore, KAndPAreHalfSumsOfHorocyclicPairs) {
  const auto up = LieMatrix::basis(BasisLabel::U1Plus);
  const auto um = LieMatrix::basis(BasisLabel::U1Minus);
  const GaussRational half(make_rational(1, 2));
  EXPECT_EQ(LieMatrix::basis(BasisLabel::K1), half * (up - um));
  EXPECT_EQ(LieMatrix::basis(BasisLabel::P1), half * (up + um));
}

TEST(LieCore, AllRecordedIdentitiesHold) {
  const auto ids = commutation_identities();
  std::map<std::string, int> families;
  for (const auto& id : ids) {
    EXPECT_TRUE(id.holds()) << id.text;
    ++families[id.family];
  }
  EXPECT_EQ(ids.size(), 39u);
  EXPECT_EQ(families["XUR"], 15);
  EXPECT_EQ(families["XKP"], 8);
  EXPECT_EQ(families["eta-mu"], 16);
}

TEST(LieCore, LadderRelationsSpotChecks) {
  EXPECT_EQ(bracket(eta_plus(), mu_minus()), q_plus());
  EXPECT_EQ(bracket(eta_minus(), mu_plus()), q_minus());
  EXPECT_TRUE(bracket(eta_plus(), eta_minus()).is_zero());
  EXPECT_TRUE(bracket(mu_plus(), mu_minus()).is_zero());
  const auto x = LieMatrix::basis(BasisLabel::X);
  EXPECT_EQ(bracket(x, eta_plus()), -eta_plus());
  EXPECT_EQ(bracket(x, mu_plus()), mu_plus());
}

TEST(LieCore, ComplexCombinationRealizes) {
  ComplexCombination c;
  c.eta_plus = GaussRational(2);
  c.q_minus = GaussRational::i();
  EXPECT_EQ(c.realize(), GaussRational(2) * eta_plus() + GaussRational::i() * q_minus());
}

TEST(LieCore, ExpTxMatchesSeriesOracle) {
  const Eigen::Matrix4d x = LieMatrix::basis(BasisLabel::X).to_real();
  for (double t : {-3.0, -0.5, 0.0, 0.1, 1.0, 4.0}) {
    const Eigen::Matrix4d ref = oracle::exp_series(x, t);
    EXPECT_LT((exp_tX(t) - ref).cwiseAbs().maxCoeff(), 1e-12 * std::cosh(t)) << t;
  }
  EXPECT_NEAR(exp_tX(1.0)(0, 0), 1.5430806348, 1e-10);
}

TEST(LieCore, ExpThetaRMatchesSeriesOracle) {
  const Eigen::Matrix4d r = LieMatrix::basis(BasisLabel::R).to_real();
  for (double th : {-2.0, 0.3, 3.1}) EXPECT_LT((exp_thetaR(th) - oracle::exp_series(r, th)).cwiseAbs().maxCoeff(), 1e-13);
}

TEST(LieCore, AdFlowScalesHorocyclicDirections) {
  for (double t : {-5.0, -1.0, 0.1, 5.0}) {
    for (auto [l, s] : {std::pair{BasisLabel::U1Plus, 1.0}, std::pair{BasisLabel::U2Plus, 1.0},
                        std::pair{BasisLabel::U1Minus, -1.0}, std::pair{BasisLabel::U2Minus, -1.0}}) {
      const auto u = LieMatrix::basis(l);
      const Eigen::Matrix4cd diff = ad_flow(t, u) - std::exp(s * t) * u.to_complex();
      EXPECT_LT(diff.cwiseAbs().maxCoeff(), 1e-10 * std::exp(std::abs(t)));
    }
  }
}

TEST(LieCore, LorentzHelpers) {
  const GroupMatrix g = exp_tX(0.7) * exp_thetaR(1.1) * exp_tX(-0.2);
  EXPECT_TRUE(is_lorentz(g));
  EXPECT_LT((lorentz_inverse(g) * g - GroupMatrix::Identity()).cwiseAbs().maxCoeff(), 1e-14);
  EXPECT_FALSE(is_lorentz(-GroupMatrix::Identity()));
  GroupMatrix bad = g;
  bad(1, 2) += 1e-6;
  EXPECT_FALSE(is_lorentz(bad));
}

TEST(LieCore, ToRealRejectsComplexEntries) { EXPECT_THROW(eta_plus().to_real(), std::domain_error); }
