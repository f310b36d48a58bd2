#include <gtest/gtest.h>

#include <random>
#include <set>
#include <stdexcept>

#include "prres/exact.hpp"
#include "prres/surd.hpp"

using namespace prres;

TEST(Rational, ParsesIntegersFractionsAndDecimals) {
  EXPECT_EQ(parse_rational("7"), Rational(7));
  EXPECT_EQ(parse_rational("-3/6"), make_rational(-1, 2));
  EXPECT_EQ(parse_rational("0.75"), make_rational(3, 4));
  EXPECT_EQ(parse_rational("-1.5e-2"), make_rational(-3, 200));
  EXPECT_EQ(parse_rational("2E1"), Rational(20));
}

TEST(Rational, RejectsGarbage) {
  EXPECT_THROW(parse_rational(""), std::invalid_argument);
  EXPECT_THROW(parse_rational("1/0"), std::invalid_argument);
  EXPECT_THROW(parse_rational("abc"), std::invalid_argument);
  EXPECT_THROW(parse_rational("1.2.3"), std::invalid_argument);
}

TEST(Rational, FromDoubleUsesShortestDecimal) {
  EXPECT_EQ(rational_from_double(0.96), make_rational(24, 25));
  EXPECT_EQ(rational_from_double(0.1), make_rational(1, 10));
  EXPECT_EQ(rational_from_double(-4.0), Rational(-4));
}

TEST(GaussRational, FieldArithmetic) {
  const GaussRational a(make_rational(1, 2), Rational(2));
  const GaussRational b(Rational(-3), make_rational(1, 3));
  EXPECT_EQ((a * b) / b, a);
  EXPECT_EQ(a - a, GaussRational(0));
  EXPECT_EQ(GaussRational::i() * GaussRational::i(), GaussRational(-1));
  EXPECT_EQ(a * a.conj(), GaussRational(a.norm2()));
  EXPECT_EQ(pow(GaussRational(1, 1), 4), GaussRational(-4));
}

TEST(GaussRational, Printing) {
  EXPECT_EQ(GaussRational(make_rational(3, 2)).str(), "3/2");
  EXPECT_EQ(GaussRational::i().str(), "i");
  EXPECT_EQ((-GaussRational::i()).str(), "-i");
  EXPECT_EQ(GaussRational(Rational(0), make_rational(1, 2)).str(), "1/2 i");
  EXPECT_EQ(GaussRational(Rational(1), Rational(2)).str(), "(1+2i)");
}

TEST(Surd, FoldsRationalRoots) {
  const Surd a(Rational(-1), 1, make_rational(1, 4));
  EXPECT_TRUE(a.is_rational());
  EXPECT_EQ(a, Surd(make_rational(-1, 2)));
  const Surd b(Rational(-1), -1, Rational(0));
  EXPECT_EQ(b, Surd(Rational(-1)));
}

TEST(Surd, IrrationalAndComplexValues) {
  const Surd a(Rational(-1), 1, make_rational(1, 2));
  EXPECT_FALSE(a.is_rational());
  EXPECT_TRUE(a.is_real());
  EXPECT_NEAR(a.to_complex().real(), -1 + std::sqrt(0.5), 1e-15);
  const Surd c(Rational(-2), -1, Rational(-3));
  EXPECT_FALSE(c.is_real());
  EXPECT_NEAR(c.to_complex().imag(), -std::sqrt(3.0), 1e-15);
  EXPECT_EQ(c.str(), "-2 - i sqrt(3)");
}

TEST(Surd, RealPartComparison) {
  const Surd a(Rational(-1), 1, Rational(2));   // 0.414
  const Surd b(Rational(0), 1, make_rational(1, 5));  // 0.447
  EXPECT_LT(Surd::compare_real(a, b), 0);
  EXPECT_GT(Surd::compare_real(b, a), 0);
  EXPECT_EQ(Surd::compare_real(Surd(Rational(-1), 1, Rational(-5)), Surd(Rational(-1))), 0);
  EXPECT_EQ(Surd::compare_real(a, a), 0);
}

TEST(Surd, RealPartComparisonMatchesHighPrecision) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<long> num(-12, 12);
  std::uniform_int_distribution<long> den(1, 4);
  std::uniform_int_distribution<int> sign(-1, 1);
  auto draw = [&] { return Surd(make_rational(num(rng), den(rng)), sign(rng), make_rational(num(rng), den(rng))); };
  for (int trial = 0; trial < 20000; ++trial) {
    const Surd a = draw();
    const Surd b = draw();
    const mpf_class diff = a.real_approx(2048) - b.real_approx(2048);
    const int want = abs(diff) < mpf_class(1e-300, 2048) ? 0 : sgn(diff);
    ASSERT_EQ(Surd::compare_real(a, b), want) << a.str() << " vs " << b.str();
  }
}

TEST(Surd, SetOrderDistinguishesValues) {
  std::set<Surd> s{Surd(Rational(1)), Surd(Rational(0), 1, Rational(1)), Surd(Rational(0), 1, Rational(2))};
  EXPECT_EQ(s.size(), 2u);
}
