#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "fastgh/error.hpp"
#include "fastgh/specfun.hpp"
#include "oracle.hpp"

using namespace fastgh::specfun;

TEST(Airy, ValuesAtZero) {
  const double ai0 = 1.0 / (std::pow(3.0, 2.0 / 3.0) * std::tgamma(2.0 / 3.0));
  const double aip0 = -1.0 / (std::pow(3.0, 1.0 / 3.0) * std::tgamma(1.0 / 3.0));
  EXPECT_NEAR(airy_ai(0.0), ai0, 1e-16);
  EXPECT_NEAR(airy_ai_prime(0.0), aip0, 1e-16);
  EXPECT_NEAR(ai0, 0.3550280538878172, 1e-16);
}

TEST(Airy, MatchesSeriesOracleOnMoveableGrid) {
  double worst = 0.0;
  for (double x = -10.0; x <= 10.0; x += 0.37) {
    const auto o = oracle::airy(x);
    const auto p = airy_ai_pair(x);
    const double sa = std::max(1e-300, std::abs(o.value));
    const double sd = std::max(1e-300, std::abs(o.derivative));
    // absolute near the oscillatory zeros, relative elsewhere
    worst = std::max(worst, std::abs(p.ai - o.value) / std::max(sa, 1e-3 * (x < 0 ? 1.0 : sa)));
    worst = std::max(worst, std::abs(p.aip - o.derivative) / std::max(sd, 1e-3 * (x < 0 ? 1.0 : sd)));
  }
  EXPECT_LT(worst, 1e-13);
}

TEST(Airy, SeamsAroundTen) {
  for (double x : {-10.0, 10.0}) {
    const double below = airy_ai(std::nextafter(x, 0.0));
    const double above = airy_ai(std::nextafter(x, x * 2));
    EXPECT_NEAR(below, above, 1e-14 * std::max(1.0, std::abs(below)) + 1e-300);
  }
  // oracle is still accurate slightly beyond the table range
  for (double x : {-11.5, 10.5}) {
    const auto o = oracle::airy(x);
    EXPECT_NEAR(airy_ai(x), o.value, 1e-13 * std::max(std::abs(o.value), x < 0 ? 0.1 : 0.0) + 1e-300);
  }
}

TEST(Airy, FirstZeroAndDerivative) {
  const double a1 = -2.3381074104597670;
  EXPECT_NEAR(airy_ai(a1), 0.0, 1e-13);
  EXPECT_NEAR(airy_ai_prime(a1), 0.7012108227206906, 1e-13);
}

TEST(Airy, DecreasingPositiveAxis) {
  double prev = airy_ai(0.0);
  for (double x = 0.25; x < 30.0; x += 0.25) {
    const double v = airy_ai(x);
    EXPECT_GT(v, 0.0);
    EXPECT_LT(v, prev);
    EXPECT_LT(airy_ai_prime(x), 0.0);
    prev = v;
  }
}

TEST(Airy, RejectsNonFinite) {
  EXPECT_THROW(airy_ai(std::nan("")), fastgh::DomainError);
  EXPECT_THROW(airy_ai_prime(INFINITY), fastgh::DomainError);
}

TEST(Airy, OscillatoryPairMatchesPlain) {
  for (double y : {10.5, 15.0, 40.0, 300.0}) {
    const auto a = airy_ai_pair(-y);
    const double xi = 2.0 / 3.0 * std::pow(y, 1.5);
    const auto b = airy_ai_pair_oscillatory(y, xi);
    // both carry the rounding of the phase, about eps * xi
    EXPECT_NEAR(a.ai, b.ai, 1e-14 + 4e-16 * xi);
    EXPECT_NEAR(a.aip, b.aip, 1e-13 * std::sqrt(y));
  }
}

TEST(AiryZero, TableMatchesBisectionOracle) {
  const auto& t = airy_zero_table();
  for (int m = 1; m <= 10; ++m) {
    EXPECT_NEAR(t[m - 1], oracle::airy_zero(m), 1e-13) << m;
    EXPECT_EQ(airy_zero(m), t[m - 1]);
  }
}

TEST(AiryZero, AsymptoticBranchBeyondTable) {
  const double s11 = 3.0 * std::numbers::pi * 43.0 / 8.0;
  const double t = std::pow(s11, 2.0 / 3.0);
  // leading terms of the expansion; the rest are below 1e-6 here
  EXPECT_NEAR(airy_zero(11), -t * (1.0 + 5.0 / 48.0 / (s11 * s11)), 1e-6);
  EXPECT_NEAR(airy_zero(11), oracle::airy_zero(11), 1e-12);
  EXPECT_NEAR(airy_zero_asymptotic(10), airy_zero_table()[9], 1e-11);
}

TEST(AiryZero, StrictlyDecreasing) {
  for (int m = 1; m <= 100; ++m) EXPECT_LT(airy_zero(m + 1), airy_zero(m));
  EXPECT_THROW(airy_zero(0), fastgh::DomainError);
}
