#include <gtest/gtest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cfloat>
#include <cmath>
#include <numbers>

#include "fastgh/equilibrium.hpp"
#include "fastgh/error.hpp"
#include "fastgh/hermite_asy.hpp"

using namespace fastgh;

namespace {
constexpr double kPi = std::numbers::pi;

double integrate_density(const EquilibriumMeasure& mu, double lo, double hi) {
  using boost::math::quadrature::gauss_kronrod;
  return gauss_kronrod<double, 61>::integrate([&](double x) { return density(mu, x); }, lo, hi, 20,
                                              1e-15);
}
}  // namespace

TEST(Support, Semicircle) {
  for (std::size_t n : {1u, 10u, 1000u}) {
    const auto mu = solve_support(FreudPotential::monomial(1), n);
    EXPECT_NEAR(mu.b, std::sqrt(2.0), 1e-14);
    EXPECT_EQ(mu.a, -mu.b);
    EXPECT_NEAR(mu.beta[0], 1 / kPi, 1e-14);
  }
}

TEST(Support, QuarticClosedForm) {
  const auto mu = solve_support(FreudPotential::monomial(2), 50);
  const double b = std::pow(4.0 / 3.0, 0.25);
  EXPECT_NEAR(mu.b, b, 1e-13);
  EXPECT_EQ(mu.a, -mu.b);
  ASSERT_EQ(mu.beta.size(), 3u);
  EXPECT_NEAR(mu.beta[0], 3 * b * b / (2 * kPi), 1e-12);
  EXPECT_EQ(mu.beta[1], 0.0);
  EXPECT_NEAR(mu.beta[2], b * b / (2 * kPi), 1e-12);
}

TEST(Support, NonSymmetricResiduals) {
  const FreudPotential V({0.0, 0.0, 0.5, 1.0, 1.0});
  const auto mu = solve_support(V, 40);
  const auto r = support_residuals(V, 40, mu.a, mu.b);
  EXPECT_LT(std::abs(r.t0), 1e-13);
  EXPECT_LT(std::abs(r.mass), 1e-13);
  EXPECT_LT(mu.a, 0.0);
  EXPECT_GT(mu.b, 0.0);
  EXPECT_NEAR(cdf(mu, mu.b), 1.0, 1e-15);
  EXPECT_NEAR(integrate_density(mu, mu.a, mu.b), 1.0, 1e-12);
}

TEST(Support, TwoCutFieldIsRejected) {
  // x^4 + t x^2 splits into two cuts below t = -2
  const auto crit = solve_support(FreudPotential({0.0, 0.0, -2.0, 0.0, 1.0}), 1);
  EXPECT_NEAR(crit.b, std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(density(crit, 0.0), 0.0, 1e-12);
  EXPECT_THROW(solve_support(FreudPotential({0.0, 0.0, -4.0, 0.0, 1.0}), 1),
               UnsupportedRegimeError);
  // deep wells defeat the endpoint iteration before the sign check
  try {
    solve_support(FreudPotential({0.0, 0.0, -30.0, 0.0, 1.0}), 1);
    FAIL() << "expected SupportSolveError";
  } catch (const SupportSolveError& e) {
    EXPECT_TRUE(std::isfinite(e.last_b()));
  }
}

TEST(Density, Basics) {
  const auto mu = solve_support(FreudPotential::monomial(1), 1);
  EXPECT_EQ(density(mu, mu.a), 0.0);
  EXPECT_EQ(density(mu, mu.b), 0.0);
  EXPECT_NEAR(density(mu, 0.0), std::sqrt(2.0) / kPi, 1e-15);
  const auto m8 = solve_support(FreudPotential::monomial(4), 1);
  EXPECT_NEAR(integrate_density(m8, m8.a, m8.b), 1.0, 1e-12);
  for (double x = m8.a + 0.01; x < m8.b; x += 0.05) {
    EXPECT_NEAR(density(m8, x), density_from_t(m8, x), 1e-13);
  }
}

TEST(Cdf, ValuesAndInverse) {
  const auto mu = solve_support(FreudPotential::monomial(1), 1);
  EXPECT_EQ(cdf(mu, mu.a), 0.0);
  EXPECT_EQ(cdf(mu, mu.b), 1.0);
  EXPECT_NEAR(cdf(mu, 0.0), 0.5, 1e-15);
  EXPECT_NEAR(cdf(mu, 1.0), 0.5 + integrate_density(mu, 0.0, 1.0), 1e-12);
  EXPECT_NEAR(inverse_cdf(mu, 0.5), 0.0, 1e-15);
  const auto m4 = solve_support(FreudPotential::monomial(2), 1);
  for (int i = 1; i <= 20; ++i) {
    const double x = m4.a + (m4.b - m4.a) * i / 21.0;
    EXPECT_NEAR(inverse_cdf(m4, cdf(m4, x)), x, 1e-12);
  }
  double lo = m4.a, hi = m4.b;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (cdf(m4, mid) < 0.25) lo = mid; else hi = mid;
  }
  EXPECT_NEAR(inverse_cdf(m4, 0.25), 0.5 * (lo + hi), 1e-12);
  EXPECT_THROW(inverse_cdf(m4, 1.0), DomainError);
}

TEST(Guesses, SemicircleAgainstHermite) {
  const std::size_t n = 100;
  const auto mu = solve_support(FreudPotential::monomial(1), n);
  const auto g = initial_guesses_general(mu, n);
  const auto h = hermite_rule(n);
  const double s = std::sqrt(static_cast<double>(n));
  for (std::size_t k = 0; k < n; ++k) {
    if (k) EXPECT_GT(g[k], g[k - 1]);
    const double sp = k + 1 < n ? h.nodes[k + 1] - h.nodes[k] : h.nodes[k] - h.nodes[k - 1];
    const double sp2 = k > 0 ? h.nodes[k] - h.nodes[k - 1] : sp;
    EXPECT_LE(std::abs(g[k] * s - h.nodes[k]), 0.05 * std::min(sp, sp2)) << k;
    EXPECT_GT(g[k], mu.a);
    EXPECT_LT(g[k], mu.b);
  }
}

TEST(Guesses, EmpiricalCdf) {
  const std::size_t n = 1000;
  const auto mu = solve_support(FreudPotential::monomial(4), n);
  const auto g = initial_guesses_general(mu, n);
  double sup = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double F = cdf(mu, g[k]);
    sup = std::max({sup, std::abs(F - static_cast<double>(k) / n),
                    std::abs(F - static_cast<double>(k + 1) / n)});
  }
  EXPECT_LE(sup, 2.0 / n);
}

TEST(Threshold, GrowthRateForQuartic) {
  const FreudPotential V = FreudPotential::monomial(2);
  // the non-trivial count n/2 - tau grows like n^{1 - 1/(2m)}
  const double expect = std::pow(2.0, 1.0 - 1.0 / 4.0);
  const auto kept = [&](std::size_t n) {
    return static_cast<double>(n / 2 - subsample_threshold(V, n, DBL_MIN).tau);
  };
  for (std::size_t n : {1000u, 10000u}) {
    const double r = kept(2 * n) / kept(n);
    EXPECT_GE(r, 0.8 * expect);
    EXPECT_LE(r, 1.2 * expect);
  }
}

TEST(Threshold, SemicircleCountAtOneMillion) {
  const std::size_t n = 1000000;
  const auto th = subsample_threshold(FreudPotential::monomial(1), n, DBL_MIN);
  const double per_side = static_cast<double>(n / 2 - th.tau);
  EXPECT_NEAR(per_side, 12156.0, 0.15 * 12156.0);
}

TEST(Threshold, SubnormalTolerance) {
  const auto a = subsample_threshold(FreudPotential::monomial(1), 10000, DBL_MIN);
  const auto b = subsample_threshold(FreudPotential::monomial(1), 10000, DBL_MIN / 1000.0);
  EXPECT_TRUE(std::isfinite(b.Rn));
  EXPECT_LT(b.tau, a.tau);
}

TEST(Threshold, Saturation) {
  const auto th = subsample_threshold(FreudPotential::monomial(1), 1000, 0.999999);
  EXPECT_GE(th.tau, 400u);
  EXPECT_THROW(subsample_threshold(FreudPotential::monomial(1), 10, 1.5), DomainError);
}

TEST(PotentialGap, ZeroOnSupportAndGrowingOutside) {
  const auto mu = solve_support(FreudPotential::monomial(2), 1);
  EXPECT_EQ(effective_potential_gap(mu, 0.3), 0.0);
  double prev = 0.0;
  for (double x = mu.b + 0.05; x < 3.0; x += 0.1) {
    const double g = effective_potential_gap(mu, x);
    EXPECT_GT(g, prev);
    prev = g;
  }
  // V = x^2: gap = x sqrt(x^2 - 2) - 2 log((x + sqrt(x^2 - 2)) / sqrt 2)
  const auto m2 = solve_support(FreudPotential::monomial(1), 1);
  for (double x : {1.6, 2.5, 4.0}) {
    const double r = std::sqrt(x * x - 2.0);
    EXPECT_NEAR(effective_potential_gap(m2, x), x * r - 2.0 * std::log((x + r) / std::sqrt(2.0)),
                1e-12);
    EXPECT_NEAR(effective_potential_gap(m2, -x), effective_potential_gap(m2, x), 1e-12);
  }
}
