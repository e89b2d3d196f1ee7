#include "fastgh/hermite_asy.hpp"

#include <cfloat>
#include <cmath>
#include <numbers>

#include "fastgh/error.hpp"
#include "fastgh/recurrence.hpp"
#include "fastgh/specfun.hpp"

namespace fastgh {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kRho = 0.4985;
constexpr double kThetaTol = 1e-14;
constexpr int kMaxThetaIterations = 10;

// Leading coefficients of the Airy-type expansion: alpha_m and
// beta_m = -(6m+1)/(6m-1) alpha_m, with beta_0 = 1.
constexpr double kA1 = 15.0 / 144.0;
constexpr double kA2 = 5.0 * 7.0 * 9.0 * 11.0 / (2.0 * 144.0 * 144.0);
constexpr double kA3 = 7.0 * 9.0 * 11.0 * 13.0 * 15.0 * 17.0 / (6.0 * 144.0 * 144.0 * 144.0);
constexpr double kB1 = -7.0 / 5.0 * kA1;
constexpr double kB2 = -13.0 / 11.0 * kA2;
constexpr double kB3 = -19.0 / 17.0 * kA3;

// eta = theta/2 - sin(2 theta)/4, which equals (2/3)(-zeta)^{3/2}.
double eta_of_theta(double theta) {
  if (theta < 0.5) {
    // Alternating series in (2 theta); direct evaluation loses digits to
    // cancellation for small theta.
    const double x = 2.0 * theta;
    const double x2 = x * x;
    double term = x * x2 / 6.0;
    double sum = term;
    for (int k = 2; k < 30; ++k) {
      term *= -x2 / ((2.0 * k) * (2.0 * k + 1.0));
      sum += term;
      if (std::abs(term) < 1e-18 * sum) break;
    }
    return sum / 4.0;
  }
  return (2.0 * theta - std::sin(2.0 * theta)) / 4.0;
}

struct ThetaSweep {
  double theta;
  int iterations;
  double residual;
  double derivative;
  bool converged;
};

ThetaSweep run_newton(const HermiteContext& ctx, double theta) {
  const double scale = std::numbers::sqrt2 * ctx.mu;
  int updates = 0;
  for (int it = 0; it <= kMaxThetaIterations; ++it) {
    const ScaledUEval e = eval_scaled_U(ctx, theta);
    const double step = e.value / (scale * e.derivative * std::sin(theta));
    if (!std::isfinite(step)) {
      return {theta, updates, std::abs(e.value), e.derivative, false};
    }
    theta += step;
    if (std::abs(step) <= kThetaTol) {
      return {theta, updates, std::abs(e.value), e.derivative, true};
    }
    if (it == kMaxThetaIterations) {
      return {theta, updates, std::abs(e.value), e.derivative, false};
    }
    ++updates;
    if (theta <= 0.0 || theta > kPi / 2.0 + 1e-12) {
      return {theta, updates, std::abs(e.value), e.derivative, false};
    }
  }
  return {theta, updates, 0.0, 0.0, false};
}

}  // namespace

HermiteContext::HermiteContext(std::size_t n_) : n(n_) {
  if (n_ == 0) throw DomainError("hermite: n must be at least 1");
  mu = std::sqrt(2.0 * static_cast<double>(n_) + 1.0);
  alpha = static_cast<double>(n_ % 2) - 0.5;
  nu = 4.0 * static_cast<double>(n_ / 2) + 2.0 * alpha + 2.0;
}

std::size_t HermiteContext::tricomi_split() const {
  return static_cast<std::size_t>(std::floor(kRho * static_cast<double>(n)));
}

std::size_t subsample_extent(std::size_t n) {
  const auto m = static_cast<std::size_t>(std::ceil(12.5 * std::sqrt(static_cast<double>(n))));
  return std::min(m, (n + 1) / 2);
}

double solve_tricomi_equation(double rhs) {
  if (!(rhs > 0.0 && rhs <= kPi)) {
    throw IndexError("tricomi: right-hand side outside (0, pi]");
  }
  double x = kPi / 2.0;
  for (int it = 0; it < 100; ++it) {
    const double f = x - std::sin(x) - rhs;
    const double df = 1.0 - std::cos(x);
    const double step = f / df;
    x -= step;
    if (std::abs(step) <= 1e-16 * std::max(1.0, x)) break;
  }
  return x;
}

double tricomi_tau(std::size_t n, std::size_t k) {
  const HermiteContext ctx(n);
  const double num = 4.0 * static_cast<double>(n / 2) - 4.0 * static_cast<double>(k) + 3.0;
  return solve_tricomi_equation(num * kPi / ctx.nu);
}

double tricomi_guess(const HermiteContext& ctx, std::size_t k) {
  const double tau = tricomi_tau(ctx.n, k);
  const double c = std::cos(tau / 2.0);
  const double sigma = c * c;
  const double om = 1.0 - sigma;
  const double corr = (5.0 / (4.0 * om * om) - 1.0 / om - 0.25) / (3.0 * ctx.nu);
  const double x2 = ctx.nu * sigma - corr;
  if (x2 < 0.0) {
    if (k == 0 && x2 > -1e-12) return 0.0;
    throw DegeneracyError("tricomi_guess: negative radicand");
  }
  return std::sqrt(x2);
}

double gatteschi_guess(const HermiteContext& ctx, std::size_t k) {
  if (k == 0 || k > ctx.n) throw IndexError("gatteschi_guess: index out of range");
  const double a = specfun::airy_zero(static_cast<int>(k));
  const double nu = ctx.nu;
  const double c13 = std::cbrt(2.0);
  const double c23 = c13 * c13;
  const double c43 = c23 * c23;
  const double nu13 = std::cbrt(nu);
  const double a2 = a * a;
  const double a3 = a2 * a;
  const double a4 = a3 * a;
  const double a5 = a4 * a;
  const double x2 = nu + c23 * a * nu13 + 0.2 * c43 * a2 / nu13 +
                    (9.0 / 140.0 - 12.0 / 175.0 * a3) / nu +
                    (16.0 / 1575.0 * a + 92.0 / 7875.0 * a4) * c23 / (nu * nu13 * nu13) -
                    (15152.0 / 3031875.0 * a5 + 1088.0 / 121275.0 * a2) * c13 /
                        (nu * nu * nu13);
  if (x2 < 0.0) throw DegeneracyError("gatteschi_guess: negative radicand");
  return std::sqrt(x2);
}

double initial_guess_x(const HermiteContext& ctx, std::size_t k) {
  const std::size_t half = ctx.positive_count();
  if (k == 0 || k > half) throw IndexError("initial_guess_x: index out of range");
  if (k <= ctx.tricomi_split()) return tricomi_guess(ctx, k);
  return gatteschi_guess(ctx, half - k + 1);
}

std::vector<double> initial_guesses_theta(const HermiteContext& ctx) {
  if (ctx.n < kAsyThreshold) {
    throw RegimeError("initial_guesses_theta: asymptotic guesses need n >= 200");
  }
  const std::size_t half = ctx.positive_count();
  std::vector<double> theta(half);
  for (std::size_t k = 1; k <= half; ++k) {
    theta[k - 1] = std::acos(initial_guess_x(ctx, k) / ctx.mu);
  }
  return theta;
}

ScaledUEval eval_scaled_U(const HermiteContext& ctx, double theta) {
  if (!(theta > 0.0 && theta <= kPi / 2.0 + 1e-15)) {
    throw DomainError("eval_scaled_U: theta outside (0, pi/2]");
  }
  const double mu = ctx.mu;
  const double t = std::cos(theta);
  const double s = std::sin(theta);
  const double eta = eta_of_theta(theta);
  const double mz = std::cbrt(1.5 * eta * 1.5 * eta);  // -zeta
  const double zeta = -mz;
  const double phi2 = std::sqrt(mz) / s;
  const double phi = std::sqrt(phi2);
  const double p6 = phi2 * phi2 * phi2;

  const double t2 = t * t;
  const double t3 = t2 * t;
  const double t4 = t2 * t2;
  const double t5 = t4 * t;
  const double t7 = t5 * t2;
  const double t9 = t7 * t2;
  const double u1 = (t3 - 6.0 * t) / 24.0;
  const double u2 = (-9.0 * t4 + 249.0 * t2 + 145.0) / 1152.0;
  const double u3 =
      (-4042.0 * t9 + 18189.0 * t7 - 28287.0 * t5 - 151995.0 * t3 - 259290.0 * t) / 414720.0;
  const double v1 = (t3 + 6.0 * t) / 24.0;
  const double v2 = (15.0 * t4 - 327.0 * t2 - 143.0) / 1152.0;
  const double v3 =
      (259290.0 * t + 238425.0 * t3 - 36387.0 * t5 + 18189.0 * t7 - 4042.0 * t9) / 414720.0;

  const double z2 = zeta * zeta;
  const double z3 = z2 * zeta;
  const double p12 = p6 * p6;
  const double p18 = p12 * p6;
  const double a1 = (p12 * u2 + kB1 * p6 * u1 + kB2) / z3;
  const double b0 = -(p6 * u1 + kA1) / z2;
  const double b1 = -(p18 * u3 + kA1 * p12 * u2 + kA2 * p6 * u1 + kA3) / (z3 * z2);
  const double c0 = -(p6 * v1 + kB1) / zeta;
  const double c1 = -(p18 * v3 + kB1 * p12 * v2 + kB2 * p6 * v1 + kB3) / (z2 * z2);
  const double d1 = (p12 * v2 + kA1 * p6 * v1 + kA2) / z3;

  const double mu13 = std::cbrt(mu);
  const double mu43 = mu * mu13;
  const double mu83 = mu43 * mu43;
  const double mu4 = mu * mu * mu * mu;
  const double arg = mu43 * zeta;

  specfun::AiryPair ai;
  if (arg < -10.0) {
    ai = specfun::airy_ai_pair_oscillatory(-arg, mu * mu * eta);
  } else {
    ai = specfun::airy_ai_pair(arg);
  }

  const double n14 = std::pow(static_cast<double>(ctx.n), 0.25);
  const double pre_u = std::pow(2.0, 1.25) * mu13 / n14 * phi;
  const double pre_d = std::pow(2.0, 0.75) * mu13 * mu13 / n14 / phi;
  const double value = pre_u * (ai.ai * (1.0 + a1 / mu4) + ai.aip * (b0 + b1 / mu4) / mu83);
  const double deriv = pre_d * (ai.ai / mu43 * (c0 + c1 / mu4) + ai.aip * (1.0 + d1 / mu4));
  return {value, deriv};
}

ThetaNewtonResult newton_theta(const HermiteContext& ctx, double theta0, std::size_t index) {
  const ThetaSweep r = run_newton(ctx, theta0);
  if (!r.converged) {
    throw ConvergenceError("newton_theta: no convergence in 10 iterations", index, r.residual);
  }
  return {r.theta, r.iterations, r.residual, r.derivative};
}

QuadratureRule hermite_rule_asy(std::size_t n, bool subsample, Exec exec) {
  if (n < kAsyThreshold) {
    throw RegimeError("hermite_rule_asy: n < 200, use hermite_rule");
  }
  const HermiteContext ctx(n);
  const std::size_t half = ctx.positive_count();
  const bool odd = n % 2 == 1;
  const std::size_t count = subsample ? std::min(subsample_extent(n), half) : half;

  // Positive nodes, centre outward: slot j holds node k = j + 1.
  std::vector<double> theta(count);
  std::vector<double> dU(count);
  std::vector<int> iters(count, 0);
  std::vector<double> resid(count, 0.0);
  std::vector<char> ok(count, 1);

  const auto solve = [&](std::size_t j) {
    const double x0 = initial_guess_x(ctx, j + 1);
    const ThetaSweep r = run_newton(ctx, std::acos(x0 / ctx.mu));
    theta[j] = r.theta;
    dU[j] = r.derivative;
    iters[j] = r.iterations;
    resid[j] = r.residual;
    ok[j] = r.converged ? 1 : 0;
  };
  const auto cnt = static_cast<std::ptrdiff_t>(count);
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t j = 0; j < cnt; ++j) solve(static_cast<std::size_t>(j));
  } else {
    for (std::ptrdiff_t j = 0; j < cnt; ++j) solve(static_cast<std::size_t>(j));
  }
  for (std::size_t j = 0; j < count; ++j) {
    if (!ok[j]) {
      throw ConvergenceError("hermite_rule_asy: Newton did not converge", j + 1, resid[j]);
    }
  }

  std::vector<double> x(count);
  std::vector<double> raw(count);
  std::vector<double> raw_scaled(count);
  for (std::size_t j = 0; j < count; ++j) {
    x[j] = ctx.mu * std::cos(theta[j]);
    raw_scaled[j] = 1.0 / (dU[j] * dU[j]);
    raw[j] = std::exp(-x[j] * x[j]) * raw_scaled[j];
  }
  double raw0 = 0.0;
  double raw0_scaled = 0.0;
  double log_d0 = 0.0;
  if (odd) {
    const ScaledUEval e = eval_scaled_U(ctx, kPi / 2.0);
    raw0_scaled = 1.0 / (e.derivative * e.derivative);
    raw0 = raw0_scaled;
    log_d0 = std::log(std::abs(e.derivative));
  }

  // Fixed centre-out summation order; the terms beyond the subsample window
  // are below realmin, so the constant matches the full rule bit for bit.
  double sum = 0.0;
  for (std::size_t j = 0; j < count; ++j) sum += raw[j];
  sum = 2.0 * sum + raw0;
  const double c = std::sqrt(kPi) / sum;

  std::size_t kept = count;
  if (subsample) {
    kept = 0;
    while (kept < count && c * raw[kept] >= DBL_MIN) ++kept;
  }

  QuadratureRule rule;
  rule.n = n;
  rule.weight_tag = "hermite";
  rule.method = "asy";
  rule.subsampled = subsample;
  rule.trivial_skipped = subsample ? half - kept : 0;
  rule.trivial_skipped_right = rule.trivial_skipped;
  const std::size_t total = 2 * kept + (odd ? 1 : 0);
  rule.nodes.resize(total);
  rule.weights.resize(total);
  rule.scaled_weights.resize(total);
  rule.log_abs_dpoly.resize(total);
  rule.index.resize(total);

  // Position of positive node k (1-based from the centre) in the full rule.
  const std::size_t centre = n / 2 + (odd ? 1 : 0);  // 1-based index of last non-positive node
  for (std::size_t j = 0; j < kept; ++j) {
    const std::size_t right = kept + (odd ? 1 : 0) + j;
    const std::size_t left = kept - 1 - j;
    const double w = c * raw[j];
    const double ws = c * raw_scaled[j];
    // p_n' is proportional to U~' e^{x^2/2}.
    const double ld = std::log(std::abs(dU[j])) + 0.5 * x[j] * x[j];
    rule.nodes[right] = x[j];
    rule.nodes[left] = -x[j];
    rule.weights[right] = rule.weights[left] = w;
    rule.scaled_weights[right] = rule.scaled_weights[left] = ws;
    rule.log_abs_dpoly[right] = rule.log_abs_dpoly[left] = ld;
    rule.index[right] = centre + j + 1;
    rule.index[left] = n + 1 - (centre + j + 1);
  }
  if (odd) {
    rule.nodes[kept] = 0.0;
    rule.weights[kept] = c * raw0;
    rule.scaled_weights[kept] = c * raw0_scaled;
    rule.log_abs_dpoly[kept] = log_d0;
    rule.index[kept] = centre;
  }
  int max_it = 0;
  for (std::size_t j = 0; j < kept; ++j) max_it = std::max(max_it, iters[j]);
  rule.max_newton_iterations = max_it;
  return rule;
}

QuadratureRule hermite_rule(std::size_t n, bool subsample, Exec exec) {
  if (n == 0) throw DomainError("hermite_rule: n must be at least 1");
  if (n >= kAsyThreshold) return hermite_rule_asy(n, subsample, exec);
  QuadratureRule rule = hermite_rule_rec(n, exec);
  if (subsample) {
    // Below the asymptotic threshold no weight underflows unless n is near
    // 200; drop the ones that do for a consistent contract.
    std::size_t lo = 0;
    while (lo < rule.size() / 2 && rule.weights[lo] < DBL_MIN) ++lo;
    if (lo > 0) {
      const std::size_t hi = rule.size() - lo;
      const auto cut = [&](auto& v) {
        if (v.empty()) return;
        v.erase(v.begin() + static_cast<std::ptrdiff_t>(hi), v.end());
        v.erase(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(lo));
      };
      cut(rule.nodes);
      cut(rule.weights);
      cut(rule.scaled_weights);
      cut(rule.log_abs_dpoly);
      cut(rule.index);
    }
    rule.subsampled = true;
    rule.trivial_skipped = rule.trivial_skipped_right = lo;
  }
  return rule;
}

}  // namespace fastgh
