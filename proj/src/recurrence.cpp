#include "fastgh/recurrence.hpp"

#include <cmath>
#include <numbers>

#include "fastgh/error.hpp"
#include "fastgh/hermite_asy.hpp"

namespace fastgh {
namespace {

constexpr double kRescale = 1e2;

// p_0 = pi^{-1/4}, p_{k+1} = sqrt(2/(k+1)) x p_k - sqrt(k/(k+1)) p_{k-1}.
ScaledPoly hermite_poly_impl(std::size_t n, double x) {
  double pm1 = 0.0;
  double p = std::pow(std::numbers::pi, -0.25);
  double log_scale = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double kk = static_cast<double>(k);
    const double next = std::sqrt(2.0 / (kk + 1.0)) * x * p - std::sqrt(kk / (kk + 1.0)) * pm1;
    pm1 = p;
    p = next;
    const double mag = std::abs(p);
    if (mag > kRescale) {
      pm1 /= mag;
      p /= mag;
      log_scale += std::log(mag);
    }
  }
  if (!std::isfinite(p) || !std::isfinite(pm1)) {
    throw ScalingError("hermite recurrence overflowed despite rescaling");
  }
  const double dp = n == 0 ? 0.0 : std::sqrt(2.0 * static_cast<double>(n)) * pm1;
  return {p, pm1, dp, log_scale};
}

struct NodeSolve {
  double x;
  double log_w;  // log of the unnormalised weight
  double log_dpoly;
  int iterations;
  bool ok;
};

NodeSolve rec_newton(std::size_t n, double x) {
  int it = 0;
  for (; it < 50; ++it) {
    const ScaledPoly s = hermite_poly_impl(n, x);
    const double step = s.value / s.deriv;
    x -= step;
    if (std::abs(step) <= 4e-16 * std::max(1.0, std::abs(x))) break;
  }
  const ScaledPoly s = hermite_poly_impl(n, x);
  const double ld = std::log(std::abs(s.deriv)) + s.log_scale;
  // Christoffel-Darboux with p_{n-1} = p_n' / sqrt(2n): w = 2 / p_n'(x)^2.
  const double log_w = std::log(2.0) - 2.0 * ld;
  return {x, log_w, ld, it, it < 50 && std::isfinite(ld)};
}

}  // namespace

RecurrenceCoeffs hermite_coeffs(std::size_t count) {
  RecurrenceCoeffs c;
  c.a.assign(count, 0.0);
  c.b.resize(count);
  c.mu0 = std::sqrt(std::numbers::pi);
  for (std::size_t k = 0; k < count; ++k) c.b[k] = k == 0 ? c.mu0 : 0.5 * static_cast<double>(k);
  return c;
}

ScaledPoly hermite_poly_scaled(std::size_t n, double x) {
  if (!std::isfinite(x)) throw DomainError("hermite_poly_scaled: non-finite x");
  return hermite_poly_impl(n, x);
}

WeightedValue hermite_eval_scaled(std::size_t n, double x) {
  const ScaledPoly s = hermite_poly_scaled(n, x);
  const double f = std::exp(s.log_scale - 0.5 * x * x);
  const double p = s.value * f;
  return {p, s.deriv * f - x * p};
}

QuadratureRule hermite_rule_rec(std::size_t n, Exec exec) {
  if (n == 0) throw DomainError("hermite_rule_rec: n must be at least 1");
  const std::size_t half = n / 2;
  const bool odd = n % 2 == 1;

  std::vector<double> seeds(half);
  if (n < 30) {
    const QuadratureRule gw = golub_welsch(hermite_coeffs(n), n);
    for (std::size_t k = 1; k <= half; ++k) seeds[k - 1] = gw.nodes[n - half + k - 1];
  } else {
    const HermiteContext ctx(n);
    for (std::size_t k = 1; k <= half; ++k) seeds[k - 1] = initial_guess_x(ctx, k);
  }

  std::vector<NodeSolve> pos(half);
  const auto cnt = static_cast<std::ptrdiff_t>(half);
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t j = 0; j < cnt; ++j) pos[j] = rec_newton(n, seeds[j]);
  } else {
    for (std::ptrdiff_t j = 0; j < cnt; ++j) pos[j] = rec_newton(n, seeds[j]);
  }
  for (std::size_t j = 0; j < half; ++j) {
    if (!pos[j].ok) {
      const ScaledPoly s = hermite_poly_impl(n, pos[j].x);
      throw ConvergenceError("hermite_rule_rec: Newton did not converge", j + 1,
                             std::abs(s.value));
    }
    if (pos[j].x <= 0.0 || (j > 0 && pos[j].x <= pos[j - 1].x)) {
      throw ConvergenceError("hermite_rule_rec: Newton converged to a wrong root", j + 1, 0.0);
    }
  }
  NodeSolve zero{0.0, 0.0, 0.0, 0, true};
  if (odd) {
    const ScaledPoly s = hermite_poly_impl(n, 0.0);
    zero.log_dpoly = std::log(std::abs(s.deriv)) + s.log_scale;
    zero.log_w = std::log(2.0) - 2.0 * zero.log_dpoly;
  }

  double sum = 0.0;
  for (std::size_t j = 0; j < half; ++j) sum += std::exp(pos[j].log_w);
  sum = 2.0 * sum + (odd ? std::exp(zero.log_w) : 0.0);
  const double log_c = std::log(std::sqrt(std::numbers::pi) / sum);

  QuadratureRule rule;
  rule.n = n;
  rule.weight_tag = "hermite";
  rule.method = "rec";
  rule.nodes.resize(n);
  rule.weights.resize(n);
  rule.scaled_weights.resize(n);
  rule.log_abs_dpoly.resize(n);
  rule.index.resize(n);
  for (std::size_t i = 0; i < n; ++i) rule.index[i] = i + 1;
  const std::size_t off = half + (odd ? 1 : 0);
  for (std::size_t j = 0; j < half; ++j) {
    const NodeSolve& s = pos[j];
    const double w = std::exp(s.log_w + log_c);
    const double ws = std::exp(s.log_w + log_c + s.x * s.x);
    rule.nodes[off + j] = s.x;
    rule.nodes[half - 1 - j] = -s.x;
    rule.weights[off + j] = rule.weights[half - 1 - j] = w;
    rule.scaled_weights[off + j] = rule.scaled_weights[half - 1 - j] = ws;
    rule.log_abs_dpoly[off + j] = rule.log_abs_dpoly[half - 1 - j] = s.log_dpoly;
    rule.max_newton_iterations = std::max(rule.max_newton_iterations, s.iterations);
  }
  if (odd) {
    rule.nodes[half] = 0.0;
    rule.weights[half] = rule.scaled_weights[half] = std::exp(zero.log_w + log_c);
    rule.log_abs_dpoly[half] = zero.log_dpoly;
  }
  return rule;
}

ScaledPoly freud_poly_scaled(const RecurrenceCoeffs& c, std::size_t n, double x) {
  if (c.size() <= n || c.b.size() <= n) {
    throw DomainError("freud_poly_scaled: recurrence coefficients do not cover n");
  }
  if (!std::isfinite(x)) throw DomainError("freud_poly_scaled: non-finite x");
  // Orthonormal: sqrt(b_{k+1}) p_{k+1} = (x - a_k) p_k - sqrt(b_k) p_{k-1}.
  double pm1 = 0.0;
  double p = 1.0 / std::sqrt(c.mu0);
  double dpm1 = 0.0;
  double dp = 0.0;
  double log_scale = 0.0;
  double sb = 0.0;  // sqrt(b_k), zero for k = 0
  for (std::size_t k = 0; k < n; ++k) {
    const double sb1 = std::sqrt(c.b[k + 1]);
    const double xa = x - c.a[k];
    const double next = (xa * p - sb * pm1) / sb1;
    const double dnext = (p + xa * dp - sb * dpm1) / sb1;
    pm1 = p;
    p = next;
    dpm1 = dp;
    dp = dnext;
    sb = sb1;
    const double mag = std::max(std::abs(p), std::abs(pm1));
    if (mag > kRescale) {
      p /= mag;
      pm1 /= mag;
      dp /= mag;
      dpm1 /= mag;
      log_scale += std::log(mag);
    }
  }
  if (!std::isfinite(p) || !std::isfinite(dp)) {
    throw ScalingError("freud recurrence overflowed despite rescaling");
  }
  return {p, pm1, dp, log_scale};
}

WeightedValue freud_eval_scaled(const RecurrenceCoeffs& c, const FreudPotential& V,
                                std::size_t n, double x) {
  const ScaledPoly s = freud_poly_scaled(c, n, x);
  const double f = std::exp(s.log_scale - 0.5 * V(x));
  const double r = s.value * f;
  return {r, s.deriv * f - 0.5 * V.derivative(x) * r};
}

std::size_t sturm_count_below(const RecurrenceCoeffs& c, std::size_t n, double x) {
  if (c.size() <= n || c.b.size() <= n) {
    throw DomainError("sturm_count_below: recurrence coefficients do not cover n");
  }
  // Ratios q_k = p_k / p_{k-1} avoid scaling entirely; a sign change is a
  // negative ratio.
  std::size_t changes = 0;
  double ratio_prev = 0.0;  // p_{k-1}/p_{k-2}
  for (std::size_t k = 0; k < n; ++k) {
    const double sb1 = std::sqrt(c.b[k + 1]);
    const double xa = x - c.a[k];
    double q;
    if (k == 0) {
      q = xa / sb1;
    } else {
      const double sb = std::sqrt(c.b[k]);
      q = (xa - sb / ratio_prev) / sb1;
    }
    if (q == 0.0) q = -1e-300;
    if (q < 0.0) ++changes;
    ratio_prev = q;
  }
  return n - changes;
}

}  // namespace fastgh
