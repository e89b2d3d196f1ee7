#include "fastgh/interp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fastgh/error.hpp"

namespace fastgh {
namespace {

constexpr double kHit = 1e-300;

// Terms t_j = log|lambda_j| - log|x - x_j| with their maximum, so sums can be
// formed as sum s_j e^{t_j - tmax} without overflow or underflow.
struct Terms {
  std::vector<double> t;
  double tmax;
};

Terms terms(const BarycentricInterpolant& p, double x) {
  Terms r{std::vector<double>(p.nodes.size()), -std::numeric_limits<double>::infinity()};
  for (std::size_t j = 0; j < p.nodes.size(); ++j) {
    r.t[j] = p.log_abs_lambda[j] - std::log(std::abs(x - p.nodes[j]));
    r.tmax = std::max(r.tmax, r.t[j]);
  }
  return r;
}

// Sign of lambda_j / (x - x_j).
double sign_of(const BarycentricInterpolant& p, std::size_t j, double x) {
  return (p.lambda[j] < 0.0) != (x < p.nodes[j]) ? -1.0 : 1.0;
}

long hit_index(const BarycentricInterpolant& p, double x) {
  for (std::size_t j = 0; j < p.nodes.size(); ++j) {
    if (std::abs(x - p.nodes[j]) < kHit) return static_cast<long>(j);
  }
  return -1;
}

// log of |sum_k lambda_k / (x - x_k)|.
double log_abs_denominator(const BarycentricInterpolant& p, double x) {
  double s = p.log_node_constant;
  for (double xk : p.nodes) s -= std::log(std::abs(x - xk));
  return s;
}

}  // namespace

std::vector<double> bary_weights(const std::vector<double>& dpoly, std::optional<double> c) {
  std::vector<double> lam(dpoly.size());
  double big = 0.0;
  for (std::size_t k = 0; k < dpoly.size(); ++k) {
    if (dpoly[k] == 0.0 || !std::isfinite(dpoly[k])) {
      throw DegenerateNodeError("bary_weights: vanishing derivative at a node");
    }
    lam[k] = 1.0 / dpoly[k];
    big = std::max(big, std::abs(lam[k]));
  }
  const double scale = c ? *c : 1.0 / big;
  for (double& l : lam) l *= scale;
  return lam;
}

BarycentricInterpolant make_interpolant(const QuadratureRule& rule, const FreudPotential& V,
                                        std::vector<double> samples) {
  if (rule.log_abs_dpoly.size() != rule.nodes.size()) {
    throw DomainError("make_interpolant: rule carries no derivative data");
  }
  if (samples.size() != rule.nodes.size()) {
    throw DomainError("make_interpolant: sample count does not match the nodes");
  }
  BarycentricInterpolant p;
  p.nodes = rule.nodes;
  p.samples = std::move(samples);
  p.V = V;
  const std::size_t n = rule.nodes.size();
  double lmax = -std::numeric_limits<double>::infinity();
  for (double d : rule.log_abs_dpoly) {
    if (!std::isfinite(d)) throw DegenerateNodeError("make_interpolant: degenerate derivative");
    lmax = std::max(lmax, -d);
  }
  p.c = std::exp(-lmax);  // only meaningful when representable
  p.log_abs_lambda.resize(n);
  p.lambda.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    p.log_abs_lambda[j] = -rule.log_abs_dpoly[j] - lmax;
    const std::size_t k = rule.index.empty() ? j + 1 : rule.index[j];
    const double sign = (rule.n - k) % 2 == 0 ? 1.0 : -1.0;
    p.lambda[j] = sign * std::exp(p.log_abs_lambda[j]);
    if (p.lambda[j] == 0.0) p.lambda[j] = sign * std::numeric_limits<double>::denorm_min();
  }
  // Anchored at the largest weight, where log|lambda| = 0.
  const auto top = static_cast<std::size_t>(
      std::max_element(p.log_abs_lambda.begin(), p.log_abs_lambda.end()) - p.log_abs_lambda.begin());
  p.log_node_constant = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    if (k != top) p.log_node_constant += std::log(std::abs(p.nodes[top] - p.nodes[k]));
  }
  return p;
}

BarycentricInterpolant make_interpolant(const QuadratureRule& rule, const FreudPotential& V,
                                        const std::function<double(double)>& f) {
  std::vector<double> s(rule.nodes.size());
  for (std::size_t j = 0; j < s.size(); ++j) s[j] = f(rule.nodes[j]);
  return make_interpolant(rule, V, std::move(s));
}

double eval(const BarycentricInterpolant& p, double x) {
  const long h = hit_index(p, x);
  if (h >= 0) return p.samples[static_cast<std::size_t>(h)];
  const Terms tm = terms(p, x);
  double num = 0.0, den = 0.0;
  for (std::size_t j = 0; j < tm.t.size(); ++j) {
    const double e = sign_of(p, j, x) * std::exp(tm.t[j] - tm.tmax);
    num += e * p.samples[j];
    den += e;
  }
  return num / den;
}

double eval_weighted(const BarycentricInterpolant& p, double x) {
  const double w = std::exp(-0.5 * p.V(x));
  if (w == 0.0) return 0.0;
  const double v = eval(p, x) * w;
  return std::isfinite(v) ? v : 0.0;
}

double cond_unity(const BarycentricInterpolant& p, double x) {
  if (hit_index(p, x) >= 0) return 1.0;
  const Terms tm = terms(p, x);
  const double ld = log_abs_denominator(p, x);
  double s = 0.0;
  for (double t : tm.t) s += std::exp(t - ld);
  return s;
}

double cond_unity_weighted(const BarycentricInterpolant& p, double x) {
  const long h = hit_index(p, x);
  if (h >= 0) return 1.0;
  const Terms tm = terms(p, x);
  const double ld = log_abs_denominator(p, x);
  const double vx = 0.5 * p.V(x);
  double s = 0.0;
  for (std::size_t j = 0; j < tm.t.size(); ++j) {
    s += std::exp(tm.t[j] - ld + 0.5 * p.V(p.nodes[j]) - vx);
  }
  return s;
}

LebesgueResult lebesgue_weighted(const BarycentricInterpolant& p, const std::vector<double>& grid) {
  LebesgueResult r{std::vector<double>(grid.size()), 0.0};
  for (std::size_t i = 0; i < grid.size(); ++i) {
    r.values[i] = cond_unity_weighted(p, grid[i]);
    r.max = std::max(r.max, r.values[i]);
  }
  return r;
}

std::vector<double> lebesgue_grid(const BarycentricInterpolant& p) {
  std::vector<double> g;
  const std::size_t n = p.nodes.size();
  if (n == 0) return g;
  const double lo = p.nodes.front();
  const double hi = p.nodes.back();
  const double ext = 0.1 * std::max(hi - lo, 1.0);
  for (int i = 0; i <= 10; ++i) g.push_back(lo - ext + ext * i / 10.0);
  for (std::size_t j = 0; j + 1 < n; ++j) {
    const double a = p.nodes[j], b = p.nodes[j + 1];
    for (int i = 0; i <= 10; ++i) g.push_back(a + (b - a) * i / 11.0);
    g.push_back(0.5 * (a + b));
  }
  for (int i = 0; i <= 10; ++i) g.push_back(hi + ext * i / 10.0);
  std::sort(g.begin(), g.end());
  return g;
}

}  // namespace fastgh
