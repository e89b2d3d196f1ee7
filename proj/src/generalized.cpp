#include "fastgh/generalized.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>

#include "fastgh/error.hpp"

namespace fastgh {
namespace {

constexpr int kMaxIterations = 20;

struct Solve {
  double x;
  int iterations;
  double residual;
  bool ok;
};

Solve run_newton(const WeightedPolyEvaluator& ev, double x, double lo, double hi) {
  int it = 0;
  double resid = 0.0;
  for (; it <= kMaxIterations; ++it) {
    const WeightedValue r = ev.eval(x);
    resid = std::abs(r.p);
    const double step = r.p / r.dp;
    if (!std::isfinite(step)) return {x, it, resid, false};
    x -= step;
    if (!(x > lo && x < hi)) return {x, it, resid, false};
    if (std::abs(step) <= 1e-14 * std::max(1.0, std::abs(x))) return {x, it, resid, true};
  }
  return {x, it, resid, false};
}

// k-th zero (1-based) isolated with Sturm counts, then polished.
double repair_root(const WeightedPolyEvaluator& ev, std::size_t k, double lo, double hi) {
  for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(hi)); ++it) {
    const double mid = 0.5 * (lo + hi);
    if (ev.count_below(mid) >= k) hi = mid; else lo = mid;
    // Once the bracket holds exactly this root, Newton finishes the job.
    if (ev.count_below(lo) == k - 1 && ev.count_below(hi) == k && it > 8) {
      const Solve s = run_newton(ev, 0.5 * (lo + hi), lo, hi);
      if (s.ok) return s.x;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

RecurrenceEvaluator::RecurrenceEvaluator(RecurrenceCoeffs coeffs, FreudPotential V, std::size_t n)
    : coeffs_(std::move(coeffs)), V_(std::move(V)), n_(n), scale_(V_.scale(n)) {
  if (coeffs_.size() <= n_) {
    throw DomainError("RecurrenceEvaluator: coefficients must cover index n");
  }
}

WeightedValue RecurrenceEvaluator::eval(double xt) const {
  const double x = scale_ * xt;
  const ScaledPoly s = freud_poly_scaled(coeffs_, n_, x);
  const double e = s.log_scale - 0.5 * V_(x);
  const double f = std::exp(e);
  const double dpw = s.deriv - 0.5 * V_.derivative(x) * s.value;
  if (f == 0.0 || !std::isfinite(f)) {
    // Far outside the node region the weight factor over- or underflows;
    // the ratio is all Newton needs.
    return {s.value, scale_ * dpw};
  }
  return {s.value * f, scale_ * dpw * f};
}

double RecurrenceEvaluator::log_weight(double xt) const {
  const ScaledPoly s = freud_poly_scaled(coeffs_, n_, scale_ * xt);
  // Christoffel-Darboux: w = 1 / (sqrt(b_n) p_n'(x) p_{n-1}(x)).
  return -0.5 * std::log(coeffs_.b[n_]) - std::log(std::abs(s.deriv)) -
         std::log(std::abs(s.prev)) - 2.0 * s.log_scale;
}

double RecurrenceEvaluator::log_abs_dpoly(double xt) const {
  const ScaledPoly s = freud_poly_scaled(coeffs_, n_, scale_ * xt);
  return std::log(std::abs(s.deriv)) + s.log_scale;
}

std::size_t RecurrenceEvaluator::count_below(double xt) const {
  return sturm_count_below(coeffs_, n_, scale_ * xt);
}

GeneralNewtonResult newton_general(const WeightedPolyEvaluator& ev, double guess,
                                   const EquilibriumMeasure& mu, std::size_t index) {
  const double w = mu.b - mu.a;
  const Solve s = run_newton(ev, guess, mu.a - w, mu.b + w);
  if (!s.ok) {
    throw ConvergenceError("newton_general: no convergence", index, s.residual);
  }
  return {s.x, s.iterations, s.residual};
}

QuadratureRule freud_rule(const FreudPotential& V, std::size_t n, bool subsample, Exec exec) {
  if (n == 0) throw DomainError("freud_rule: n must be at least 1");
  return freud_rule(V, n, stieltjes_coeffs(V, n + 1), subsample, exec);
}

QuadratureRule freud_rule(const FreudPotential& V, std::size_t n, const RecurrenceCoeffs& coeffs,
                          bool subsample, Exec exec) {
  if (n == 0) throw DomainError("freud_rule: n must be at least 1");
  const EquilibriumMeasure mu = solve_support(V, n);
  const RecurrenceEvaluator ev(coeffs, V, n);
  const double sigma = ev.scale();
  const bool even = V.is_even();

  // 1-based index window [k_lo, k_hi] of the full rule that gets computed.
  std::size_t k_lo = 1;
  std::size_t k_hi = n;
  if (subsample) {
    const double eps = DBL_MIN / sigma;  // varying-scale weights are w / sigma
    const SubsampleThreshold th = subsample_threshold(V, n, eps);
    k_lo = std::max<std::size_t>(th.tau, 1);
    k_hi = n + 1 > th.tau_right ? n + 1 - th.tau_right : 1;
    k_hi = std::min(k_hi, n);
    if (k_lo > k_hi) {
      k_lo = (n + 1) / 2;
      k_hi = n / 2 + 1;
    }
  }
  // For even V only the upper half is solved and mirrored.
  const std::size_t upper_start = even ? n / 2 + 1 + n % 2 : k_lo;
  std::vector<std::size_t> ks;
  for (std::size_t k = std::max(upper_start, k_lo); k <= k_hi; ++k) ks.push_back(k);
  const bool zero_node = even && n % 2 == 1 && k_lo <= (n + 1) / 2 && (n + 1) / 2 <= k_hi;
  if (zero_node) ks.insert(ks.begin(), (n + 1) / 2);

  const std::size_t cnt = ks.size();
  std::vector<Solve> sol(cnt);
  const double width = mu.b - mu.a;
  const auto solve = [&](std::size_t j) {
    const std::size_t k = ks[j];
    if (zero_node && j == 0) {
      sol[j] = {0.0, 0, 0.0, true};
      return;
    }
    sol[j] = run_newton(ev, initial_guess_general(mu, n, k), mu.a - width, mu.b + width);
  };
  const auto icnt = static_cast<std::ptrdiff_t>(cnt);
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic, 16)
    for (std::ptrdiff_t j = 0; j < icnt; ++j) solve(static_cast<std::size_t>(j));
  } else {
    for (std::ptrdiff_t j = 0; j < icnt; ++j) solve(static_cast<std::size_t>(j));
  }

  // Sturm verification: the zero count must step from k-1 to k across each
  // root. Anything out of place is re-isolated by bisection on the count.
  std::vector<char> bad(cnt, 0);
  for (std::size_t j = 0; j < cnt; ++j) {
    if (!sol[j].ok) {
      bad[j] = 1;
      continue;
    }
    if (zero_node && j == 0) continue;
    const double d = 1e-10 * std::max(1.0, std::abs(sol[j].x));
    if (ev.count_below(sol[j].x - d) != ks[j] - 1 || ev.count_below(sol[j].x + d) != ks[j]) {
      bad[j] = 1;
    }
  }
  for (std::size_t j = 0; j < cnt; ++j) {
    if (!bad[j]) continue;
    const double x = repair_root(ev, ks[j], mu.a - width, mu.b + width);
    const WeightedValue r = ev.eval(x);
    if (ev.count_below(x - 1e-9 * width) != ks[j] - 1 && std::abs(r.p) > 1e-8) {
      throw ConvergenceError("freud_rule: node could not be isolated", ks[j], std::abs(r.p));
    }
    sol[j] = {x, kMaxIterations, std::abs(r.p), true};
  }

  std::vector<double> logw(cnt);
  std::vector<double> logd(cnt);
  for (std::size_t j = 0; j < cnt; ++j) {
    logw[j] = ev.log_weight(sol[j].x);
    logd[j] = ev.log_abs_dpoly(sol[j].x);
  }

  struct Entry {
    std::size_t k;
    double x;
    double w;
    double ld;
  };
  std::vector<Entry> entries;
  entries.reserve(even ? 2 * cnt : cnt);
  for (std::size_t j = 0; j < cnt; ++j) {
    const Entry e{ks[j], sigma * sol[j].x, std::exp(logw[j]), logd[j]};
    entries.push_back(e);
    if (even && !(zero_node && j == 0)) entries.push_back({n + 1 - e.k, -e.x, e.w, e.ld});
  }
  std::sort(entries.begin(), entries.end(), [](const Entry& l, const Entry& r) { return l.k < r.k; });

  QuadratureRule rule;
  rule.n = n;
  rule.weight_tag = "freud:" + V.describe();
  rule.method = "newton";
  rule.subsampled = subsample;
  std::size_t lo = 0;
  std::size_t hi = entries.size();
  if (subsample) {
    while (lo < hi && entries[lo].w < DBL_MIN) ++lo;
    while (hi > lo && entries[hi - 1].w < DBL_MIN) --hi;
    rule.trivial_skipped = (entries.empty() ? n / 2 : entries[lo].k - 1);
    rule.trivial_skipped_right = (entries.empty() ? n / 2 : n - entries[hi - 1].k);
  }
  for (std::size_t i = lo; i < hi; ++i) {
    rule.nodes.push_back(entries[i].x);
    rule.weights.push_back(entries[i].w);
    rule.log_abs_dpoly.push_back(entries[i].ld);
    rule.index.push_back(entries[i].k);
  }
  int max_it = 0;
  for (const Solve& s : sol) max_it = std::max(max_it, s.iterations);
  rule.max_newton_iterations = max_it;
  return rule;
}

QuadratureRule freud_rule_general(const std::vector<double>& coeffs, std::size_t n,
                                  bool subsample, Exec exec) {
  const PotentialShift ps = normalize_potential(coeffs);
  QuadratureRule rule = freud_rule(ps.V, n, subsample, exec);
  const double f = std::exp(-ps.offset);
  for (double& x : rule.nodes) x += ps.shift;
  for (double& w : rule.weights) w *= f;
  return rule;
}

ScaledNodeSet to_scaled(const QuadratureRule& rule, const FreudPotential& V) {
  ScaledNodeSet s;
  s.scale = V.scale(rule.n);
  s.tilde_nodes.resize(rule.nodes.size());
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) s.tilde_nodes[i] = rule.nodes[i] / s.scale;
  return s;
}

}  // namespace fastgh
