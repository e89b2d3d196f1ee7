#include <algorithm>
#include <cmath>

#include "fastgh/equilibrium.hpp"
#include "fastgh/error.hpp"
#include "fastgh/recurrence.hpp"

namespace fastgh {
namespace {

constexpr double kLog2 = 0.69314718055994530942;
constexpr int kShiftBits = 200;
const double kShiftUp = std::ldexp(1.0, kShiftBits);

// Largest |x| where p_k(x)^2 e^{-V(x)}, k < count, still matters: the
// effective potential of the degree-count measure has risen by 60 / count
// above its value on the support.
double effective_extent(const FreudPotential& V, std::size_t count) {
  const EquilibriumMeasure mu = solve_support(V, count);
  const double target = 60.0 / static_cast<double>(count);
  const auto side = [&](double edge) {
    double lo = edge;
    double hi = 2.0 * edge;
    while (effective_potential_gap(mu, hi) < target) {
      lo = hi;
      hi *= 2.0;
    }
    for (int it = 0; it < 60; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (effective_potential_gap(mu, mid) < target) lo = mid; else hi = mid;
    }
    return std::abs(hi);
  };
  return V.scale(count) * std::max(side(mu.a), side(mu.b));
}

}  // namespace

RecurrenceCoeffs stieltjes_coeffs_fixed(const FreudPotential& V, std::size_t count,
                                        std::size_t aux_size) {
  if (count == 0) throw DomainError("stieltjes_coeffs: count must be at least 1");
  aux_size += aux_size % 2;
  // Midpoint rule on [-L, L]; the integrands are analytic and negligible at
  // the ends, so the rule converges geometrically once it resolves p_k.
  const double extent = effective_extent(V, count);
  const double h = 2.0 * extent / static_cast<double>(aux_size);
  const bool even = V.is_even();

  // For even V only the positive half, with each weight counting twice.
  const std::size_t npts = even ? aux_size / 2 : aux_size;
  std::vector<double> x(npts);
  std::vector<double> logw(npts);
  for (std::size_t i = 0; i < npts; ++i) {
    const double off = (static_cast<double>(i) + 0.5) * h;
    x[i] = even ? off : -extent + off;
    logw[i] = std::log(h) - V(x[i]) + (even ? kLog2 : 0.0);
  }
  const double lmax = *std::max_element(logw.begin(), logw.end());
  double sumw = 0.0;
  for (std::size_t i = 0; i < npts; ++i) sumw += std::exp(logw[i] - lmax);
  const double log_mu0 = lmax + std::log(sumw);

  // q_k(x_i) = m_k[i] * f[i] with f[i] = exp(ell[i]); the mantissas are
  // shifted by powers of two when they grow.
  std::vector<double> ell(npts);
  std::vector<double> f(npts);
  std::vector<double> mk(npts, 1.0);
  std::vector<double> mkm1(npts, 0.0);
  for (std::size_t i = 0; i < npts; ++i) {
    ell[i] = 0.5 * (logw[i] - log_mu0);
    f[i] = std::exp(ell[i]);
  }

  RecurrenceCoeffs c;
  c.a.assign(count, 0.0);
  c.b.assign(count, 0.0);
  c.mu0 = std::exp(log_mu0);
  c.b[0] = c.mu0;
  double sb = 0.0;
  for (std::size_t k = 0; k < count; ++k) {
    double ak = 0.0;
    if (!even) {
      for (std::size_t i = 0; i < npts; ++i) {
        const double q = mk[i] * f[i];
        ak += x[i] * q * q;
      }
    }
    c.a[k] = ak;
    if (k + 1 == count) break;
    double bk1 = 0.0;
    for (std::size_t i = 0; i < npts; ++i) {
      const double r = (x[i] - ak) * mk[i] - sb * mkm1[i];
      mkm1[i] = mk[i];
      mk[i] = r;
      const double q = r * f[i];
      bk1 += q * q;
    }
    if (!(bk1 > 0.0) || !std::isfinite(bk1)) {
      throw ResolutionError("stieltjes_coeffs: discrete measure exhausted");
    }
    c.b[k + 1] = bk1;
    const double inv = 1.0 / std::sqrt(bk1);
    sb = std::sqrt(bk1);
    for (std::size_t i = 0; i < npts; ++i) {
      mk[i] *= inv;
      if (std::abs(mk[i]) > kShiftUp) {
        mk[i] /= kShiftUp;
        mkm1[i] /= kShiftUp;
        ell[i] += kShiftBits * kLog2;
        f[i] = std::exp(ell[i]);
      }
    }
  }
  return c;
}

RecurrenceCoeffs stieltjes_coeffs(const FreudPotential& V, std::size_t count, double tol) {
  std::size_t aux = std::max<std::size_t>(4 * count, 400);
  RecurrenceCoeffs coarse = stieltjes_coeffs_fixed(V, count, aux);
  double diff = 0.0;
  for (int doubling = 0; doubling < 4; ++doubling) {
    aux *= 2;
    RecurrenceCoeffs fine = stieltjes_coeffs_fixed(V, count, aux);
    // a_k is compared on the local length scale sqrt(b_k) (b_1 for k = 0).
    diff = std::abs(fine.mu0 - coarse.mu0) / fine.mu0;
    for (std::size_t k = 0; k < count; ++k) {
      const double len = count > 1 ? std::sqrt(fine.b[std::max<std::size_t>(k, 1)]) : 1.0;
      diff = std::max(diff, std::abs(fine.a[k] - coarse.a[k]) / len);
      if (k > 0) diff = std::max(diff, std::abs(fine.b[k] - coarse.b[k]) / fine.b[k]);
    }
    if (diff <= tol) return fine;
    coarse = std::move(fine);
  }
  throw ResolutionError("stieltjes_coeffs: coefficients did not settle under refinement (drift " +
                        std::to_string(diff) + ")");
}

}  // namespace fastgh
