#include "fastgh/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include "fastgh/error.hpp"

namespace fastgh {
namespace {

constexpr double kPi = std::numbers::pi;

// Chebyshev-T coefficients of a polynomial in u of degree < npts, exact up to
// rounding, from values at the Chebyshev points of the first kind.
std::vector<double> cheb_coeffs(const std::function<double(double)>& f, int npts) {
  std::vector<double> vals(static_cast<std::size_t>(npts));
  for (int k = 0; k < npts; ++k) {
    vals[static_cast<std::size_t>(k)] = f(std::cos(kPi * (k + 0.5) / npts));
  }
  std::vector<double> c(static_cast<std::size_t>(npts));
  for (int j = 0; j < npts; ++j) {
    double s = 0.0;
    for (int k = 0; k < npts; ++k) {
      s += vals[static_cast<std::size_t>(k)] * std::cos(kPi * j * (k + 0.5) / npts);
    }
    c[static_cast<std::size_t>(j)] = (j == 0 ? 1.0 : 2.0) * s / npts;
  }
  return c;
}

struct Field {
  std::vector<double> c;  // V_n coefficients
  int m;

  double d1(double x) const { return poly_deriv(c, x); }
  double d2(double x) const {
    double r = 0.0;
    for (std::size_t i = c.size(); i-- > 2;) {
      r = r * x + static_cast<double>(i) * static_cast<double>(i - 1) * c[i];
    }
    return r;
  }
  int npts() const { return 2 * m + 4; }
};

struct SupportEval {
  double r0, r1;
  double j00, j01, j10, j11;  // d(r0, r1)/d(a, b)
  std::vector<double> c;
};

SupportEval eval_support(const Field& F, double a, double b) {
  const double h = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  const auto x_of = [&](double u) { return mid + h * u; };
  SupportEval e;
  e.c = cheb_coeffs([&](double u) { return F.d1(x_of(u)); }, F.npts());
  const auto ca = cheb_coeffs([&](double u) { return F.d2(x_of(u)) * 0.5 * (1.0 - u); }, F.npts());
  const auto cb = cheb_coeffs([&](double u) { return F.d2(x_of(u)) * 0.5 * (1.0 + u); }, F.npts());
  const double w = b - a;
  e.r0 = e.c[0];
  e.r1 = e.c[1] * w / 8.0 - 1.0;
  e.j00 = ca[0];
  e.j01 = cb[0];
  e.j10 = ca[1] * w / 8.0 - e.c[1] / 8.0;
  e.j11 = cb[1] * w / 8.0 + e.c[1] / 8.0;
  return e;
}

double clenshaw_u(const std::vector<double>& beta, double y) {
  double b1 = 0.0, b2 = 0.0;
  for (std::size_t j = beta.size(); j-- > 0;) {
    const double t = beta[j] + 2.0 * y * b1 - b2;
    b2 = b1;
    b1 = t;
  }
  return b1;  // U_{-1} = 0 so the tail term vanishes
}

}  // namespace

SupportResiduals support_residuals(const FreudPotential& V, std::size_t n, double a, double b) {
  const Field F{V.varying_coeffs(n), V.m()};
  const SupportEval e = eval_support(F, a, b);
  return {e.r0, e.r1};
}

EquilibriumMeasure solve_support(const FreudPotential& V, std::size_t n) {
  if (n == 0) throw DomainError("solve_support: n must be at least 1");
  const int m = V.m();
  const Field F{V.varying_coeffs(n), m};
  double b = std::numbers::sqrt2 * std::pow(1.0 / m, 1.0 / (2.0 * m));
  double a = -b;

  const auto norm = [](const SupportEval& e) { return std::max(std::abs(e.r0), std::abs(e.r1)); };
  SupportEval e = eval_support(F, a, b);
  bool converged = false;
  for (int it = 0; it < 100; ++it) {
    if (norm(e) <= 2e-15) {
      converged = true;
      break;
    }
    double da, db;
    if (V.is_even()) {
      const double d = -e.j10 + e.j11;  // a = -b
      db = -e.r1 / d;
      da = -db;
    } else {
      const double det = e.j00 * e.j11 - e.j01 * e.j10;
      if (det == 0.0 || !std::isfinite(det)) break;
      da = (-e.r0 * e.j11 + e.r1 * e.j01) / det;
      db = (-e.r1 * e.j00 + e.r0 * e.j10) / det;
    }
    // Damped step: keep a < b and reduce the residual.
    double lambda = 1.0;
    SupportEval trial;
    double na = a, nb = b;
    for (int ls = 0; ls < 40; ++ls) {
      na = a + lambda * da;
      nb = b + lambda * db;
      if (nb > na) {
        trial = eval_support(F, na, nb);
        if (norm(trial) < norm(e) || lambda < 1e-6) break;
      }
      lambda *= 0.5;
    }
    if (!(nb > na)) break;
    const double step = std::max(std::abs(na - a), std::abs(nb - b));
    a = na;
    b = nb;
    e = trial;
    if (step <= 1e-16 * std::max(1.0, std::abs(b - a))) {
      converged = norm(e) <= 1e-13;
      break;
    }
  }
  if (!converged && norm(e) > 1e-13) {
    throw SupportSolveError("solve_support: endpoint Newton did not converge", a, b);
  }
  if (V.is_even()) a = -b;

  EquilibriumMeasure mu;
  mu.a = a;
  mu.b = b;
  mu.n_param = n;
  mu.beta.assign(static_cast<std::size_t>(2 * m - 1), 0.0);
  for (int j = 0; j <= 2 * m - 2; ++j) {
    mu.beta[static_cast<std::size_t>(j)] = e.c[static_cast<std::size_t>(j + 1)] / (kPi * (b - a));
    if (V.is_even() && j % 2 == 1) mu.beta[static_cast<std::size_t>(j)] = 0.0;
  }

  // Single-interval check: density must stay nonnegative.
  double peak = 0.0;
  double worst = 0.0;
  for (int i = 1; i < 1000; ++i) {
    const double x = a + (b - a) * i / 1000.0;
    const double d = density(mu, x);
    peak = std::max(peak, d);
    worst = std::min(worst, d);
  }
  if (worst < -1e-13 * std::max(1.0, peak)) {
    throw UnsupportedRegimeError("solve_support: density is negative, support is not one interval");
  }
  return mu;
}

double density(const EquilibriumMeasure& mu, double x) {
  if (!(x > mu.a && x < mu.b)) return 0.0;
  return std::sqrt((mu.b - x) * (x - mu.a)) * clenshaw_u(mu.beta, mu.to_unit(x));
}

std::vector<double> density_t_coeffs(const EquilibriumMeasure& mu) {
  const std::size_t nb = mu.beta.size();
  std::vector<double> g(nb + 2, 0.0);
  const auto beta = [&](std::ptrdiff_t j) {
    return (j >= 0 && j < static_cast<std::ptrdiff_t>(nb)) ? mu.beta[static_cast<std::size_t>(j)]
                                                           : 0.0;
  };
  for (std::size_t k = 0; k < g.size(); ++k) {
    const auto kk = static_cast<std::ptrdiff_t>(k);
    g[k] = 0.5 * (beta(kk) - beta(kk - 2));
  }
  return g;
}

double density_from_t(const EquilibriumMeasure& mu, double x) {
  if (!(x > mu.a && x < mu.b)) return 0.0;
  const double y = mu.to_unit(x);
  const double th = std::acos(y);
  const auto g = density_t_coeffs(mu);
  double s = 0.0;
  for (std::size_t k = 0; k < g.size(); ++k) s += g[k] * std::cos(static_cast<double>(k) * th);
  return 0.5 * (mu.b - mu.a) * s / std::sqrt(1.0 - y * y);
}

double cdf(const EquilibriumMeasure& mu, double x) {
  if (x <= mu.a) return 0.0;
  if (x >= mu.b) return 1.0;
  const double th = std::acos(std::clamp(mu.to_unit(x), -1.0, 1.0));
  const auto g = density_t_coeffs(mu);
  double s = g[0] * (kPi - th);
  for (std::size_t k = 1; k < g.size(); ++k) {
    const double kk = static_cast<double>(k);
    s -= g[k] * std::sin(kk * th) / kk;
  }
  const double w = mu.b - mu.a;
  return std::clamp(w * w / 4.0 * s, 0.0, 1.0);
}

double effective_potential_gap(const EquilibriumMeasure& mu, double x) {
  if (x >= mu.a && x <= mu.b) return 0.0;
  // Outside the support the derivative is 2 pi sqrt((x-a)(x-b)) sum beta_j U_j,
  // integrated from the nearest endpoint with y = e + s^2 to absorb the root.
  const double e = x > mu.b ? mu.b : mu.a;
  const double sign = x > mu.b ? 1.0 : -1.0;
  const double smax = std::sqrt(std::abs(x - e));
  static constexpr double gx[] = {-0.9602898564975363, -0.7966664774136267, -0.5255324099163290,
                                  -0.1834346424956498, 0.1834346424956498,  0.5255324099163290,
                                  0.7966664774136267,  0.9602898564975363};
  static constexpr double gw[] = {0.1012285362903763, 0.2223810344533745, 0.3137066458778873,
                                  0.3626837833783620, 0.3626837833783620, 0.3137066458778873,
                                  0.2223810344533745, 0.1012285362903763};
  constexpr int kPanels = 16;
  double total = 0.0;
  for (int p = 0; p < kPanels; ++p) {
    const double lo = smax * p / kPanels;
    const double hi = smax * (p + 1) / kPanels;
    for (int i = 0; i < 8; ++i) {
      const double s = 0.5 * (lo + hi) + 0.5 * (hi - lo) * gx[i];
      const double y = e + sign * s * s;
      const double slope = 2.0 * kPi * std::sqrt((y - mu.a) * (y - mu.b)) *
                           clenshaw_u(mu.beta, mu.to_unit(y));
      total += 0.5 * (hi - lo) * gw[i] * std::abs(slope) * 2.0 * s;
    }
  }
  return total;
}

double inverse_cdf(const EquilibriumMeasure& mu, double y) {
  if (!(y > 0.0 && y < 1.0)) throw DomainError("inverse_cdf: y must lie in (0, 1)");
  double lo = mu.a;
  double hi = mu.b;
  double x = mu.a + y * (mu.b - mu.a);
  for (int it = 0; it < 200; ++it) {
    const double f = cdf(mu, x) - y;
    if (f == 0.0) return x;
    if (f < 0.0) lo = x; else hi = x;
    const double d = density(mu, x);
    double next = d > 0.0 ? x - f / d : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - x) <= 2e-16 * std::max(1.0, std::abs(x)) ||
        hi - lo <= 4e-16 * std::max(1.0, std::abs(x))) {
      return next;
    }
    x = next;
  }
  return x;
}

double initial_guess_general(const EquilibriumMeasure& mu, std::size_t n, std::size_t k) {
  const double nn = static_cast<double>(n);
  const double kk = static_cast<double>(k);
  const double gk = k == n ? mu.b : inverse_cdf(mu, kk / nn);
  const double s = std::asin(std::clamp(mu.to_unit(gk), -1.0, 1.0));
  const double arg = (2.0 * kk - 1.0) / (2.0 * nn) - s / (2.0 * kPi * nn);
  return inverse_cdf(mu, arg);
}

std::vector<double> initial_guesses_general(const EquilibriumMeasure& mu, std::size_t n) {
  if (n == 0) throw DomainError("initial_guesses_general: n must be at least 1");
  std::vector<double> g(n);
  for (std::size_t k = 1; k <= n; ++k) g[k - 1] = initial_guess_general(mu, n, k);
  return g;
}

SubsampleThreshold subsample_threshold(const FreudPotential& V, std::size_t n, double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw DomainError("subsample_threshold: eps must lie in (0, 1)");
  if (n == 0) throw DomainError("subsample_threshold: n must be at least 1");
  const EquilibriumMeasure mu = solve_support(V, n);
  const double nn = static_cast<double>(n);
  const double m2 = 2.0 * V.m();
  const double level = -std::log(eps) - std::log(nn) + std::log(kPi * std::pow(2.0, 1.5));

  SubsampleThreshold out{};
  if (V.is_monomial()) {
    const double r = level > 0.0 ? std::pow(nn, -1.0 / m2) * std::pow(level, 1.0 / m2) : 0.0;
    out.Rn = out.Rn_right = r;
  } else {
    // Largest R with V(+-R n^{1/(2m)}) <= level on each side.
    const double s = V.scale(n);
    const auto largest = [&](double sign) {
      if (level <= 0.0) return 0.0;
      double hi = 1.0;
      while (V(sign * hi * s) <= level) hi *= 2.0;
      // Scan down from hi for the last crossing, then bisect.
      constexpr int kScan = 2000;
      double lo = 0.0;
      for (int i = kScan; i >= 0; --i) {
        const double r = hi * i / kScan;
        if (V(sign * r * s) <= level) {
          lo = r;
          hi = hi * (i + 1) / kScan;
          break;
        }
      }
      for (int it = 0; it < 200 && hi - lo > 1e-16 * hi; ++it) {
        const double midr = 0.5 * (lo + hi);
        if (V(sign * midr * s) <= level) lo = midr; else hi = midr;
      }
      return lo;
    };
    out.Rn = largest(-1.0);
    out.Rn_right = largest(1.0);
  }
  out.tau = static_cast<std::size_t>(std::floor(nn * cdf(mu, -out.Rn)));
  out.tau_right = static_cast<std::size_t>(std::floor(nn * (1.0 - cdf(mu, out.Rn_right))));
  return out;
}

}  // namespace fastgh
