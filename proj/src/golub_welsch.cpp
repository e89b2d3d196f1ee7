#include <algorithm>
#include <cmath>
#include <numeric>

#include "fastgh/error.hpp"
#include "fastgh/recurrence.hpp"

namespace fastgh {

QuadratureRule golub_welsch(const RecurrenceCoeffs& coeffs, std::size_t n) {
  if (n == 0) throw DomainError("golub_welsch: n must be at least 1");
  if (coeffs.a.size() < n || coeffs.b.size() < n) {
    throw DomainError("golub_welsch: recurrence coefficients do not cover n");
  }
  std::vector<double> d(coeffs.a.begin(), coeffs.a.begin() + static_cast<std::ptrdiff_t>(n));
  std::vector<double> e(n, 0.0);  // e[i] couples rows i and i+1
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (!(coeffs.b[i + 1] > 0.0)) throw DomainError("golub_welsch: b must be positive");
    e[i] = std::sqrt(coeffs.b[i + 1]);
  }
  std::vector<double> z(n, 0.0);  // first row of the eigenvector matrix
  z[0] = 1.0;

  constexpr double eps = 2.220446049250313e-16;
  for (std::size_t l = 0; l < n; ++l) {
    int iter = 0;
    std::size_t m;
    do {
      for (m = l; m + 1 < n; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= eps * dd) break;
      }
      if (m == l) break;
      if (++iter > 60) throw NumericalError("golub_welsch: QL iteration did not converge");

      double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
      double r = std::hypot(g, 1.0);
      g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
      double s = 1.0, c = 1.0, p = 0.0;
      bool deflated = false;
      for (std::size_t i = m; i-- > l;) {
        double f = s * e[i];
        const double b = c * e[i];
        r = std::hypot(f, g);
        e[i + 1] = r;
        if (r == 0.0) {
          d[i + 1] -= p;
          e[m] = 0.0;
          deflated = true;
          break;
        }
        s = f / r;
        c = g / r;
        g = d[i + 1] - p;
        r = (d[i] - g) * s + 2.0 * c * b;
        p = s * r;
        d[i + 1] = g + p;
        g = c * r - b;
        f = z[i + 1];
        z[i + 1] = s * z[i] + c * f;
        z[i] = c * z[i] - s * f;
      }
      if (deflated) continue;
      d[l] -= p;
      e[l] = g;
      e[m] = 0.0;
    } while (m != l);
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return d[i] < d[j]; });

  QuadratureRule rule;
  rule.n = n;
  rule.method = "gw";
  rule.nodes.resize(n);
  rule.weights.resize(n);
  rule.index.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    rule.nodes[k] = d[order[k]];
    rule.weights[k] = coeffs.mu0 * z[order[k]] * z[order[k]];
    rule.index[k] = k + 1;
  }
  return rule;
}

}  // namespace fastgh
