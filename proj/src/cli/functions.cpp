#include <algorithm>
#include <cmath>
#include <numbers>

#include "cli/cli.hpp"
#include "fastgh/freud_potential.hpp"

namespace fastgh::cli {

const std::map<std::string, Integrand>& function_registry() {
  static const std::map<std::string, Integrand> reg = {
      {"one", [](double) { return 1.0; }},
      {"x", [](double x) { return x; }},
      {"x2", [](double x) { return x * x; }},
      {"x4", [](double x) { return x * x * x * x; }},
      {"cos", [](double x) { return std::cos(x); }},
      {"abs", [](double x) { return std::abs(x); }},
      {"runge", [](double x) { return 1.0 / (1.0 + 25.0 * x * x); }},
      {"runge-cos", [](double x) { return std::exp(std::cos(10.0 * x)) / (1.0 + 25.0 * x * x); }},
  };
  return reg;
}

const Integrand& lookup_function(const std::string& id) {
  const auto& reg = function_registry();
  const auto it = reg.find(id);
  if (it == reg.end()) {
    std::string known;
    for (const auto& [k, v] : reg) known += (known.empty() ? "" : ", ") + k;
    throw UsageError("unknown function '" + id + "' (known: " + known + ")");
  }
  return it->second;
}

double reference_integral(const Integrand& f, const std::vector<double>& P, std::size_t points) {
  // Interval where P exceeds its minimum on the grid by 80 on both sides.
  const auto reach = [&](double dir) {
    double r = 1.0;
    while (poly_eval(P, dir * r) - poly_eval(P, 0.0) < 80.0) r *= 1.25;
    return dir * r;
  };
  const double lo = reach(-1.0);
  const double hi = reach(1.0);
  const std::size_t N = std::max<std::size_t>(points, 2) - 1;
  const double pi = std::numbers::pi;
  // Clenshaw-Curtis weights on [-1, 1].
  double sum = 0.0;
  for (std::size_t j = 0; j <= N; ++j) {
    const double th = pi * static_cast<double>(j) / static_cast<double>(N);
    double w = 0.0;
    for (std::size_t k = 0; k <= N / 2; ++k) {
      const double bk = (k == 0 || 2 * k == N) ? 1.0 : 2.0;
      w += bk / (1.0 - 4.0 * static_cast<double>(k * k)) * std::cos(2.0 * static_cast<double>(k) * th);
    }
    const double cj = (j == 0 || j == N) ? 1.0 : 2.0;
    w *= cj / static_cast<double>(N);
    const double x = 0.5 * (lo + hi) + 0.5 * (hi - lo) * std::cos(th);
    sum += w * f(x) * std::exp(-poly_eval(P, x));
  }
  return 0.5 * (hi - lo) * sum;
}

}  // namespace fastgh::cli
