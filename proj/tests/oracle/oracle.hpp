#pragma once

// Reference values in extended precision, independent of the library's
// double-precision code paths.

#include <cstddef>
#include <vector>

namespace oracle {

struct Rule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Gauss-Hermite rule by Newton on the orthonormal recurrence in 50-digit
// arithmetic. `seeds` (ascending, size n) only need to lie in the right
// basins; every root is re-checked with a Sturm count. Throws on failure.
Rule hermite_rule(std::size_t n, const std::vector<double>& seeds);

// Orthonormal Hermite function h_n(x) e^{-x^2/2} and its x-derivative.
struct Pair {
  double value;
  double derivative;
};
Pair hermite_function(std::size_t n, double x);

// Scaled parabolic cylinder value and z-derivative (z = sqrt(2) x) built
// from H_n, normalised the same way as the asymptotic expansion.
Pair scaled_U(std::size_t n, double x);

// Airy Ai and Ai' by the Maclaurin series in 100-digit arithmetic (|x| <= 12).
Pair airy(double x);
// m-th zero of Ai by bisection on the series.
double airy_zero(int m);

// Root of t - sin t = rhs by bisection in extended precision.
double kepler_root(double rhs);

// int x^k e^{-x^{2m}} dx over the real line.
double freud_moment(int m, int k);
// int x^k e^{-P(x)} dx for a general monic polynomial (constant first) by
// adaptive Gauss-Kronrod in extended precision.
double poly_weight_moment(const std::vector<double>& P, int k);

// Monic recurrence coefficients b_1..b_{count-1} (b_0 = mu0 first) for
// e^{-x^{2m}} from exact moments (Chebyshev algorithm, 300 digits).
std::vector<double> freud_b(int m, std::size_t count);

// Gauss rule for e^{-x^{2m}}: Jacobi-matrix eigenvalues by Sturm bisection
// and Christoffel weights, all in 300-digit arithmetic.
Rule freud_rule(int m, std::size_t n);

}  // namespace oracle
