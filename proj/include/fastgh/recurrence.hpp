#pragma once

#include <cstddef>
#include <vector>

#include "fastgh/freud_potential.hpp"
#include "fastgh/quadrature_rule.hpp"

namespace fastgh {

/// Monic three-term recurrence pi_{k+1} = (x - a_k) pi_k - b_k pi_{k-1}.
/// b[0] holds the zeroth moment, repeated in mu0.
struct RecurrenceCoeffs {
  std::vector<double> a;
  std::vector<double> b;
  double mu0 = 0.0;

  std::size_t size() const { return a.size(); }
};

/// Value of an orthonormal polynomial pair in the form mantissa * e^{log_scale}.
/// `value` is p_n, `prev` is p_{n-1}, `deriv` is p_n'. Mantissas stay below
/// 1e2 in magnitude.
struct ScaledPoly {
  double value;
  double prev;
  double deriv;
  double log_scale;
};

struct WeightedValue {
  double p;
  double dp;
};

/// Monic Hermite coefficients a_k = 0, b_k = k/2, b_0 = sqrt(pi).
RecurrenceCoeffs hermite_coeffs(std::size_t count);

/// Orthonormal Hermite polynomial part p_n(x), scaled.
ScaledPoly hermite_poly_scaled(std::size_t n, double x);

/// h_n(x) e^{-x^2/2} for the orthonormal Hermite function and its derivative.
WeightedValue hermite_eval_scaled(std::size_t n, double x);

/// Newton on the recurrence; O(n^2).
QuadratureRule hermite_rule_rec(std::size_t n, Exec exec = Exec::parallel);

/// Symmetric tridiagonal QL with first-row eigenvector accumulation.
QuadratureRule golub_welsch(const RecurrenceCoeffs& coeffs, std::size_t n);

/// Orthonormal recurrence for a general weight; needs coeffs.size() > n.
ScaledPoly freud_poly_scaled(const RecurrenceCoeffs& coeffs, std::size_t n, double x);

/// p_n(x) e^{-V(x)/2} and its x-derivative; needs coeffs.size() > n.
WeightedValue freud_eval_scaled(const RecurrenceCoeffs& coeffs, const FreudPotential& V,
                                std::size_t n, double x);

/// Number of zeros of p_n below x, from sign changes of p_0..p_n.
std::size_t sturm_count_below(const RecurrenceCoeffs& coeffs, std::size_t n, double x);

/// Discretised Stieltjes procedure for e^{-V}: coefficients a_k, b_k for
/// k = 0..count-1. The midpoint discretisation is doubled until two
/// successive sizes agree to `tol` relative.
RecurrenceCoeffs stieltjes_coeffs(const FreudPotential& V, std::size_t count,
                                  double tol = 1e-12);

/// Single discretisation with an explicit auxiliary size (testing and the
/// convergence certificate).
RecurrenceCoeffs stieltjes_coeffs_fixed(const FreudPotential& V, std::size_t count,
                                        std::size_t aux_size);

}  // namespace fastgh
