#pragma once

#include <cstddef>
#include <vector>

#include "fastgh/freud_potential.hpp"

namespace fastgh {

/// Equilibrium measure of the varying field V(x n^{1/(2m)})/n on a single
/// interval: density sqrt((b-x)(x-a)) sum_j beta_j U_j(M(x)).
struct EquilibriumMeasure {
  double a = 0.0;
  double b = 0.0;
  std::vector<double> beta;  // length 2m-1
  std::size_t n_param = 0;

  /// Affine map [a,b] -> [-1,1].
  double to_unit(double x) const { return (2.0 * x - a - b) / (b - a); }
};

/// Residuals of the two endpoint conditions at (a, b): the T_0 coefficient
/// of V_n' and the unit-mass condition.
struct SupportResiduals {
  double t0;
  double mass;
};

SupportResiduals support_residuals(const FreudPotential& V, std::size_t n, double a, double b);

EquilibriumMeasure solve_support(const FreudPotential& V, std::size_t n);

double density(const EquilibriumMeasure& mu, double x);

/// Coefficients gamma_0..gamma_{2m} of the density in the T basis against
/// (1-t^2)^{-1/2}, i.e. gamma_k = (beta_k - beta_{k-2}) / 2.
std::vector<double> density_t_coeffs(const EquilibriumMeasure& mu);

/// Density rebuilt from the T-basis coefficients (used to check the
/// basis conversion).
double density_from_t(const EquilibriumMeasure& mu, double x);

double cdf(const EquilibriumMeasure& mu, double x);

/// Rise of the effective potential V_n(x) - 2 int log|x-t| dpsi(t) above its
/// constant value on [a, b]; zero on the support.
double effective_potential_gap(const EquilibriumMeasure& mu, double x);

double inverse_cdf(const EquilibriumMeasure& mu, double y);

/// Ascending node estimates in the varying-weight scale.
std::vector<double> initial_guesses_general(const EquilibriumMeasure& mu, std::size_t n);

/// Estimate for the k-th node (1-based) alone.
double initial_guess_general(const EquilibriumMeasure& mu, std::size_t n, std::size_t k);

struct SubsampleThreshold {
  std::size_t tau;        // left threshold
  double Rn;              // left bound, measured on the negative axis as a positive number
  std::size_t tau_right;  // right threshold
  double Rn_right;
};

/// Varying-scale threshold for weights of e^{-n V_n}: indices below tau (or
/// above n + 1 - tau_right) carry weights below eps.
SubsampleThreshold subsample_threshold(const FreudPotential& V, std::size_t n, double eps);

}  // namespace fastgh
