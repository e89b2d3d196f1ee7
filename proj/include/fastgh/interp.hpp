#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "fastgh/freud_potential.hpp"
#include "fastgh/quadrature_rule.hpp"

namespace fastgh {

/// Second-form barycentric interpolant on Gauss nodes for e^{-V}.
/// Barycentric weights are kept both as doubles normalised to max |lambda| = 1
/// and in log form, since the extreme ones underflow for large n.
struct BarycentricInterpolant {
  std::vector<double> nodes;
  std::vector<double> lambda;
  std::vector<double> log_abs_lambda;
  std::vector<double> samples;
  double c = 1.0;
  // log C with |lambda_j| = C / prod_{k != j} |x_j - x_k|; gives the
  // denominator sum_j lambda_j / (x - x_j) = C / prod_k (x - x_k) without
  // the cancellation of the explicit sum.
  double log_node_constant = 0.0;
  FreudPotential V = FreudPotential::monomial(1);
};

/// lambda_k = c / p_n'(x_k), normalised so max |lambda| = 1 unless c is given.
std::vector<double> bary_weights(const std::vector<double>& dpoly,
                                 std::optional<double> c = std::nullopt);

/// Builds an interpolant from a full Gauss rule carrying log|p_n'(x_k)|.
/// The sign of p_n' alternates and is positive at the largest node.
BarycentricInterpolant make_interpolant(const QuadratureRule& rule, const FreudPotential& V,
                                        const std::function<double(double)>& f);

/// Same with explicit samples.
BarycentricInterpolant make_interpolant(const QuadratureRule& rule, const FreudPotential& V,
                                        std::vector<double> samples);

double eval(const BarycentricInterpolant& p, double x);

/// eval(x) e^{-V(x)/2}.
double eval_weighted(const BarycentricInterpolant& p, double x);

struct LebesgueResult {
  std::vector<double> values;  // Lambda_n(x) on the grid
  double max;
};

/// Weighted Lebesgue function sum_j |l_j(x)| e^{V(x_j)/2 - V(x)/2}.
LebesgueResult lebesgue_weighted(const BarycentricInterpolant& p, const std::vector<double>& grid);

/// Default grid: nodes, midpoints, 10 points per gap, and 10% beyond the hull.
std::vector<double> lebesgue_grid(const BarycentricInterpolant& p);

/// sum_j |l_j(x)|.
double cond_unity(const BarycentricInterpolant& p, double x);

/// e^{-V(x)/2} sum_j |l_j(x)| e^{V(x_j)/2}.
double cond_unity_weighted(const BarycentricInterpolant& p, double x);

}  // namespace fastgh
