#pragma once

#include <cstddef>
#include <vector>

#include "fastgh/quadrature_rule.hpp"

namespace fastgh {

/// Size-dependent constants shared by the Hermite asymptotics.
struct HermiteContext {
  std::size_t n;
  double mu;     // sqrt(2n+1)
  double alpha;  // (n mod 2) - 1/2
  double nu;     // 4 floor(n/2) + 2 alpha + 2, equal to 2n+1

  explicit HermiteContext(std::size_t n);

  /// Number of strictly positive nodes, floor(n/2).
  std::size_t positive_count() const { return n / 2; }
  /// Last centre-relative index that takes the Tricomi guess.
  std::size_t tricomi_split() const;
};

/// Scaled parabolic cylinder value and its derivative in z = sqrt(2) mu t.
struct ScaledUEval {
  double value;
  double derivative;
};

struct ThetaNewtonResult {
  double theta;
  int iterations;     // updates larger than the tolerance
  double residual;    // |U~| at the last evaluation
  double derivative;  // U~' at the last evaluation
};

inline constexpr std::size_t kAsyThreshold = 200;

/// Root of tau - sin(tau) = rhs for rhs in (0, pi].
double solve_tricomi_equation(double rhs);

/// tau_k for the k-th positive node counted from the centre (k = 0 is the
/// zero node of an odd rule).
double tricomi_tau(std::size_t n, std::size_t k);

/// Tricomi node estimate, k counted from the centre.
double tricomi_guess(const HermiteContext& ctx, std::size_t k);

/// Gatteschi node estimate, k counted from the largest node (k = 1).
double gatteschi_guess(const HermiteContext& ctx, std::size_t k);

/// Node estimate in x for the k-th positive node (1-based from the centre),
/// picking Tricomi or Gatteschi by the split index.
double initial_guess_x(const HermiteContext& ctx, std::size_t k);

/// theta = arccos(x/mu) for the positive nodes, ordered from the centre out
/// (theta decreasing). Requires n >= 200.
std::vector<double> initial_guesses_theta(const HermiteContext& ctx);

/// Four-term asymptotic evaluation for theta in (0, pi/2].
ScaledUEval eval_scaled_U(const HermiteContext& ctx, double theta);

/// Newton in theta with tolerance 1e-14 on the update, at most 10 updates.
/// `index` is only used to label a ConvergenceError.
ThetaNewtonResult newton_theta(const HermiteContext& ctx, double theta0,
                               std::size_t index = 0);

/// Asymptotic Gauss-Hermite rule, n >= 200.
QuadratureRule hermite_rule_asy(std::size_t n, bool subsample, Exec exec = Exec::parallel);

/// Dispatcher: recurrence Newton below 200 points, asymptotics above.
QuadratureRule hermite_rule(std::size_t n, bool subsample = false, Exec exec = Exec::parallel);

/// Centre-window size min(ceil(12.5 sqrt n), ceil(n/2)).
std::size_t subsample_extent(std::size_t n);

}  // namespace fastgh
