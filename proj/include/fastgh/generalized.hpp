#pragma once

#include <cstddef>
#include <vector>

#include "fastgh/equilibrium.hpp"
#include "fastgh/freud_potential.hpp"
#include "fastgh/quadrature_rule.hpp"
#include "fastgh/recurrence.hpp"

namespace fastgh {

/// Nodes in the varying-weight scale; physical nodes are tilde * scale.
struct ScaledNodeSet {
  std::vector<double> tilde_nodes;
  double scale = 1.0;
};

/// Evaluates r(x~) = p_n(s x~) e^{-V(s x~)/2} for some normalisation of the
/// degree-n orthogonal polynomial, plus what the weight formula needs. A
/// Riemann-Hilbert backend would implement the same interface.
class WeightedPolyEvaluator {
 public:
  virtual ~WeightedPolyEvaluator() = default;
  /// r and dr/dx~.
  virtual WeightedValue eval(double x_tilde) const = 0;
  /// Physical-unit Gauss weight at a root, in log form.
  virtual double log_weight(double x_tilde) const = 0;
  /// log|p_n'| at the physical point, up to a constant.
  virtual double log_abs_dpoly(double x_tilde) const = 0;
  /// Number of zeros of p_n below x~.
  virtual std::size_t count_below(double x_tilde) const = 0;
  virtual std::size_t degree() const = 0;
  virtual double scale() const = 0;
};

/// Orthonormal-recurrence surrogate; O(n) per evaluation.
class RecurrenceEvaluator final : public WeightedPolyEvaluator {
 public:
  RecurrenceEvaluator(RecurrenceCoeffs coeffs, FreudPotential V, std::size_t n);

  WeightedValue eval(double x_tilde) const override;
  double log_weight(double x_tilde) const override;
  double log_abs_dpoly(double x_tilde) const override;
  std::size_t count_below(double x_tilde) const override;
  std::size_t degree() const override { return n_; }
  double scale() const override { return scale_; }

  const RecurrenceCoeffs& coeffs() const { return coeffs_; }

 private:
  RecurrenceCoeffs coeffs_;
  FreudPotential V_;
  std::size_t n_;
  double scale_;
};

struct GeneralNewtonResult {
  double x_tilde;
  int iterations;
  double residual;
};

/// Newton x~ <- x~ - r/r' from `guess`; stops at |update| <= 1e-14 max(1,|x~|)
/// or after 20 updates. Throws ConvergenceError (labelled with `index`) on
/// failure or when the iterate leaves a neighbourhood of [a, b].
GeneralNewtonResult newton_general(const WeightedPolyEvaluator& ev, double guess,
                                   const EquilibriumMeasure& mu, std::size_t index = 0);

/// Gauss rule for e^{-V(x)}.
QuadratureRule freud_rule(const FreudPotential& V, std::size_t n, bool subsample = false,
                          Exec exec = Exec::parallel);

/// Same, reusing precomputed recurrence coefficients (size > n).
QuadratureRule freud_rule(const FreudPotential& V, std::size_t n, const RecurrenceCoeffs& coeffs,
                          bool subsample = false, Exec exec = Exec::parallel);

/// Any monic even-degree polynomial P: the rule for e^{-P(x)}, obtained by
/// shifting to the minimiser of P.
QuadratureRule freud_rule_general(const std::vector<double>& coeffs, std::size_t n,
                                  bool subsample = false, Exec exec = Exec::parallel);

/// The nodes of a Freud rule back in the varying-weight scale.
ScaledNodeSet to_scaled(const QuadratureRule& rule, const FreudPotential& V);

}  // namespace fastgh
