#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace fastgh {

/// Monic polynomial potential of degree 2m with V(0) = V'(0) = 0.
/// Coefficients are stored constant term first.
class FreudPotential {
 public:
  /// Validates the invariants; throws DomainError otherwise.
  explicit FreudPotential(std::vector<double> coeffs);

  /// x^{2m}.
  static FreudPotential monomial(int m);

  const std::vector<double>& coeffs() const { return coeffs_; }
  int m() const { return m_; }
  int degree() const { return 2 * m_; }
  bool is_even() const { return even_; }
  bool is_monomial() const { return monomial_; }

  double operator()(double x) const;
  double derivative(double x) const;
  double second_derivative(double x) const;

  /// Coefficients of V(x s^{...}) in the varying-weight field
  /// V_n(x) = V(x n^{1/(2m)}) / n.
  std::vector<double> varying_coeffs(std::size_t n) const;

  /// n^{1/(2m)}.
  double scale(std::size_t n) const;

  /// Short descriptor, e.g. "x^4" or "0,0,1,0,1".
  std::string describe() const;

 private:
  std::vector<double> coeffs_;
  int m_ = 1;
  bool even_ = true;
  bool monomial_ = true;
};

/// Result of moving a general monic even-degree polynomial P to a FreudPotential:
/// P(y + shift) = V(y) + offset, with shift the global minimiser of P.
struct PotentialShift {
  FreudPotential V;
  double shift;
  double offset;
};

/// Accepts any monic even-degree polynomial (constant term first).
PotentialShift normalize_potential(const std::vector<double>& coeffs);

/// Horner evaluation helpers on constant-first coefficient vectors.
double poly_eval(const std::vector<double>& c, double x);
double poly_deriv(const std::vector<double>& c, double x);

}  // namespace fastgh
