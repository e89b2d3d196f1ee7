#include "fastgh/freud_potential.hpp"

#include <cmath>
#include <sstream>

#include "fastgh/error.hpp"

namespace fastgh {

double poly_eval(const std::vector<double>& c, double x) {
  double r = 0.0;
  for (std::size_t i = c.size(); i-- > 0;) r = r * x + c[i];
  return r;
}

double poly_deriv(const std::vector<double>& c, double x) {
  double r = 0.0;
  for (std::size_t i = c.size(); i-- > 1;) r = r * x + static_cast<double>(i) * c[i];
  return r;
}

namespace {

double poly_deriv2(const std::vector<double>& c, double x) {
  double r = 0.0;
  for (std::size_t i = c.size(); i-- > 2;) {
    r = r * x + static_cast<double>(i) * static_cast<double>(i - 1) * c[i];
  }
  return r;
}

void check_shape(const std::vector<double>& c) {
  if (c.size() < 3) throw DomainError("potential: degree must be at least 2");
  for (double v : c) {
    if (!std::isfinite(v)) throw DomainError("potential: non-finite coefficient");
  }
  if ((c.size() - 1) % 2 != 0) throw DomainError("potential: degree must be even");
  if (c.back() != 1.0) throw DomainError("potential: leading coefficient must be 1");
}

}  // namespace

FreudPotential::FreudPotential(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
  while (coeffs_.size() > 1 && coeffs_.back() == 0.0) coeffs_.pop_back();
  check_shape(coeffs_);
  if (coeffs_[0] != 0.0 || coeffs_[1] != 0.0) {
    throw DomainError("potential: V(0) and V'(0) must vanish");
  }
  m_ = static_cast<int>((coeffs_.size() - 1) / 2);
  even_ = true;
  monomial_ = true;
  for (std::size_t i = 0; i + 1 < coeffs_.size(); ++i) {
    if (coeffs_[i] != 0.0) {
      monomial_ = false;
      if (i % 2 == 1) even_ = false;
    }
  }
}

FreudPotential FreudPotential::monomial(int m) {
  if (m < 1) throw DomainError("potential: m must be at least 1");
  std::vector<double> c(static_cast<std::size_t>(2 * m + 1), 0.0);
  c.back() = 1.0;
  return FreudPotential(std::move(c));
}

double FreudPotential::operator()(double x) const { return poly_eval(coeffs_, x); }
double FreudPotential::derivative(double x) const { return poly_deriv(coeffs_, x); }
double FreudPotential::second_derivative(double x) const { return poly_deriv2(coeffs_, x); }

double FreudPotential::scale(std::size_t n) const {
  return std::pow(static_cast<double>(n), 1.0 / (2.0 * m_));
}

std::vector<double> FreudPotential::varying_coeffs(std::size_t n) const {
  std::vector<double> c(coeffs_.size());
  const double s = scale(n);
  const double nn = static_cast<double>(n);
  double sp = 1.0;
  for (std::size_t j = 0; j < c.size(); ++j) {
    c[j] = coeffs_[j] * sp / nn;
    sp *= s;
  }
  c.back() = 1.0;
  return c;
}

std::string FreudPotential::describe() const {
  std::ostringstream os;
  if (monomial_) {
    os << "x^" << degree();
    return os.str();
  }
  os.precision(17);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (i) os << ',';
    os << coeffs_[i];
  }
  return os.str();
}

PotentialShift normalize_potential(const std::vector<double>& coeffs_in) {
  std::vector<double> c = coeffs_in;
  while (c.size() > 1 && c.back() == 0.0) c.pop_back();
  check_shape(c);

  // All critical points lie within the Cauchy bound of P'.
  const std::size_t deg = c.size() - 1;
  double bound = 0.0;
  for (std::size_t i = 1; i < deg; ++i) {
    bound = std::max(bound, std::abs(static_cast<double>(i) * c[i]) / static_cast<double>(deg));
  }
  bound += 1.0;

  constexpr int kGrid = 4000;
  double best_x = 0.0;
  double best_v = poly_eval(c, 0.0);
  for (int i = 0; i <= kGrid; ++i) {
    const double x = -bound + 2.0 * bound * i / kGrid;
    const double v = poly_eval(c, x);
    if (v < best_v) {
      best_v = v;
      best_x = x;
    }
  }
  // Bracket the sign change of P' around the grid minimum and refine.
  const double h = 2.0 * bound / kGrid;
  double lo = best_x - h;
  double hi = best_x + h;
  double x = best_x;
  if (poly_deriv(c, lo) < 0.0 && poly_deriv(c, hi) > 0.0) {
    for (int it = 0; it < 200; ++it) {
      const double d1 = poly_deriv(c, x);
      if (d1 == 0.0) break;
      if (d1 < 0.0) lo = x; else hi = x;
      const double d2 = poly_deriv2(c, x);
      double next = d2 > 0.0 ? x - d1 / d2 : 0.5 * (lo + hi);
      if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
      if (std::abs(next - x) <= 1e-16 * std::max(1.0, std::abs(x)) || hi - lo < 1e-300) {
        x = next;
        break;
      }
      x = next;
    }
  } else if (best_x != 0.0 || poly_deriv(c, 0.0) != 0.0) {
    // Minimum at the grid edge is impossible for a monic even polynomial
    // with the bound above; fall back to the grid point.
    x = best_x;
  }

  // Taylor shift: coefficients of P(y + x).
  std::vector<double> s = c;
  for (std::size_t k = 0; k < deg; ++k) {
    for (std::size_t i = deg - 1; i + 1 > k; --i) {
      s[i] += x * s[i + 1];
      if (i == 0) break;
    }
  }
  const double offset = s[0];
  s[0] = 0.0;
  s[1] = 0.0;
  s.back() = 1.0;
  return {FreudPotential(std::move(s)), x, offset};
}

}  // namespace fastgh
