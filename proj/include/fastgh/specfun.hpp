#pragma once

#include <array>

namespace fastgh::specfun {

/// Ai(x) and Ai'(x) evaluated together; the asymptotic code paths share work.
struct AiryPair {
  double ai;
  double aip;
};

/// Airy function of the first kind. Throws DomainError for non-finite x.
double airy_ai(double x);

/// Derivative of the Airy function. Throws DomainError for non-finite x.
double airy_ai_prime(double x);

AiryPair airy_ai_pair(double x);

/// Ai(-y), Ai'(-y) for y > 10 with the phase xi = (2/3) y^{3/2} supplied by
/// the caller. Callers that know xi more accurately than y (large arguments
/// built from a product) avoid the rounding in forming y^{3/2}.
AiryPair airy_ai_pair_oscillatory(double y, double xi);

/// First ten zeros of Ai, a_1 > a_2 > ... > a_10.
const std::array<double, 10>& airy_zero_table();

/// m-th zero of Ai (m >= 1). Tabulated for m <= 10, asymptotic in
/// s_m = 3 pi (4m - 1) / 8 beyond.
double airy_zero(int m);

/// The six-term large-m expansion, exposed so the table/formula seam can be
/// checked directly.
double airy_zero_asymptotic(int m);

}  // namespace fastgh::specfun
