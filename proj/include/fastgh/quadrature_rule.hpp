#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace fastgh {

/// Selects the serial reference kernel or the OpenMP one. Both produce
/// bit-identical output; the serial path exists for testing and benchmarks.
enum class Exec { serial, parallel };

/// Nodes ascending, weights matching. For a subsampled rule only a centre
/// window of the full n-point rule is present; `index` maps each entry back
/// to its 1-based position in the full rule.
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  std::vector<std::size_t> index;

  std::string weight_tag;
  std::string method;
  std::size_t n = 0;
  bool subsampled = false;

  // Omitted nodes whose weights fall below DBL_MIN, counted on the left and
  // right ends. Equal for symmetric weights.
  std::size_t trivial_skipped = 0;
  std::size_t trivial_skipped_right = 0;

  // w_k e^{x_k^2}; filled by the Hermite paths, empty otherwise.
  std::vector<double> scaled_weights;

  // log|p_n'(x_k)| up to a k-independent constant, where p_n is the degree-n
  // orthogonal polynomial. Empty when the method does not expose it.
  std::vector<double> log_abs_dpoly;

  int max_newton_iterations = 0;

  std::size_t size() const { return nodes.size(); }
};

}  // namespace fastgh
