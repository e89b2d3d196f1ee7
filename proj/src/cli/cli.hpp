#pragma once

#include <functional>
#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "fastgh/quadrature_rule.hpp"

namespace fastgh::cli {

/// Bad flags or values; maps to exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Entry point shared by the executable and the tests.
/// Returns 0 on success, 1 on numerical failure, 2 on usage errors.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// Potential grammar: "x^k" or a constant-first coefficient list "c0,c1,...".
// The polynomial must be monic of even degree >= 2.
std::vector<double> parse_potential(const std::string& spec);

// Fixed registry of integrands.
using Integrand = std::function<double(double)>;
const std::map<std::string, Integrand>& function_registry();
const Integrand& lookup_function(const std::string& id);

/// int f(x) e^{-P(x)} dx by Clenshaw-Curtis on an interval where e^{-P}
/// has dropped below e^{-80}.
double reference_integral(const Integrand& f, const std::vector<double>& P, std::size_t points);

// Output.
std::string format_double(double v);
void write_rule_csv(std::ostream& os, const QuadratureRule& rule, const nlohmann::json& meta);
nlohmann::json rule_to_json(const QuadratureRule& rule, const nlohmann::json& meta);

struct CsvRow {
  std::size_t k;
  double node;
  double weight;
};
/// Reads what write_rule_csv produced, skipping '#' metadata lines.
std::vector<CsvRow> read_rule_csv(std::istream& is);

}  // namespace fastgh::cli
