#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>

#include "cli/cli.hpp"

namespace fastgh::cli {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_rule_csv(std::ostream& os, const QuadratureRule& rule, const nlohmann::json& meta) {
  for (const auto& [k, v] : meta.items()) os << "# " << k << '=' << v.dump() << '\n';
  os << "k,node,weight\n";
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const std::size_t k = rule.index.empty() ? i + 1 : rule.index[i];
    os << k << ',' << format_double(rule.nodes[i]) << ',' << format_double(rule.weights[i]) << '\n';
  }
}

nlohmann::json rule_to_json(const QuadratureRule& rule, const nlohmann::json& meta) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const std::size_t k = rule.index.empty() ? i + 1 : rule.index[i];
    rows.push_back({{"k", k}, {"node", rule.nodes[i]}, {"weight", rule.weights[i]}});
  }
  return {{"metadata", meta}, {"rows", rows}};
}

std::vector<CsvRow> read_rule_csv(std::istream& is) {
  std::vector<CsvRow> rows;
  std::string line;
  bool header = false;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header) {
      if (line != "k,node,weight") throw UsageError("unexpected CSV header: " + line);
      header = true;
      continue;
    }
    std::stringstream ss(line);
    std::string a, b, c;
    std::getline(ss, a, ',');
    std::getline(ss, b, ',');
    std::getline(ss, c, ',');
    // strtod rather than stod: subnormal weights must not throw.
    rows.push_back({std::stoul(a), std::strtod(b.c_str(), nullptr), std::strtod(c.c_str(), nullptr)});
  }
  return rows;
}

}  // namespace fastgh::cli
