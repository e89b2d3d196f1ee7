#include <algorithm>
#include <array>
#include <cfloat>
#include <chrono>
#include <cmath>
#include <fstream>
#include <ostream>

#include <CLI11.hpp>

#include "cli/cli.hpp"
#include "fastgh/equilibrium.hpp"
#include "fastgh/error.hpp"
#include "fastgh/freud_potential.hpp"
#include "fastgh/generalized.hpp"
#include "fastgh/hermite_asy.hpp"
#include "fastgh/recurrence.hpp"

namespace fastgh::cli {
namespace {

using json = nlohmann::json;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

Exec parse_exec(const std::string& s) {
  if (s == "parallel") return Exec::parallel;
  if (s == "serial") return Exec::serial;
  throw UsageError("--exec must be serial or parallel");
}

// Drops the leading and trailing weights below the smallest normal double.
QuadratureRule trim_underflow(QuadratureRule rule) {
  std::size_t lo = 0;
  std::size_t hi = rule.size();
  while (lo < hi && rule.weights[lo] < DBL_MIN) ++lo;
  while (hi > lo && rule.weights[hi - 1] < DBL_MIN) --hi;
  const auto cut = [&](auto& v) {
    if (v.size() != rule.nodes.size()) return;
    v.erase(v.begin() + static_cast<std::ptrdiff_t>(hi), v.end());
    v.erase(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(lo));
  };
  const std::size_t n_all = rule.nodes.size();
  cut(rule.index);
  cut(rule.log_abs_dpoly);
  cut(rule.scaled_weights);
  rule.weights.erase(rule.weights.begin() + static_cast<std::ptrdiff_t>(hi), rule.weights.end());
  rule.weights.erase(rule.weights.begin(), rule.weights.begin() + static_cast<std::ptrdiff_t>(lo));
  rule.nodes.erase(rule.nodes.begin() + static_cast<std::ptrdiff_t>(hi), rule.nodes.end());
  rule.nodes.erase(rule.nodes.begin(), rule.nodes.begin() + static_cast<std::ptrdiff_t>(lo));
  rule.subsampled = true;
  rule.trivial_skipped = lo;
  rule.trivial_skipped_right = n_all - hi;
  return rule;
}

struct RuleRequest {
  std::size_t n = 0;
  std::string weight = "hermite";
  std::string V;
  std::string method = "auto";
  bool subsample = false;
  std::string exec = "parallel";
};

std::vector<double> potential_of(const RuleRequest& r) {
  if (r.weight == "hermite") {
    if (!r.V.empty()) throw UsageError("--V only applies to --weight freud");
    return {0.0, 0.0, 1.0};
  }
  if (r.weight != "freud") throw UsageError("--weight must be hermite or freud");
  if (r.V.empty()) throw UsageError("--weight freud needs --V");
  return parse_potential(r.V);
}

QuadratureRule compute_rule(const RuleRequest& r) {
  if (r.n == 0) throw UsageError("--n must be at least 1");
  const Exec exec = parse_exec(r.exec);
  const std::vector<double> P = potential_of(r);
  if (r.weight == "hermite") {
    if (r.method == "auto") return hermite_rule(r.n, r.subsample, exec);
    if (r.method == "asy") {
      if (r.n < kAsyThreshold) {
        throw UsageError("--method asy needs --n >= " + std::to_string(kAsyThreshold));
      }
      return hermite_rule_asy(r.n, r.subsample, exec);
    }
    QuadratureRule rule;
    if (r.method == "rec") {
      rule = hermite_rule_rec(r.n, exec);
    } else if (r.method == "gw") {
      rule = golub_welsch(hermite_coeffs(r.n), r.n);
      rule.weight_tag = "hermite";
    } else {
      throw UsageError("--method must be auto, asy, rec or gw");
    }
    return r.subsample ? trim_underflow(std::move(rule)) : rule;
  }
  if (r.method == "auto" || r.method == "newton") {
    if (P[0] == 0.0 && P[1] == 0.0) return freud_rule(FreudPotential(P), r.n, r.subsample, exec);
    return freud_rule_general(P, r.n, r.subsample, exec);
  }
  if (r.method != "gw") throw UsageError("--method for freud weights must be auto, newton or gw");
  const PotentialShift ps = normalize_potential(P);
  QuadratureRule rule = golub_welsch(stieltjes_coeffs(ps.V, r.n), r.n);
  rule.weight_tag = "freud:" + ps.V.describe();
  const double f = std::exp(-ps.offset);
  for (double& x : rule.nodes) x += ps.shift;
  for (double& w : rule.weights) w *= f;
  return r.subsample ? trim_underflow(std::move(rule)) : rule;
}

void add_rule_flags(CLI::App* sub, RuleRequest& r) {
  sub->add_option("--n", r.n, "number of nodes")->required();
  sub->add_option("--weight", r.weight, "hermite or freud");
  sub->add_option("--V", r.V, "potential: x^k or c0,c1,...,1");
  sub->add_option("--method", r.method, "auto, asy, rec, gw (hermite); auto, newton, gw (freud)");
  sub->add_flag("--subsample", r.subsample, "skip nodes whose weights underflow");
  sub->add_option("--exec", r.exec, "serial or parallel");
}

// Writes to --out, or to `out` when the path is "-".
template <class F>
void with_output(const std::string& path, std::ostream& out, F&& body) {
  if (path == "-") {
    body(out);
    return;
  }
  std::ofstream f(path);
  if (!f) throw UsageError("cannot open output file " + path);
  body(f);
}

json rule_meta(const QuadratureRule& rule, const RuleRequest& r, double wall) {
  return {{"n", rule.n},
          {"weight_tag", rule.weight_tag},
          {"method", rule.method},
          {"subsample", rule.subsampled},
          {"trivial_skipped", rule.trivial_skipped},
          {"trivial_skipped_right", rule.trivial_skipped_right},
          {"rows", rule.size()},
          {"max_newton_iterations", rule.max_newton_iterations},
          {"exec", r.exec},
          {"wall_time_s", wall}};
}

void check_format(const std::string& f) {
  if (f != "csv" && f != "json") throw UsageError("--format must be csv or json");
}

int cmd_nodes(const RuleRequest& r, const std::string& format, const std::string& path,
              std::ostream& out) {
  check_format(format);
  const auto t0 = Clock::now();
  const QuadratureRule rule = compute_rule(r);
  const json meta = rule_meta(rule, r, seconds_since(t0));
  with_output(path, out, [&](std::ostream& os) {
    if (format == "csv") write_rule_csv(os, rule, meta);
    else os << rule_to_json(rule, meta).dump(2) << '\n';
  });
  return 0;
}

struct IntegrateOpts {
  std::string f;
  bool reference = false;
  std::size_t reference_points = 4097;
  std::string format = "csv";
};

int cmd_integrate(const RuleRequest& r, const IntegrateOpts& o, std::ostream& out) {
  check_format(o.format);
  const Integrand& f = lookup_function(o.f);
  const std::vector<double> P = potential_of(r);
  const QuadratureRule rule = compute_rule(r);
  double value = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i) value += rule.weights[i] * f(rule.nodes[i]);
  json row = {{"f", o.f}, {"n", r.n}, {"value", value}};
  if (o.reference) {
    const double ref = reference_integral(f, P, o.reference_points);
    row["reference"] = ref;
    row["abs_error"] = std::abs(value - ref);
  }
  if (o.format == "json") {
    out << json{{"metadata", {{"weight_tag", rule.weight_tag}, {"method", rule.method}}},
                {"rows", json::array({row})}}
               .dump(2)
        << '\n';
    return 0;
  }
  out << "f,n,value" << (o.reference ? ",reference,abs_error" : "") << '\n';
  out << o.f << ',' << r.n << ',' << format_double(value);
  if (o.reference) {
    out << ',' << format_double(row["reference"].get<double>()) << ','
        << format_double(row["abs_error"].get<double>());
  }
  out << '\n';
  return 0;
}

struct BenchOpts {
  std::vector<std::size_t> sizes;
  std::vector<std::string> methods{"asy"};
  int repeats = 3;
  std::string V = "x^8";
  std::string exec = "parallel";
};

int cmd_bench(const BenchOpts& o, std::ostream& out) {
  if (o.sizes.empty()) throw UsageError("--sizes is required");
  if (o.repeats < 1) throw UsageError("--repeats must be at least 1");
  const Exec exec = parse_exec(o.exec);
  out << "method,n,repeats,median_s,min_s\n";
  for (const std::string& m : o.methods) {
    std::function<void(std::size_t)> run;
    if (m == "asy" || m == "asy-sub") {
      const bool sub = m == "asy-sub";
      run = [=](std::size_t n) { hermite_rule_asy(n, sub, exec); };
    } else if (m == "rec") {
      run = [=](std::size_t n) { hermite_rule_rec(n, exec); };
    } else if (m == "gw") {
      run = [](std::size_t n) { golub_welsch(hermite_coeffs(n), n); };
    } else if (m == "freud" || m == "freud-sub") {
      const bool sub = m == "freud-sub";
      const FreudPotential V(parse_potential(o.V));
      run = [=](std::size_t n) { freud_rule(V, n, sub, exec); };
    } else if (m == "stieltjes") {
      const FreudPotential V(parse_potential(o.V));
      run = [=](std::size_t n) { stieltjes_coeffs(V, n + 1); };
    } else {
      throw UsageError("unknown bench method '" + m +
                       "' (asy, asy-sub, rec, gw, freud, freud-sub, stieltjes)");
    }
    for (std::size_t n : o.sizes) {
      if ((m == "asy" || m == "asy-sub") && n < kAsyThreshold) {
        throw UsageError("asy needs n >= " + std::to_string(kAsyThreshold));
      }
      std::vector<double> t;
      for (int i = 0; i < o.repeats; ++i) {
        const auto t0 = Clock::now();
        run(n);
        t.push_back(seconds_since(t0));
      }
      std::sort(t.begin(), t.end());
      const double median = t.size() % 2 ? t[t.size() / 2] : 0.5 * (t[t.size() / 2 - 1] + t[t.size() / 2]);
      out << m << ',' << n << ',' << o.repeats << ',' << format_double(median) << ','
          << format_double(t.front()) << '\n';
    }
  }
  return 0;
}

struct EquilibriumOpts {
  std::string V;
  std::size_t n = 1;
  std::size_t grid = 201;
  std::string format = "csv";
  std::string out = "-";
};

int cmd_equilibrium(const EquilibriumOpts& o, std::ostream& out) {
  check_format(o.format);
  if (o.grid < 2) throw UsageError("--grid must be at least 2");
  if (o.n == 0) throw UsageError("--n must be at least 1");
  const PotentialShift ps = normalize_potential(parse_potential(o.V));
  const EquilibriumMeasure mu = solve_support(ps.V, o.n);
  json meta = {{"V", o.V},     {"n", o.n},         {"a", mu.a},
               {"b", mu.b},    {"beta", mu.beta},  {"scale", ps.V.scale(o.n)},
               {"shift", ps.shift}};
  json rows = json::array();
  std::vector<std::array<double, 3>> data;
  for (std::size_t i = 0; i < o.grid; ++i) {
    const double x = mu.a + (mu.b - mu.a) * static_cast<double>(i) / static_cast<double>(o.grid - 1);
    data.push_back({x, density(mu, x), cdf(mu, x)});
  }
  with_output(o.out, out, [&](std::ostream& os) {
    if (o.format == "csv") {
      for (const auto& [k, v] : meta.items()) os << "# " << k << '=' << v.dump() << '\n';
      os << "x,density,cdf\n";
      for (const auto& d : data) {
        os << format_double(d[0]) << ',' << format_double(d[1]) << ',' << format_double(d[2]) << '\n';
      }
    } else {
      for (const auto& d : data) rows.push_back({{"x", d[0]}, {"density", d[1]}, {"cdf", d[2]}});
      os << json{{"metadata", meta}, {"rows", rows}}.dump(2) << '\n';
    }
  });
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Gauss-Hermite and Freud quadrature"};
  app.require_subcommand(1);

  RuleRequest nodes_req;
  std::string nodes_format = "csv";
  std::string nodes_out = "-";
  auto* nodes = app.add_subcommand("nodes", "compute a quadrature rule");
  add_rule_flags(nodes, nodes_req);
  nodes->add_option("--format", nodes_format, "csv or json");
  nodes->add_option("--out", nodes_out, "output path, - for stdout");

  RuleRequest int_req;
  IntegrateOpts int_opts;
  auto* integ = app.add_subcommand("integrate", "integrate a registered function");
  add_rule_flags(integ, int_req);
  integ->add_option("--f", int_opts.f, "function id")->required();
  integ->add_flag("--reference", int_opts.reference, "compare with a Clenshaw-Curtis reference");
  integ->add_option("--reference-points", int_opts.reference_points, "reference rule size");
  integ->add_option("--format", int_opts.format, "csv or json");

  BenchOpts bench_opts;
  auto* bench = app.add_subcommand("bench", "median wall times per method and size");
  bench->add_option("--sizes", bench_opts.sizes, "problem sizes")->required()->delimiter(',');
  bench->add_option("--methods", bench_opts.methods, "methods")->delimiter(',');
  bench->add_option("--repeats", bench_opts.repeats, "repeats per size");
  bench->add_option("--V", bench_opts.V, "potential for freud methods");
  bench->add_option("--exec", bench_opts.exec, "serial or parallel");

  EquilibriumOpts eq_opts;
  auto* eq = app.add_subcommand("equilibrium", "equilibrium measure on a grid");
  eq->add_option("--V", eq_opts.V, "potential")->required();
  eq->add_option("--n", eq_opts.n, "degree parameter of the varying field");
  eq->add_option("--grid", eq_opts.grid, "grid points on [a, b]");
  eq->add_option("--format", eq_opts.format, "csv or json");
  eq->add_option("--out", eq_opts.out, "output path, - for stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return 2;
  }

  try {
    if (nodes->parsed()) return cmd_nodes(nodes_req, nodes_format, nodes_out, out);
    if (integ->parsed()) return cmd_integrate(int_req, int_opts, out);
    if (bench->parsed()) return cmd_bench(bench_opts, out);
    if (eq->parsed()) return cmd_equilibrium(eq_opts, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const DomainError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace fastgh::cli
