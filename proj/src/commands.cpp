#include "delayspec/commands.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <memory>

#include <CLI11.hpp>
#include <json.hpp>

#include "delayspec/asymptotics.hpp"
#include "delayspec/kernels.hpp"
#include "delayspec/spectral.hpp"

namespace delayspec {

namespace {

using nlohmann::json;

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_cell(const Table::Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return format_double(*d);
  if (const auto* i = std::get_if<long long>(&c)) return std::to_string(*i);
  if (const auto* b = std::get_if<bool>(&c)) return *b ? "true" : "false";
  const auto& s = std::get<std::string>(c);
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char ch : s) {
    if (ch == '"') quoted += '"';
    quoted += ch;
  }
  return quoted + "\"";
}

json json_cell(const Table::Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return std::isfinite(*d) ? json(*d) : json(nullptr);
  if (const auto* i = std::get_if<long long>(&c)) return *i;
  if (const auto* b = std::get_if<bool>(&c)) return *b;
  return std::get<std::string>(c);
}

json table_json(const Table& t) {
  json rows = json::array();
  for (const auto& row : t.rows) {
    json obj = json::object();
    for (std::size_t i = 0; i < t.columns.size(); ++i) obj[t.columns[i]] = json_cell(row[i]);
    rows.push_back(std::move(obj));
  }
  return rows;
}

json fit_json(const SlopeFit& f) {
  return {{"slope", f.points_used >= 2 ? json(f.slope) : json(nullptr)},
          {"threshold", f.threshold},
          {"points_used", f.points_used},
          {"floor_limited", f.floor_limited},
          {"passed", f.passed}};
}

void print_checks(const std::vector<CheckResult>& checks, std::ostream& err) {
  for (const auto& c : checks)
    if (!c.passed)
      err << "  FAILED " << c.name << " (worst x = " << format_double(c.worst_x)
          << ", value = " << format_double(c.worst_value) << ")" << (c.detail.empty() ? "" : ": " + c.detail) << '\n';
}

// Validates the problem; prints the failing checks and returns false when rejected.
bool accept_problem(const RunConfig& config, std::ostream& err) {
  const auto report = validate(config.problem);
  if (report.accepted()) return true;
  err << "error: problem rejected by validation\n";
  print_checks(report.checks, err);
  return false;
}

Table::Cell cell(int v) { return static_cast<long long>(v); }

Table eigen_table(const Shooter& shooter, const std::vector<Eigenpair>& pairs) {
  Table t{{"n", "s_n", "lambda_n", "F_residual", "simplicity_ok"}, {}};
  for (const auto& p : pairs) {
    const auto cert = simplicity_certificate(shooter, p, default_certificate_step(p.lambda));
    t.rows.push_back({cell(p.index), p.s, p.lambda, p.F_residual, cert.passed});
  }
  return t;
}

}  // namespace

void write_table(const Table& table, OutputFormat format, std::ostream& out) {
  if (format == OutputFormat::json) {
    out << table_json(table).dump(2) << '\n';
    return;
  }
  for (std::size_t i = 0; i < table.columns.size(); ++i) out << (i ? "," : "") << table.columns[i];
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_cell(row[i]);
    out << '\n';
  }
}

int cmd_solve(const RunConfig& config, std::ostream& out, std::ostream& err) {
  if (config.n_range.has_value() == config.s_range.has_value()) {
    err << "error: /range: solve needs exactly one of n_min/n_max or s_min/s_max/samples\n";
    return kExitConfig;
  }
  if (!accept_problem(config, err)) return kExitConfig;
  const Shooter shooter(config.problem, config.solver.steps_per_segment);
  std::vector<Eigenpair> pairs;
  try {
    if (config.n_range) {
      if (!config.problem.case1()) {
        err << "error: localization near n needs sin(alpha) != 0 and sin(beta) != 0; use an s-range scan\n";
        return kExitSolver;
      }
      auto outcomes = parallel::localize_range(shooter, config.n_range->n_min, config.n_range->n_max,
                                               config.solver.refine_tol);
      bool failed = false;
      for (auto& o : outcomes) {
        if (o.pair) {
          pairs.push_back(std::move(*o.pair));
        } else {
          err << "error: n = " << o.n << ": " << o.error << '\n';
          failed = true;
        }
      }
      if (failed) return kExitSolver;
    } else {
      const auto& r = *config.s_range;
      if (r.samples < 2) {
        err << "error: /range/samples: a root scan needs at least two samples\n";
        return kExitConfig;
      }
      pairs = scan_roots(shooter, r.s_min, r.s_max, r.samples, config.solver.refine_tol);
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitSolver;
  }
  write_table(eigen_table(shooter, pairs), config.output.format, out);
  return kExitOk;
}

int cmd_charfn(const RunConfig& config, std::ostream& out, std::ostream& err) {
  if (!config.s_range) {
    err << "error: /range: charfn needs s_min/s_max/samples\n";
    return kExitConfig;
  }
  if (!accept_problem(config, err)) return kExitConfig;
  const auto& r = *config.s_range;
  std::vector<double> s(static_cast<std::size_t>(r.samples));
  for (int i = 0; i < r.samples; ++i)
    s[static_cast<std::size_t>(i)] =
        r.samples == 1 ? r.s_min : r.s_min + (r.s_max - r.s_min) * static_cast<double>(i) / (r.samples - 1);
  std::vector<double> f;
  try {
    f = parallel::sample_characteristic(Shooter(config.problem, config.solver.steps_per_segment), s);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitSolver;
  }
  Table t{{"s", "lambda", "F"}, {}};
  for (std::size_t i = 0; i < s.size(); ++i) t.rows.push_back({s[i], s[i] * s[i], f[i]});
  write_table(t, config.output.format, out);
  return kExitOk;
}

int cmd_eigfn(const RunConfig& config, int n, std::ostream& out, std::ostream& err) {
  if (n < 1) {
    err << "error: --n must be a positive integer\n";
    return kExitConfig;
  }
  if (!accept_problem(config, err)) return kExitConfig;
  const Shooter shooter(config.problem, config.solver.steps_per_segment);
  Eigenpair pair;
  try {
    pair = localize_near_n(shooter, n, config.solver.refine_tol);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitSolver;
  }
  const AsymptoticModel model(config.problem, config.solver.quadrature_points);
  const bool refined = model.conditions().refined_ok();
  if (!refined) err << "note: refined asymptotics unavailable for this problem; u_refined is empty\n";

  const int m = config.output.points;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  Table t{{"x", "u_n", "u_leading", "u_refined", "abs_err_leading", "abs_err_refined"}, {}};
  for (int i = 0; i < m; ++i) {
    if (2 * i == m - 1) continue;  // the interface itself
    const double x = m == 1 ? 0.0 : kRightEnd * static_cast<double>(i) / (m - 1);
    const double u = x < kInterface ? pair.left.eval(x) : pair.right.eval(x);
    const double lead = model.predict_eigenfunction(n, x, EigenfunctionOrder::leading);
    const double ref = refined ? model.predict_eigenfunction(n, x, EigenfunctionOrder::refined) : nan;
    t.rows.push_back({x, u, lead, ref, std::fabs(u - lead), refined ? std::fabs(u - ref) : nan});
  }
  write_table(t, config.output.format, out);
  return kExitOk;
}

int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream& err) {
  if (!config.n_range) {
    err << "error: /range: verify needs n_min/n_max\n";
    return kExitConfig;
  }
  const auto [n_min, n_max] = *config.n_range;
  if (n_max - n_min + 1 < 8) {
    err << "error: rate verification needs at least 8 indices (got " << n_max - n_min + 1
        << "); widen the n-range, e.g. n in [5, 50]\n";
    return kExitConfig;
  }
  if (!accept_problem(config, err)) return kExitConfig;
  if (!config.problem.case1()) {
    err << "error: rate verification needs sin(alpha) != 0 and sin(beta) != 0\n";
    return kExitConfig;
  }

  const Shooter shooter(config.problem, config.solver.steps_per_segment);
  const AsymptoticModel model(config.problem, config.solver.quadrature_points);
  std::vector<Eigenpair> pairs;
  std::vector<AsymptoticEstimate> estimates;
  RateReport report;
  SolverFloor floor;
  try {
    for (auto& o : parallel::localize_range(shooter, n_min, n_max, config.solver.refine_tol)) {
      if (!o.pair) {
        err << "error: n = " << o.n << ": " << o.error << '\n';
        return kExitSolver;
      }
      pairs.push_back(std::move(*o.pair));
    }
    for (int n = n_min; n <= n_max; ++n) estimates.push_back(model.predict_s(n));
    floor = solver_floor(config.problem, pairs.back(), config.solver.steps_per_segment, config.solver.refine_tol);
    RateOptions opts;
    opts.eigenvalue_floor = std::max(opts.eigenvalue_floor, floor.eigenvalue);
    opts.eigenfunction_floor = std::max(opts.eigenfunction_floor, floor.eigenfunction);
    report = verify_rates(model, pairs, estimates, opts);
  } catch (const InsufficientRange& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitSolver;
  }

  Table t{{"n", "s_n", "s_refined", "scaled_shift", "eigenvalue_residual", "err_leading", "err_refined",
           "err_right_printed", "err_right_parallel", "right_amplitude_ratio"},
          {}};
  for (const auto& r : report.rows)
    t.rows.push_back({cell(r.n), r.s, r.s_refined, r.scaled_shift, r.eigenvalue_residual, r.err_leading,
                      r.err_refined, r.err_right_printed, r.err_right_parallel, r.right_amplitude_ratio});

  if (config.output.format == OutputFormat::json) {
    json decay = json::array();
    for (const auto& d : report.decay)
      decay.push_back({{"x", d.x}, {"kernel", d.cosine ? "cos" : "sin"}, {"values", d.values}, {"fit", fit_json(d.fit)}});
    json doc = {
        {"passed", report.passed()},
        {"floors", {{"eigenvalue", floor.eigenvalue}, {"eigenfunction", floor.eigenfunction}}},
        {"boundedness",
         {{"max_first_half", report.shift_max_first},
          {"max_second_half", report.shift_max_second},
          {"passed", report.bounded}}},
        {"eigenvalue_rate", fit_json(report.eigenvalue_rate)},
        {"eigenfunction_leading", fit_json(report.eigenfunction_leading)},
        {"eigenfunction_refined", fit_json(report.eigenfunction_refined)},
        {"right_interval_as_printed", fit_json(report.right_printed)},
        {"right_interval_parallel", fit_json(report.right_parallel)},
        {"amplitude", {{"ratio", report.amplitude_ratio}, {"passed", report.amplitude_ok}}},
        {"decay_s", report.decay_s},
        {"decay", decay},
        {"bounds",
         {{"checked", report.bounds_checked},
          {"samples", report.bounds.samples},
          {"violations", report.bounds.total()}}},
        {"rows", table_json(t)}};
    out << doc.dump(2) << '\n';
  } else {
    write_table(t, OutputFormat::csv, out);
  }

  auto line = [&](const char* name, const SlopeFit& f, bool info = false) {
    err << "  " << (info ? "info" : f.passed ? "ok  " : "FAIL") << ' ' << name << ": ";
    if (f.floor_limited) err << "floor-limited (" << f.points_used << " points above floor)";
    else err << "slope " << format_double(f.slope) << " (needs <= " << format_double(f.threshold) << ")";
    err << '\n';
  };
  err << "rate report for n in [" << n_min << ", " << n_max << "]\n";
  err << "  " << (report.bounded ? "ok  " : "FAIL") << " boundedness: max n^(1/3)|s_n - n| "
      << format_double(report.shift_max_first) << " -> " << format_double(report.shift_max_second) << '\n';
  line("eigenvalue rate", report.eigenvalue_rate);
  line("eigenfunction, leading", report.eigenfunction_leading);
  line("eigenfunction, refined", report.eigenfunction_refined);
  line("right interval, 1/(n^(5/3) pi) scaling", report.right_printed, true);
  line("right interval, 1/(n pi) scaling", report.right_parallel, true);
  err << "  " << (report.amplitude_ok ? "ok  " : "FAIL") << " right amplitude ratio "
      << format_double(report.amplitude_ratio) << '\n';
  for (const auto& d : report.decay) {
    const std::string name = std::string("decay, ") + (d.cosine ? "cos" : "sin") + " at x = " + format_double(d.x);
    line(name.c_str(), d.fit);
  }
  if (report.bounds_checked)
    err << "  " << (report.bounds.total() == 0 ? "ok  " : "FAIL") << " a-priori bounds: " << report.bounds.total()
        << " violations\n";
  err << (report.passed() ? "PASS" : "FAIL") << '\n';
  return report.passed() ? kExitOk : kExitVerification;
}

int cmd_validate(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const auto report = validate(config.problem);
  const auto conditions = check_refined_conditions(config.problem);
  Table t{{"check", "passed", "worst_x", "worst_value"}, {}};
  for (const auto* checks : {&report.checks, &conditions.checks})
    for (const auto& c : *checks) t.rows.push_back({c.name, c.passed, c.worst_x, c.worst_value});
  write_table(t, config.output.format, out);
  err << "validation: " << (report.accepted() ? "accepted" : "rejected") << '\n';
  print_checks(report.checks, err);
  err << "refined asymptotics: " << (conditions.refined_ok() ? "available" : "unavailable") << '\n';
  return report.accepted() ? kExitOk : kExitConfig;
}

int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Eigenvalues of a second-order delay boundary value problem with a transmission point"};
  app.require_subcommand(1);
  std::string config_path, out_path, format;
  int n = 0;
  auto common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON problem config")->required();
    sub->add_option("--out", out_path, "write primary output here instead of stdout");
    sub->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  };
  auto* solve = app.add_subcommand("solve", "eigenvalue table");
  auto* charfn = app.add_subcommand("charfn", "characteristic function samples");
  auto* eigfn = app.add_subcommand("eigfn", "eigenfunction against its asymptotics");
  auto* verify = app.add_subcommand("verify", "asymptotic rate report");
  auto* valid = app.add_subcommand("validate", "problem validation report");
  for (auto* sub : {solve, charfn, eigfn, verify, valid}) common(sub);
  eigfn->add_option("--n", n, "eigenvalue index")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitConfig;
  }

  RunConfig config;
  try {
    config = load_config(config_path);
    if (!format.empty()) config.output.format = parse_format(format);
    if (!out_path.empty()) config.output.path = out_path;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  }

  std::ofstream file;
  std::ostream* dest = &out;
  if (config.output.path) {
    file.open(*config.output.path, std::ios::binary);
    if (!file) {
      err << "error: cannot write '" << *config.output.path << "'\n";
      return kExitConfig;
    }
    dest = &file;
  }
  if (solve->parsed()) return cmd_solve(config, *dest, err);
  if (charfn->parsed()) return cmd_charfn(config, *dest, err);
  if (eigfn->parsed()) return cmd_eigfn(config, n, *dest, err);
  if (verify->parsed()) return cmd_verify(config, *dest, err);
  return cmd_validate(config, *dest, err);
}

}  // namespace delayspec
