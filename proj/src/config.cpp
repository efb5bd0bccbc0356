#include "delayspec/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace delayspec {

namespace {

using nlohmann::json;

void reject_unknown(const json& obj, const std::string& path, const std::set<std::string>& known) {
  for (const auto& [key, value] : obj.items())
    if (!known.count(key)) throw ConfigError(path + "/" + key, "unknown key");
}

const json& object_at(const json& parent, const std::string& key, const std::string& path) {
  const json& v = parent.at(key);
  if (!v.is_object()) throw ConfigError(path + "/" + key, "expected an object");
  return v;
}

Expr expression(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.contains(key)) return Expr();
  const json& v = obj.at(key);
  const std::string where = path + "/" + key;
  std::string text;
  if (v.is_string()) text = v.get<std::string>();
  else if (v.is_number()) text = v.dump();
  else throw ConfigError(where, "expected an expression string");
  try {
    return Expr::parse(text);
  } catch (const ParseError& e) {
    throw ConfigError(where, e.what());
  }
}

// Numbers may be written as literals or as constant expressions like "pi/2".
double real(const json& obj, const std::string& key, const std::string& path, std::optional<double> fallback) {
  const std::string where = path + "/" + key;
  if (!obj.contains(key)) {
    if (fallback) return *fallback;
    throw ConfigError(where, "missing required key");
  }
  const json& v = obj.at(key);
  double value = 0.0;
  if (v.is_number()) {
    value = v.get<double>();
  } else if (v.is_string()) {
    try {
      const Expr e = Expr::parse(v.get<std::string>());
      if (!e.is_constant()) throw ConfigError(where, "expression must not depend on x");
      value = e.eval(0.0);
    } catch (const ParseError& e) {
      throw ConfigError(where, e.what());
    } catch (const EvalError& e) {
      throw ConfigError(where, e.what());
    }
  } else {
    throw ConfigError(where, "expected a number");
  }
  if (!std::isfinite(value)) throw ConfigError(where, "must be finite");
  return value;
}

double positive_real(const json& obj, const std::string& key, const std::string& path, std::optional<double> fallback) {
  const double v = real(obj, key, path, fallback);
  if (!(v > 0.0)) throw ConfigError(path + "/" + key, "must be positive");
  return v;
}

int positive_int(const json& obj, const std::string& key, const std::string& path, std::optional<int> fallback) {
  const std::string where = path + "/" + key;
  if (!obj.contains(key)) {
    if (fallback) return *fallback;
    throw ConfigError(where, "missing required key");
  }
  const json& v = obj.at(key);
  if (!v.is_number_integer()) throw ConfigError(where, "expected an integer");
  const auto i = v.get<long long>();
  if (i <= 0) throw ConfigError(where, "must be positive");
  if (i > 100000000) throw ConfigError(where, "too large");
  return static_cast<int>(i);
}

}  // namespace

OutputFormat parse_format(const std::string& name) {
  if (name == "csv") return OutputFormat::csv;
  if (name == "json") return OutputFormat::json;
  throw ConfigError("/output/format", "expected \"csv\" or \"json\", got \"" + name + "\"");
}

RunConfig parse_config(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError("/", std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("/", "expected a JSON object");
  reject_unknown(doc, "", {"problem", "solver", "range", "output"});
  if (!doc.contains("problem")) throw ConfigError("/problem", "missing required key");

  RunConfig cfg;
  const json& p = object_at(doc, "problem", "");
  reject_unknown(p, "/problem", {"q_left", "q_right", "retard_left", "retard_right", "alpha", "beta", "coupling"});
  const double coupling = real(p, "coupling", "/problem", std::nullopt);
  if (coupling == 0.0) throw ConfigError("/problem/coupling", "must be nonzero");
  cfg.problem = ProblemSpec::make(expression(p, "q_left", "/problem"), expression(p, "q_right", "/problem"),
                                  expression(p, "retard_left", "/problem"),
                                  expression(p, "retard_right", "/problem"), real(p, "alpha", "/problem", std::nullopt),
                                  real(p, "beta", "/problem", std::nullopt), coupling);

  if (doc.contains("solver")) {
    const json& s = object_at(doc, "solver", "");
    reject_unknown(s, "/solver", {"steps_per_segment", "refine_tol", "quadrature_points"});
    cfg.solver.steps_per_segment = positive_int(s, "steps_per_segment", "/solver", cfg.solver.steps_per_segment);
    cfg.solver.refine_tol = positive_real(s, "refine_tol", "/solver", cfg.solver.refine_tol);
    cfg.solver.quadrature_points = positive_int(s, "quadrature_points", "/solver", cfg.solver.quadrature_points);
  }

  if (doc.contains("range")) {
    const json& r = object_at(doc, "range", "");
    reject_unknown(r, "/range", {"n_min", "n_max", "s_min", "s_max", "samples"});
    const bool has_n = r.contains("n_min") || r.contains("n_max");
    const bool has_s = r.contains("s_min") || r.contains("s_max") || r.contains("samples");
    if (has_n && has_s) throw ConfigError("/range", "give either n_min/n_max or s_min/s_max/samples, not both");
    if (has_n) {
      NRange n{positive_int(r, "n_min", "/range", std::nullopt), positive_int(r, "n_max", "/range", std::nullopt)};
      if (n.n_max < n.n_min) throw ConfigError("/range/n_max", "must be >= n_min");
      cfg.n_range = n;
    } else if (has_s) {
      SRange s;
      s.s_min = positive_real(r, "s_min", "/range", std::nullopt);
      s.s_max = positive_real(r, "s_max", "/range", std::nullopt);
      if (!(s.s_max > s.s_min)) throw ConfigError("/range/s_max", "must exceed s_min");
      const int dense = static_cast<int>(std::ceil(100.0 * (s.s_max - s.s_min))) + 1;
      s.samples = positive_int(r, "samples", "/range", dense);
      cfg.s_range = s;
    } else {
      throw ConfigError("/range", "expected n_min/n_max or s_min/s_max/samples");
    }
  }

  if (doc.contains("output")) {
    const json& o = object_at(doc, "output", "");
    reject_unknown(o, "/output", {"format", "path", "points"});
    if (o.contains("format")) {
      if (!o.at("format").is_string()) throw ConfigError("/output/format", "expected a string");
      cfg.output.format = parse_format(o.at("format").get<std::string>());
    }
    if (o.contains("path")) {
      if (!o.at("path").is_string()) throw ConfigError("/output/path", "expected a string");
      cfg.output.path = o.at("path").get<std::string>();
    }
    cfg.output.points = positive_int(o, "points", "/output", cfg.output.points);
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("/", "cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace delayspec
