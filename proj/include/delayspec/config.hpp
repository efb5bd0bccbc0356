#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "delayspec/problem.hpp"

namespace delayspec {

/// Configuration problem; the message starts with the JSON path at fault.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string path, const std::string& message)
      : std::runtime_error(path + ": " + message), path_(std::move(path)) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

enum class OutputFormat { csv, json };

struct SolverSettings {
  int steps_per_segment = 4096;
  double refine_tol = 1e-10;
  int quadrature_points = 1024;
};

struct NRange {
  int n_min = 1;
  int n_max = 1;
};

struct SRange {
  double s_min = 0.0;
  double s_max = 0.0;
  int samples = 0;
};

struct OutputSettings {
  OutputFormat format = OutputFormat::csv;
  std::optional<std::string> path;
  int points = 201;  // x-grid size for eigfn
};

/// One JSON document:
/// {
///   "problem": {"q_left": "...", "q_right": "...", "retard_left": "...", "retard_right": "...",
///               "alpha": 1.57 | "pi/2", "beta": ..., "coupling": 1},
///   "solver":  {"steps_per_segment": 4096, "refine_tol": 1e-10, "quadrature_points": 1024},
///   "range":   {"n_min": 5, "n_max": 50} | {"s_min": 0.5, "s_max": 5.5, "samples": 500},
///   "output":  {"format": "csv" | "json", "path": "...", "points": 201}
/// }
/// Expression fields default to "0"; solver and output are optional.
struct RunConfig {
  ProblemSpec problem;
  SolverSettings solver;
  std::optional<NRange> n_range;
  std::optional<SRange> s_range;
  OutputSettings output;
};

RunConfig parse_config(const std::string& json_text);
RunConfig load_config(const std::string& path);

OutputFormat parse_format(const std::string& name);

}  // namespace delayspec
