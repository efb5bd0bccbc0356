#pragma once

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "delayspec/config.hpp"

namespace delayspec {

enum ExitCode : int { kExitOk = 0, kExitConfig = 1, kExitSolver = 2, kExitVerification = 3 };

/// Rectangular result with named columns. Cells are numbers, booleans or
/// strings; NaN numbers print as "nan" in CSV and null in JSON.
struct Table {
  using Cell = std::variant<double, long long, bool, std::string>;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

/// CSV with 17 significant digits, or a JSON array of row objects.
void write_table(const Table& table, OutputFormat format, std::ostream& out);

/// Each command writes its primary output to `out` and diagnostics to `err`,
/// and returns one of the exit codes above.
int cmd_solve(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_charfn(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_eigfn(const RunConfig& config, int n, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_validate(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Entry point behind the delayspec executable.
int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace delayspec
