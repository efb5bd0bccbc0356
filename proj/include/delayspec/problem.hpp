#pragma once

#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "delayspec/expr.hpp"

namespace delayspec {

inline constexpr double kInterface = std::numbers::pi / 2.0;
inline constexpr double kRightEnd = std::numbers::pi;

/// Offset used to approximate the one-sided limits at the interface.
inline constexpr double kOneSidedOffset = 1e-9;
/// Absolute tolerance for the "= 0" conditions on the retardation.
inline constexpr double kZeroTolerance = 1e-9;
/// Slack allowed on the grid inequalities for rounding in x - retard(x).
inline constexpr double kInequalitySlack = 1e-12;

enum class Side { left, right };

/// Raised by operations that need sin(alpha) != 0 and sin(beta) != 0.
class Case1Required : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// One instance of
///   y''(x) + q(x) y(x - retard(x)) + lambda y(x) = 0   on [0, pi/2) u (pi/2, pi]
///   y(0) cos(alpha) + y'(0) sin(alpha) = 0
///   y(pi) cos(beta) + y'(pi) sin(beta) = 0
///   y(pi/2 - 0) = cbrt(lambda) coupling y(pi/2 + 0), same for y'.
/// q and the retardation are given separately on each side of pi/2.
struct ProblemSpec {
  Expr q_left;
  Expr q_right;
  Expr retard_left;
  Expr retard_right;
  double alpha = std::numbers::pi / 2.0;
  double beta = std::numbers::pi / 2.0;
  double coupling = 1.0;
  static constexpr double interface_point = kInterface;

  /// Throws std::invalid_argument if coupling is zero or an angle is not finite.
  static ProblemSpec make(Expr q_left, Expr q_right, Expr retard_left, Expr retard_right, double alpha,
                          double beta, double coupling);
  static ProblemSpec from_strings(const std::string& q_left, const std::string& q_right,
                                  const std::string& retard_left, const std::string& retard_right, double alpha,
                                  double beta, double coupling);

  const Expr& q(Side side) const { return side == Side::left ? q_left : q_right; }
  const Expr& retard(Side side) const { return side == Side::left ? retard_left : retard_right; }

  bool case1() const;
};

struct CheckResult {
  std::string name;
  bool passed = true;
  double worst_x = 0.0;
  /// Value of the checked quantity at worst_x (margin for inequalities).
  double worst_value = 0.0;
  std::string detail;
};

struct ValidationReport {
  std::vector<CheckResult> checks;
  bool accepted() const;
  const CheckResult* find(const std::string& name) const;
};

struct ConditionReport {
  std::vector<CheckResult> checks;
  bool condition_a = false;
  bool condition_b = false;
  bool case1 = false;
  /// a), b) and case 1 together: the refined asymptotics apply.
  bool refined_ok() const { return condition_a && condition_b && case1; }
  const CheckResult* find(const std::string& name) const;
};

struct QNorms {
  double q1 = 0.0;  // integral of |q| over [0, pi/2]
  double q2 = 0.0;  // integral of |q| over [pi/2, pi]
};

inline constexpr int kDefaultGridPoints = 4096;

ValidationReport validate(const ProblemSpec& spec, int grid_points = kDefaultGridPoints);
ConditionReport check_refined_conditions(const ProblemSpec& spec, int grid_points = kDefaultGridPoints);
QNorms q_norms(const ProblemSpec& spec, int quadrature_points = kDefaultGridPoints);

/// Uniform validation grid on one side, excluding pi/2 itself but including
/// the points pi/2 -+ kOneSidedOffset.
std::vector<double> side_grid(Side side, int grid_points);

}  // namespace delayspec
