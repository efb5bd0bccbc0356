#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "delayspec/problem.hpp"
#include "delayspec/segment.hpp"

namespace delayspec {

inline constexpr int kDefaultSteps = 4096;

class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// q(x) and the delayed argument x - retard(x) tabulated at the nodes and
/// midpoints of a fixed-step grid on [a, b]. Neither depends on lambda, so
/// one table serves every shot on the same spec.
struct SegmentTable {
  Side side = Side::left;
  double a = 0.0;
  double b = 0.0;
  int steps = 0;
  std::vector<double> q_node;
  std::vector<double> delayed_node;
  std::vector<double> q_mid;
  std::vector<double> delayed_mid;

  static SegmentTable build(const ProblemSpec& spec, Side side, double a, double b, int steps);
};

/// Integrates y'' = -q(x) y(x - retard(x)) - lambda y with classical RK4 on
/// a fixed grid. Delayed values come from the Hermite dense output of the
/// steps already taken; a delayed argument inside the current step is served
/// by extrapolating the previous step's cubic. `history` is consulted only
/// for delayed arguments below a.
SolutionSegment integrate_segment(const SegmentTable& table, double lambda, double y0, double dy0,
                                  const SolutionSegment* history = nullptr);

/// Convenience overload; [a, b] must lie on one side of pi/2.
SolutionSegment integrate_segment(const ProblemSpec& spec, double lambda, double a, double b, double y0,
                                  double dy0, const SolutionSegment* history = nullptr,
                                  int steps = kDefaultSteps);

struct ShootingResult {
  SolutionSegment left;   // w1 on [0, pi/2]
  SolutionSegment right;  // w2 on [pi/2, pi]
  double lambda = 0.0;
};

/// lambda^(1/3) as exp(ln(lambda) / 3); lambda > 0.
double cube_root(double lambda);

/// Shooting from x = 0 with y(0) = sin(alpha), y'(0) = -cos(alpha), then
/// across pi/2 by dividing both value and slope by cbrt(lambda) * coupling.
class Shooter {
 public:
  Shooter(ProblemSpec spec, int steps_per_segment = kDefaultSteps);

  ShootingResult shoot(double lambda) const;
  /// F(lambda) = w2(pi) cos(beta) + w2'(pi) sin(beta).
  double characteristic(double lambda) const;

  const ProblemSpec& spec() const noexcept { return spec_; }
  int steps() const noexcept { return left_.steps; }

 private:
  ProblemSpec spec_;
  SegmentTable left_;
  SegmentTable right_;
};

ShootingResult shoot(const ProblemSpec& spec, double lambda, int steps_per_segment = kDefaultSteps);

}  // namespace delayspec
