#pragma once

#include <stdexcept>

#include "delayspec/problem.hpp"
#include "delayspec/segment.hpp"

namespace delayspec {

// Independent route to w1, w2: fixed-point iteration on the Volterra
// integral equations satisfied by the shooting solutions,
//   w1(x) = sin(a) cos(sx) - cos(a)/s sin(sx) - 1/s int_0^x q sin s(x-t) w1(t - D(t)) dt
// and the analogous equation for w2 started from the transmitted data.

class PicardError : public std::runtime_error {
 public:
  PicardError(const std::string& what, int iterations, double residual)
      : std::runtime_error(what), iterations_(iterations), residual_(residual) {}
  int iterations() const noexcept { return iterations_; }
  double residual() const noexcept { return residual_; }

 private:
  int iterations_;
  double residual_;
};

struct PicardOptions {
  int grid_points = 4097;
  int max_iters = 200;
  double tol = 1e-12;
};

struct PicardSolution {
  SolutionSegment segment;
  int iterations = 0;
  /// Sup-norm change of the value channel on the final sweep.
  double residual = 0.0;
};

/// Requires sqrt(lambda) > q1.
PicardSolution picard_w1(const ProblemSpec& spec, double lambda, const PicardOptions& opts = {});

/// Requires sqrt(lambda) > q2 and w1 computed at the same lambda.
PicardSolution picard_w2(const ProblemSpec& spec, double lambda, const SolutionSegment& w1,
                         const PicardOptions& opts = {});

/// Sup-norm change of the value channel when `w` is substituted into the
/// right-hand side of the w1 (or w2) equation once more.
double picard_w1_residual(const ProblemSpec& spec, double lambda, const SolutionSegment& w);
double picard_w2_residual(const ProblemSpec& spec, double lambda, const SolutionSegment& w1,
                          const SolutionSegment& w);

/// F(lambda) assembled from the Picard segments.
double picard_characteristic(const ProblemSpec& spec, double lambda, const PicardOptions& opts = {});

}  // namespace delayspec
