#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "delayspec/problem.hpp"
#include "delayspec/spectral.hpp"

namespace delayspec {

inline constexpr int kDefaultKLPoints = 1024;

class RefinedUnavailable : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class DegenerateBound : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class InsufficientRange : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// K(x, s) = 1/2 int_0^x q sin(s retard) dt and L(x, s) likewise with cos.
/// Split at pi/2 when x > pi/2, Simpson on each piece.
struct KL {
  double K = 0.0;
  double L = 0.0;
};
KL kl_integrals(const ProblemSpec& spec, double x, double s, int quadrature_points = kDefaultKLPoints);

struct AsymptoticEstimate {
  int n = 0;
  double s_leading = 0.0;
  /// n + (cot(beta) - cot(alpha) - L(pi, n)) / (n pi); empty when case 1 or
  /// conditions a), b) fail.
  std::optional<double> s_refined;
  double K_pi = 0.0;
  double L_pi = 0.0;
  bool case1 = false;

  /// Throws Case1Required / RefinedUnavailable when s_refined is empty.
  double refined() const;
};

enum class EigenfunctionOrder { leading, refined };

/// How the sin(nx) term of the refined right-interval formula is scaled:
/// as_printed uses 1/(n^(5/3) pi) inside the braces, parallel_to_left uses
/// 1/(n pi) like the left-interval formula.
enum class RightScaling { as_printed, parallel_to_left };

/// Problem plus its refined-conditions report, so repeated predictions do not
/// re-run the grid checks.
class AsymptoticModel {
 public:
  explicit AsymptoticModel(ProblemSpec spec, int quadrature_points = kDefaultKLPoints,
                           int grid_points = kDefaultGridPoints);

  const ProblemSpec& spec() const noexcept { return spec_; }
  const ConditionReport& conditions() const noexcept { return conditions_; }

  KL kl(double x, double s) const { return kl_integrals(spec_, x, s, quad_); }

  AsymptoticEstimate predict_s(int n) const;

  /// x = pi/2 is rejected with std::domain_error.
  double predict_eigenfunction(int n, double x, EigenfunctionOrder order,
                               RightScaling scaling = RightScaling::as_printed) const;

 private:
  void require_refined() const;

  ProblemSpec spec_;
  int quad_;
  ConditionReport conditions_;
};

AsymptoticEstimate predict_s(const ProblemSpec& spec, int n);
double predict_eigenfunction(const ProblemSpec& spec, int n, double x, EigenfunctionOrder order);

struct AprioriBounds {
  double bound1 = 0.0;       // on |w1|, needs lambda >= 4 q1^2
  double bound2 = 0.0;       // on |w2|, needs lambda >= max(4 q1^2, 4 q2^2)
  double deriv_bound = 0.0;  // on |w1'| / s^(5/3), needs s >= 2 q1
  bool applicable1 = false;
  bool applicable2 = false;
  bool applicable_deriv = false;
};

/// Throws DegenerateBound when q1 = 0.
AprioriBounds apriori_bounds(const ProblemSpec& spec, double lambda, const QNorms& norms);
AprioriBounds apriori_bounds(const ProblemSpec& spec, double lambda);

struct BoundViolations {
  int samples = 0;
  int w1 = 0;
  int w2 = 0;
  int deriv = 0;
  int total() const { return w1 + w2 + deriv; }
};

/// Checks the applicable bounds at `samples` points on each interval.
BoundViolations check_apriori_bounds(const ProblemSpec& spec, const ShootingResult& shot, const AprioriBounds& bounds,
                             int samples = 512);

struct SlopeFit {
  double slope = 0.0;
  double threshold = 0.0;
  int points_used = 0;
  bool floor_limited = false;
  bool passed = false;
};

/// Fits log(residual) against log(n) over the residuals above `floor`; fewer
/// than three usable points makes the fit floor-limited, which passes.
SlopeFit fit_rate(const std::vector<double>& n, const std::vector<double>& residual, double floor, double threshold);

struct RateOptions {
  double eigenvalue_floor = 1e-12;
  double eigenfunction_floor = 1e-12;
  int eigenfunction_samples = 256;
  int eigenfunction_min_n = 10;
  double eigenvalue_slope = -1.7;
  double refined_eigenfunction_slope = -1.7;
  double leading_eigenfunction_slope = -0.3;
  double decay_slope = -0.8;
  double amplitude_tolerance = 0.2;
  double boundedness_factor = 1.5;
  std::vector<double> decay_s{10.0, 20.0, 40.0, 80.0, 160.0};
};

struct RateRow {
  int n = 0;
  double s = 0.0;
  double s_refined = 0.0;
  double scaled_shift = 0.0;        // n^(1/3) |s_n - n|
  double eigenvalue_residual = 0.0;  // |s_n - s_refined|
  double err_leading = 0.0;          // left interval, sup norm
  double err_refined = 0.0;
  double err_right_printed = 0.0;
  double err_right_parallel = 0.0;
  double right_amplitude_ratio = 0.0;  // sup|u2n| n^(2/3) |coupling| / |sin(alpha)|
};

struct DecayFit {
  double x = 0.0;
  bool cosine = true;
  std::vector<double> values;
  SlopeFit fit;
};

struct RateReport {
  std::vector<RateRow> rows;
  double shift_max_first = 0.0;
  double shift_max_second = 0.0;
  bool bounded = false;
  SlopeFit eigenvalue_rate;
  SlopeFit eigenfunction_leading;
  SlopeFit eigenfunction_refined;
  SlopeFit right_printed;   // informational
  SlopeFit right_parallel;  // informational
  double amplitude_ratio = 0.0;
  bool amplitude_ok = false;
  std::vector<DecayFit> decay;
  bool bounds_checked = false;
  BoundViolations bounds;
  std::vector<double> decay_s;

  bool passed() const;
};

/// The oscillatory integral int_0^x q(t) cos s(2t - retard(t)) dt (or sin).
double oscillatory_integral(const ProblemSpec& spec, double x, double s, bool cosine, int quadrature_points);

/// Compares computed eigenpairs with the asymptotic predictions. Pairs and
/// estimates are matched by index; at least eight indices are required.
RateReport verify_rates(const AsymptoticModel& model, const std::vector<Eigenpair>& pairs,
                        const std::vector<AsymptoticEstimate>& estimates, const RateOptions& options = {});

/// Numerical noise of the shooting solver at `pair`: the change in s_n and
/// in the left eigenfunction when the step count is doubled, times ten.
struct SolverFloor {
  double eigenvalue = 1e-12;
  double eigenfunction = 1e-12;
};
SolverFloor solver_floor(const ProblemSpec& spec, const Eigenpair& pair, int steps, double refine_tol);

}  // namespace delayspec
