#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "delayspec/dde.hpp"
#include "delayspec/picard.hpp"

namespace delayspec {

inline constexpr double kDefaultRefineTol = 1e-10;
inline constexpr int kWindowSamples = 64;

struct CharacteristicSample {
  enum class Method { shooting, picard };
  double lambda = 0.0;
  double F = 0.0;
  Method method = Method::shooting;
};

CharacteristicSample char_fn(const Shooter& shooter, double lambda);
CharacteristicSample char_fn(const ProblemSpec& spec, double lambda, int steps = kDefaultSteps);
CharacteristicSample char_fn_picard(const ProblemSpec& spec, double lambda, const PicardOptions& opts = {});

struct Eigenpair {
  int index = 0;  // n for localized roots, 1-based ordinal for scanned ones
  double s = 0.0;
  double lambda = 0.0;  // s * s
  SolutionSegment left;
  SolutionSegment right;
  double F_residual = 0.0;
};

class LocalizationError : public std::runtime_error {
 public:
  LocalizationError(int n, int sign_changes);
  int n() const noexcept { return n_; }
  int sign_changes() const noexcept { return sign_changes_; }

 private:
  int n_;
  int sign_changes_;
};

/// Bisection in s on a bracket [s_lo, s_hi] with F of opposite signs at the
/// ends, until the bracket is narrower than tol.
Eigenpair refine_root(const Shooter& shooter, double s_lo, double f_lo, double s_hi, double f_hi, double tol,
                      int index);

/// Sign changes of F(s^2) on a uniform grid of `samples` points over
/// [s_min, s_max], each refined by bisection. Roots of even multiplicity are
/// invisible to this search.
std::vector<Eigenpair> scan_roots(const Shooter& shooter, double s_min, double s_max, int samples,
                                  double refine_tol = kDefaultRefineTol);

/// Number of sign changes of F(s^2) on `samples` points over [n - 1/2, n + 1/2].
int count_sign_changes(const Shooter& shooter, int n, int samples = kWindowSamples);

/// The unique root with s in [n - 1/2, n + 1/2]. Throws LocalizationError
/// when the window holds zero or several sign changes, Case1Required when
/// sin(alpha) or sin(beta) vanishes.
Eigenpair localize_near_n(const Shooter& shooter, int n, double refine_tol = kDefaultRefineTol,
                          int samples = kWindowSamples);

struct SimplicityCertificate {
  double derivative = 0.0;  // central-difference dF/dlambda at lambda_n
  double threshold = 0.0;   // 10 |F_residual| / h
  bool reliable = true;
  bool passed = false;
};

SimplicityCertificate simplicity_certificate(const Shooter& shooter, const Eigenpair& pair, double h);

/// Default difference step for the certificate: 1e-4 * max(1, lambda), capped at 0.5.
double default_certificate_step(double lambda);

}  // namespace delayspec
