#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "delayspec/spectral.hpp"

namespace delayspec {

struct LocalizeOutcome {
  int n = 0;
  std::optional<Eigenpair> pair;
  bool zero_or_many = false;
  std::string error;
};

// The batch kernels come in two flavours with identical results: `serial`
// is the reference, `parallel` distributes independent shots with OpenMP.
// Output is always ordered by input position, so the two agree bit for bit.

namespace serial {

/// F(s^2) for each s.
std::vector<double> sample_characteristic(const Shooter& shooter, std::span<const double> s_grid);

std::vector<LocalizeOutcome> localize_range(const Shooter& shooter, int n_min, int n_max,
                                            double refine_tol = kDefaultRefineTol,
                                            int samples = kWindowSamples);

}  // namespace serial

namespace parallel {

std::vector<double> sample_characteristic(const Shooter& shooter, std::span<const double> s_grid);

std::vector<LocalizeOutcome> localize_range(const Shooter& shooter, int n_min, int n_max,
                                            double refine_tol = kDefaultRefineTol,
                                            int samples = kWindowSamples);

}  // namespace parallel

/// Threads OpenMP will use (1 when built without OpenMP).
int available_threads();

}  // namespace delayspec
