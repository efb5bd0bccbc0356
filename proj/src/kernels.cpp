#include "delayspec/kernels.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace delayspec {

namespace {

LocalizeOutcome localize_one(const Shooter& shooter, int n, double tol, int samples) {
  LocalizeOutcome out;
  out.n = n;
  try {
    out.pair = localize_near_n(shooter, n, tol, samples);
  } catch (const LocalizationError& e) {
    out.zero_or_many = true;
    out.error = e.what();
  } catch (const std::exception& e) {
    out.error = e.what();
  }
  return out;
}

}  // namespace

namespace serial {

std::vector<double> sample_characteristic(const Shooter& shooter, std::span<const double> s_grid) {
  std::vector<double> f(s_grid.size());
  for (std::size_t i = 0; i < s_grid.size(); ++i) f[i] = shooter.characteristic(s_grid[i] * s_grid[i]);
  return f;
}

std::vector<LocalizeOutcome> localize_range(const Shooter& shooter, int n_min, int n_max, double refine_tol,
                                            int samples) {
  std::vector<LocalizeOutcome> out;
  for (int n = n_min; n <= n_max; ++n) out.push_back(localize_one(shooter, n, refine_tol, samples));
  return out;
}

}  // namespace serial

namespace parallel {

std::vector<double> sample_characteristic(const Shooter& shooter, std::span<const double> s_grid) {
  const auto count = static_cast<long>(s_grid.size());
  std::vector<double> f(s_grid.size());
  std::vector<std::string> errors(s_grid.size());
#pragma omp parallel for schedule(dynamic, 4)
  for (long i = 0; i < count; ++i) {
    const auto k = static_cast<std::size_t>(i);
    try {
      f[k] = shooter.characteristic(s_grid[k] * s_grid[k]);
    } catch (const std::exception& e) {
      errors[k] = e.what();
    }
  }
  for (const auto& e : errors)
    if (!e.empty()) throw SolverError(e);
  return f;
}

std::vector<LocalizeOutcome> localize_range(const Shooter& shooter, int n_min, int n_max, double refine_tol,
                                            int samples) {
  if (n_max < n_min) return {};
  const int count = n_max - n_min + 1;
  std::vector<LocalizeOutcome> out(static_cast<std::size_t>(count));
#pragma omp parallel for schedule(dynamic, 1)
  for (int i = 0; i < count; ++i)
    out[static_cast<std::size_t>(i)] = localize_one(shooter, n_min + i, refine_tol, samples);
  return out;
}

}  // namespace parallel

int available_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace delayspec
