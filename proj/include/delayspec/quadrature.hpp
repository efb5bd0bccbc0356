#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace delayspec {

/// Composite Simpson rule on [a, b]. `intervals` is rounded up to the next
/// even number (minimum 2).
template <class F>
double simpson(F&& f, double a, double b, std::size_t intervals) {
  if (intervals < 2) intervals = 2;
  if (intervals % 2) ++intervals;
  const double h = (b - a) / static_cast<double>(intervals);
  double odd = 0.0, even = 0.0;
  for (std::size_t i = 1; i < intervals; ++i) {
    const double v = f(a + static_cast<double>(i) * h);
    (i % 2 ? odd : even) += v;
  }
  return h / 3.0 * (f(a) + 4.0 * odd + 2.0 * even + f(b));
}

/// Running integral of uniformly sampled data: out[i] = integral from node 0
/// to node i. Simpson pairs for even i; odd i use the three-point partial
/// panel rule, so every entry is fourth order. Needs at least three samples.
std::vector<double> cumulative_simpson(std::span<const double> f, double h);

/// Least-squares slope of log(y) against log(x).
double loglog_slope(std::span<const double> x, std::span<const double> y);

}  // namespace delayspec
