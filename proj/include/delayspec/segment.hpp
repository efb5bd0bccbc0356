#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace delayspec {

// Cubic Hermite basis on a step of width h, t in [0, 1] (extrapolates outside).
inline double hermite_value(double y0, double d0, double y1, double d1, double h, double t) {
  const double t2 = t * t;
  const double t3 = t2 * t;
  return (2 * t3 - 3 * t2 + 1) * y0 + (t3 - 2 * t2 + t) * h * d0 + (-2 * t3 + 3 * t2) * y1 + (t3 - t2) * h * d1;
}

inline double hermite_slope(double y0, double d0, double y1, double d1, double h, double t) {
  const double t2 = t * t;
  return ((6 * t2 - 6 * t) * y0 + (-6 * t2 + 6 * t) * y1) / h + (3 * t2 - 4 * t + 1) * d0 + (3 * t2 - 2 * t) * d1;
}

/// Solution of one subinterval sampled on a uniform grid, with C1 cubic
/// Hermite dense output between nodes. Immutable once built.
class SolutionSegment {
 public:
  SolutionSegment() = default;
  /// values/derivs are at a + i (b - a) / (size - 1); the last node is b exactly.
  SolutionSegment(double a, double b, std::vector<double> values, std::vector<double> derivs, double lambda);

  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }
  double lambda() const noexcept { return lambda_; }
  double step() const noexcept { return h_; }
  std::size_t size() const noexcept { return values_.size(); }

  std::span<const double> nodes() const noexcept { return nodes_; }
  std::span<const double> values() const noexcept { return values_; }
  std::span<const double> derivs() const noexcept { return derivs_; }

  /// Throws std::out_of_range outside [a, b].
  double eval(double x) const;
  double eval_deriv(double x) const;

  double front_value() const { return values_.front(); }
  double back_value() const { return values_.back(); }
  double back_deriv() const { return derivs_.back(); }

  bool contains(double x) const noexcept { return x >= a_ && x <= b_; }

 private:
  std::size_t locate(double x) const;

  double a_ = 0.0;
  double b_ = 0.0;
  double h_ = 0.0;
  double lambda_ = 0.0;
  std::vector<double> nodes_;
  std::vector<double> values_;
  std::vector<double> derivs_;
};

/// Sup-norm distances between two segments sampled at the nodes of `a`.
struct SegmentDistance {
  double value = 0.0;
  double deriv = 0.0;
};
SegmentDistance sup_distance(const SolutionSegment& a, const SolutionSegment& b);

}  // namespace delayspec
