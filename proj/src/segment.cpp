#include "delayspec/segment.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace delayspec {

SolutionSegment::SolutionSegment(double a, double b, std::vector<double> values, std::vector<double> derivs,
                                 double lambda)
    : a_(a), b_(b), lambda_(lambda), values_(std::move(values)), derivs_(std::move(derivs)) {
  if (values_.size() < 2 || values_.size() != derivs_.size())
    throw std::invalid_argument("segment needs matching value/derivative arrays of length >= 2");
  if (!(b > a)) throw std::invalid_argument("segment interval must have b > a");
  const std::size_t n = values_.size() - 1;
  h_ = (b - a) / static_cast<double>(n);
  nodes_.resize(n + 1);
  for (std::size_t i = 0; i < n; ++i) nodes_[i] = a + static_cast<double>(i) * h_;
  nodes_[n] = b;
}

std::size_t SolutionSegment::locate(double x) const {
  if (!(x >= a_ && x <= b_))
    throw std::out_of_range("segment lookup at x = " + std::to_string(x) + " outside [" + std::to_string(a_) +
                            ", " + std::to_string(b_) + "]");
  const std::size_t last = nodes_.size() - 2;
  auto i = static_cast<std::size_t>(std::min<double>(std::floor((x - a_) / h_), static_cast<double>(last)));
  while (i > 0 && x < nodes_[i]) --i;
  while (i < last && x >= nodes_[i + 1]) ++i;
  return i;
}

double SolutionSegment::eval(double x) const {
  const std::size_t i = locate(x);
  const double t = (x - nodes_[i]) / h_;
  return hermite_value(values_[i], derivs_[i], values_[i + 1], derivs_[i + 1], h_, t);
}

double SolutionSegment::eval_deriv(double x) const {
  const std::size_t i = locate(x);
  const double t = (x - nodes_[i]) / h_;
  if (t == 0.0) return derivs_[i];
  if (x == b_) return derivs_.back();
  return hermite_slope(values_[i], derivs_[i], values_[i + 1], derivs_[i + 1], h_, t);
}

SegmentDistance sup_distance(const SolutionSegment& a, const SolutionSegment& b) {
  SegmentDistance d;
  const auto nodes = a.nodes();
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    d.value = std::max(d.value, std::fabs(a.values()[i] - b.eval(nodes[i])));
    d.deriv = std::max(d.deriv, std::fabs(a.derivs()[i] - b.eval_deriv(nodes[i])));
  }
  return d;
}

}  // namespace delayspec
