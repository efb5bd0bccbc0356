#include "delayspec/dde.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace delayspec {

namespace {

double delayed_argument(const Expr& retard, double x, double a) {
  double xd = x - retard.eval(x);
  // Rounding in x - retard(x) may dip just below the segment start or just
  // above x; pull those back onto the admissible range.
  if (xd < a && xd >= a - kInequalitySlack) xd = a;
  if (xd > x && xd <= x + kInequalitySlack) xd = x;
  return xd;
}

[[noreturn]] void fail_delay(double x, double xd, double a) {
  std::ostringstream os;
  os << "delayed argument " << xd << " at x = " << x << " lies outside [" << a << ", " << x << "]";
  throw SolverError(os.str());
}

// Solution under construction. Nodes 0..done are final.
class Builder {
 public:
  Builder(const SegmentTable& t, double lambda, const SolutionSegment* history)
      : t_(t), lambda_(lambda), history_(history), h_((t.b - t.a) / t.steps) {
    const auto n = static_cast<std::size_t>(t.steps) + 1;
    y_.resize(n);
    dy_.resize(n);
  }

  SolutionSegment run(double y0, double dy0) {
    y_[0] = y0;
    dy_[0] = dy0;
    // Second derivative at a, used for the first step's extrapolant.
    ypp0_ = -t_.q_node[0] * lookup(t_.delayed_node[0], t_.a, 0) - lambda_ * y0;

    for (int k = 0; k < t_.steps; ++k) {
      const auto i = static_cast<std::size_t>(k);
      const double x = node(i);
      const double xm = x + 0.5 * h_;
      const double x1 = x + h_;

      const double d1 = lookup(t_.delayed_node[i], x, i);
      const double dm = lookup(t_.delayed_mid[i], xm, i);
      const double d4 = lookup(t_.delayed_node[i + 1], x1, i);

      const double y = y_[i];
      const double v = dy_[i];
      const double ky1 = v;
      const double kv1 = -t_.q_node[i] * d1 - lambda_ * y;
      const double ky2 = v + 0.5 * h_ * kv1;
      const double kv2 = -t_.q_mid[i] * dm - lambda_ * (y + 0.5 * h_ * ky1);
      const double ky3 = v + 0.5 * h_ * kv2;
      const double kv3 = -t_.q_mid[i] * dm - lambda_ * (y + 0.5 * h_ * ky2);
      const double ky4 = v + h_ * kv3;
      const double kv4 = -t_.q_node[i + 1] * d4 - lambda_ * (y + h_ * ky3);

      y_[i + 1] = y + h_ / 6.0 * (ky1 + 2.0 * ky2 + 2.0 * ky3 + ky4);
      dy_[i + 1] = v + h_ / 6.0 * (kv1 + 2.0 * kv2 + 2.0 * kv3 + kv4);
      if (!std::isfinite(y_[i + 1]) || !std::isfinite(dy_[i + 1])) {
        std::ostringstream os;
        os << "non-finite solution at x = " << x1 << " (lambda = " << lambda_ << ")";
        throw SolverError(os.str());
      }
    }
    return SolutionSegment(t_.a, t_.b, std::move(y_), std::move(dy_), lambda_);
  }

 private:
  double node(std::size_t i) const {
    return i == static_cast<std::size_t>(t_.steps) ? t_.b : t_.a + static_cast<double>(i) * h_;
  }

  // y at the delayed argument xd, while evaluating at x with nodes 0..done final.
  double lookup(double xd, double x, std::size_t done) const {
    if (xd < t_.a) {
      if (history_ && history_->contains(xd)) return history_->eval(xd);
      fail_delay(x, xd, t_.a);
    }
    if (xd > x + kInequalitySlack) fail_delay(x, xd, t_.a);

    const double xdone = node(done);
    if (xd <= xdone) {
      if (done == 0) return y_[0];
      auto j = static_cast<std::size_t>(std::floor((xd - t_.a) / h_));
      j = std::min(j, done - 1);
      while (j > 0 && xd < node(j)) --j;
      while (j + 1 < done && xd >= node(j + 1)) ++j;
      const double t = (xd - node(j)) / h_;
      if (t == 0.0) return y_[j];
      return hermite_value(y_[j], dy_[j], y_[j + 1], dy_[j + 1], h_, t);
    }
    // Inside the step being computed.
    if (done == 0) {
      const double s = xd - t_.a;
      return y_[0] + s * dy_[0] + 0.5 * s * s * ypp0_;
    }
    const std::size_t j = done - 1;
    const double t = (xd - node(j)) / h_;
    return hermite_value(y_[j], dy_[j], y_[done], dy_[done], h_, t);
  }

  const SegmentTable& t_;
  double lambda_;
  const SolutionSegment* history_;
  double h_;
  double ypp0_ = 0.0;
  std::vector<double> y_;
  std::vector<double> dy_;
};

Side side_of(double a, double b) {
  if (b <= kInterface && a >= 0.0) return Side::left;
  if (a >= kInterface && b <= kRightEnd) return Side::right;
  throw std::invalid_argument("segment interval must lie within [0, pi/2] or [pi/2, pi]");
}

}  // namespace

SegmentTable SegmentTable::build(const ProblemSpec& spec, Side side, double a, double b, int steps) {
  if (steps < 1) throw std::invalid_argument("steps must be positive");
  if (!(b > a)) throw std::invalid_argument("segment interval must have b > a");
  SegmentTable t;
  t.side = side;
  t.a = a;
  t.b = b;
  t.steps = steps;
  const Expr& q = spec.q(side);
  const Expr& retard = spec.retard(side);
  const double h = (b - a) / steps;
  const auto n = static_cast<std::size_t>(steps);
  t.q_node.resize(n + 1);
  t.delayed_node.resize(n + 1);
  t.q_mid.resize(n);
  t.delayed_mid.resize(n);
  for (std::size_t i = 0; i <= n; ++i) {
    const double x = i == n ? b : a + static_cast<double>(i) * h;
    t.q_node[i] = q.eval(x);
    t.delayed_node[i] = delayed_argument(retard, x, a);
  }
  for (std::size_t i = 0; i < n; ++i) {
    const double x = a + (static_cast<double>(i) + 0.5) * h;
    t.q_mid[i] = q.eval(x);
    t.delayed_mid[i] = delayed_argument(retard, x, a);
  }
  return t;
}

SolutionSegment integrate_segment(const SegmentTable& table, double lambda, double y0, double dy0,
                                  const SolutionSegment* history) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw std::domain_error("lambda must be positive and finite");
  return Builder(table, lambda, history).run(y0, dy0);
}

SolutionSegment integrate_segment(const ProblemSpec& spec, double lambda, double a, double b, double y0,
                                  double dy0, const SolutionSegment* history, int steps) {
  const auto table = SegmentTable::build(spec, side_of(a, b), a, b, steps);
  return integrate_segment(table, lambda, y0, dy0, history);
}

double cube_root(double lambda) {
  if (!(lambda > 0.0)) throw std::domain_error("cube root is taken only for lambda > 0");
  return std::exp(std::log(lambda) / 3.0);
}

Shooter::Shooter(ProblemSpec spec, int steps_per_segment)
    : spec_(std::move(spec)),
      left_(SegmentTable::build(spec_, Side::left, 0.0, kInterface, steps_per_segment)),
      right_(SegmentTable::build(spec_, Side::right, kInterface, kRightEnd, steps_per_segment)) {}

ShootingResult Shooter::shoot(double lambda) const {
  ShootingResult r;
  r.lambda = lambda;
  r.left = integrate_segment(left_, lambda, std::sin(spec_.alpha), -std::cos(spec_.alpha));
  const double scale = 1.0 / (cube_root(lambda) * spec_.coupling);
  r.right = integrate_segment(right_, lambda, scale * r.left.back_value(), scale * r.left.back_deriv());
  return r;
}

double Shooter::characteristic(double lambda) const {
  const auto r = shoot(lambda);
  return r.right.back_value() * std::cos(spec_.beta) + r.right.back_deriv() * std::sin(spec_.beta);
}

ShootingResult shoot(const ProblemSpec& spec, double lambda, int steps_per_segment) {
  return Shooter(spec, steps_per_segment).shoot(lambda);
}

}  // namespace delayspec
