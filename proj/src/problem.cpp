#include "delayspec/problem.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "delayspec/quadrature.hpp"

namespace delayspec {

namespace {

// Finite-difference estimates larger than this are treated as unbounded.
constexpr double kDerivativeLimit = 1e6;
// Slack on the finite-difference estimate of retard'(x) <= 1.
constexpr double kSlopeSlack = 1e-6;
constexpr double kAngleZero = 1e-12;

struct Interval {
  double a;
  double b;
};

// Closed interval used for sampling one side, pulled back from pi/2.
Interval sample_interval(Side side) {
  return side == Side::left ? Interval{0.0, kInterface - kOneSidedOffset}
                            : Interval{kInterface + kOneSidedOffset, kRightEnd};
}

const char* suffix(Side side) { return side == Side::left ? "_left" : "_right"; }

// Passes when f(x) >= -slack everywhere on the grid; records the minimum.
template <class F>
CheckResult check_nonnegative(std::string name, const std::vector<double>& grid, F&& f) {
  CheckResult r;
  r.name = std::move(name);
  r.worst_value = std::numeric_limits<double>::infinity();
  for (double x : grid) {
    const double v = f(x);
    if (v < r.worst_value) {
      r.worst_value = v;
      r.worst_x = x;
    }
  }
  r.passed = r.worst_value >= -kInequalitySlack;
  return r;
}

CheckResult check_limit(std::string name, const Expr& f, Side side) {
  CheckResult r;
  r.name = std::move(name);
  const double sign = side == Side::left ? -1.0 : 1.0;
  double prev = 0.0;
  double last_step = 0.0;
  bool finite = true;
  for (int k = 3; k <= 9; ++k) {
    const double x = kInterface + sign * std::pow(10.0, -k);
    const double v = f.eval(x);
    finite = finite && std::isfinite(v);
    if (k > 3) last_step = std::fabs(v - prev);
    prev = v;
  }
  r.worst_x = kInterface + sign * kOneSidedOffset;
  r.worst_value = prev;
  r.passed = finite && last_step <= 1e-6 * std::max(1.0, std::fabs(prev));
  if (!r.passed) r.detail = "samples toward pi/2 do not settle";
  return r;
}

std::vector<double> sample(const Expr& f, Interval iv, int n) {
  std::vector<double> v(static_cast<std::size_t>(n) + 1);
  const double h = (iv.b - iv.a) / n;
  for (int i = 0; i <= n; ++i) v[static_cast<std::size_t>(i)] = f.eval(iv.a + i * h);
  return v;
}

// Second-order first derivative on a uniform grid (one-sided at the ends).
std::vector<double> first_derivative(const std::vector<double>& f, double h) {
  const std::size_t n = f.size();
  std::vector<double> d(n);
  d[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * h);
  d[n - 1] = (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) / (2.0 * h);
  for (std::size_t i = 1; i + 1 < n; ++i) d[i] = (f[i + 1] - f[i - 1]) / (2.0 * h);
  return d;
}

std::vector<double> second_derivative(const std::vector<double>& f, double h) {
  const std::size_t n = f.size();
  std::vector<double> d(n);
  const double h2 = h * h;
  d[0] = (2.0 * f[0] - 5.0 * f[1] + 4.0 * f[2] - f[3]) / h2;
  d[n - 1] = (2.0 * f[n - 1] - 5.0 * f[n - 2] + 4.0 * f[n - 3] - f[n - 4]) / h2;
  for (std::size_t i = 1; i + 1 < n; ++i) d[i] = (f[i + 1] - 2.0 * f[i] + f[i - 1]) / h2;
  return d;
}

CheckResult check_bounded(std::string name, const std::vector<double>& d, Interval iv) {
  CheckResult r;
  r.name = std::move(name);
  const double h = (iv.b - iv.a) / static_cast<double>(d.size() - 1);
  bool finite = true;
  for (std::size_t i = 0; i < d.size(); ++i) {
    finite = finite && std::isfinite(d[i]);
    if (std::fabs(d[i]) >= std::fabs(r.worst_value)) {
      r.worst_value = d[i];
      r.worst_x = iv.a + static_cast<double>(i) * h;
    }
  }
  r.passed = finite && std::fabs(r.worst_value) <= kDerivativeLimit;
  return r;
}

}  // namespace

ProblemSpec ProblemSpec::make(Expr q_left, Expr q_right, Expr retard_left, Expr retard_right, double alpha,
                              double beta, double coupling) {
  if (coupling == 0.0 || !std::isfinite(coupling))
    throw std::invalid_argument("coupling must be finite and nonzero");
  if (!std::isfinite(alpha) || !std::isfinite(beta)) throw std::invalid_argument("boundary angles must be finite");
  return ProblemSpec{std::move(q_left), std::move(q_right), std::move(retard_left), std::move(retard_right),
                     alpha, beta, coupling};
}

ProblemSpec ProblemSpec::from_strings(const std::string& q_left, const std::string& q_right,
                                      const std::string& retard_left, const std::string& retard_right,
                                      double alpha, double beta, double coupling) {
  return make(Expr::parse(q_left), Expr::parse(q_right), Expr::parse(retard_left), Expr::parse(retard_right),
              alpha, beta, coupling);
}

bool ProblemSpec::case1() const {
  return std::fabs(std::sin(alpha)) > kAngleZero && std::fabs(std::sin(beta)) > kAngleZero;
}

bool ValidationReport::accepted() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

const CheckResult* ValidationReport::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

const CheckResult* ConditionReport::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

std::vector<double> side_grid(Side side, int grid_points) {
  std::vector<double> g;
  g.reserve(static_cast<std::size_t>(grid_points) + 1);
  const double h = kInterface / grid_points;
  if (side == Side::left) {
    for (int i = 0; i < grid_points; ++i) g.push_back(i * h);
    g.push_back(kInterface - kOneSidedOffset);
  } else {
    g.push_back(kInterface + kOneSidedOffset);
    for (int i = 1; i <= grid_points; ++i) g.push_back(kInterface + i * h);
  }
  return g;
}

ValidationReport validate(const ProblemSpec& spec, int grid_points) {
  if (grid_points < 16) throw std::invalid_argument("validate needs at least 16 grid points");
  ValidationReport report;

  CheckResult coupling;
  coupling.name = "coupling_nonzero";
  coupling.worst_value = spec.coupling;
  coupling.passed = spec.coupling != 0.0 && std::isfinite(spec.coupling);
  report.checks.push_back(coupling);

  for (Side side : {Side::left, Side::right}) {
    const auto grid = side_grid(side, grid_points);
    const Expr& retard = spec.retard(side);
    report.checks.push_back(check_nonnegative(std::string("retard_nonnegative") + suffix(side), grid,
                                              [&](double x) { return retard.eval(x); }));
    const double floor = side == Side::left ? 0.0 : kInterface;
    report.checks.push_back(check_nonnegative(std::string("delayed_argument") + suffix(side), grid,
                                              [&](double x) { return x - retard.eval(x) - floor; }));
    report.checks.push_back(check_limit(std::string("q_limit") + suffix(side), spec.q(side), side));
    report.checks.push_back(check_limit(std::string("retard_limit") + suffix(side), retard, side));
  }
  return report;
}

ConditionReport check_refined_conditions(const ProblemSpec& spec, int grid_points) {
  if (grid_points < 16) throw std::invalid_argument("check_refined_conditions needs at least 16 grid points");
  ConditionReport report;
  bool a_ok = true;
  bool b_ok = true;

  for (Side side : {Side::left, Side::right}) {
    const Interval iv = sample_interval(side);
    const double h = (iv.b - iv.a) / grid_points;

    const auto q = sample(spec.q(side), iv, grid_points);
    const auto dq = first_derivative(q, h);
    auto c = check_bounded(std::string("q_derivative_bounded") + suffix(side), dq, iv);
    a_ok = a_ok && c.passed;
    report.checks.push_back(std::move(c));

    const auto r = sample(spec.retard(side), iv, grid_points);
    const auto d2r = second_derivative(r, h);
    c = check_bounded(std::string("retard_second_derivative_bounded") + suffix(side), d2r, iv);
    a_ok = a_ok && c.passed;
    report.checks.push_back(std::move(c));

    const auto dr = first_derivative(r, h);
    CheckResult slope;
  slope.name = std::string("retard_slope_at_most_one") + suffix(side);
    slope.worst_value = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < dr.size(); ++i) {
      if (dr[i] > slope.worst_value) {
        slope.worst_value = dr[i];
        slope.worst_x = iv.a + static_cast<double>(i) * h;
      }
    }
    slope.passed = std::isfinite(slope.worst_value) && slope.worst_value <= 1.0 + kSlopeSlack;
    b_ok = b_ok && slope.passed;
    report.checks.push_back(std::move(slope));
  }

  CheckResult origin;
  origin.name = "retard_zero_at_origin";
  origin.worst_value = spec.retard_left.eval(0.0);
  origin.passed = std::fabs(origin.worst_value) <= kZeroTolerance;
  b_ok = b_ok && origin.passed;
  report.checks.push_back(origin);

  CheckResult right_limit;
  right_limit.name = "retard_zero_right_of_interface";
  right_limit.worst_x = kInterface + kOneSidedOffset;
  right_limit.worst_value = spec.retard_right.eval(right_limit.worst_x);
  right_limit.passed = std::fabs(right_limit.worst_value) <= kZeroTolerance;
  b_ok = b_ok && right_limit.passed;
  report.checks.push_back(right_limit);

  // The weaker inequalities that b) implies, reported on their own.
  const auto v = validate(spec, grid_points);
  for (const char* name : {"delayed_argument_left", "delayed_argument_right"}) report.checks.push_back(*v.find(name));

  CheckResult case1;
  case1.name = "case1";
  case1.worst_value = std::min(std::fabs(std::sin(spec.alpha)), std::fabs(std::sin(spec.beta)));
  case1.passed = spec.case1();
  if (!case1.passed) case1.detail = "sin(alpha) or sin(beta) vanishes";
  report.checks.push_back(case1);

  report.condition_a = a_ok;
  report.condition_b = b_ok;
  report.case1 = case1.passed;
  return report;
}

QNorms q_norms(const ProblemSpec& spec, int quadrature_points) {
  if (quadrature_points < 2) throw std::invalid_argument("q_norms needs at least two quadrature points");
  const auto n = static_cast<std::size_t>(quadrature_points);
  QNorms out;
  out.q1 = simpson([&](double x) { return std::fabs(spec.q_left.eval(x)); }, 0.0, kInterface, n);
  out.q2 = simpson([&](double x) { return std::fabs(spec.q_right.eval(x)); }, kInterface, kRightEnd, n);
  return out;
}

}  // namespace delayspec
