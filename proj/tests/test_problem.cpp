#include <cmath>
#include <numbers>

#include <doctest.h>

#include "delayspec/problem.hpp"

using namespace delayspec;

namespace {

constexpr double pi = std::numbers::pi;

ProblemSpec null_problem() { return ProblemSpec::from_strings("0", "0", "0", "0", pi / 2, pi / 2, 1.0); }

ProblemSpec delayed_problem() {
  return ProblemSpec::from_strings("sin(x)", "cos(x)", "0.5*x*(pi/2 - x)", "(x - pi/2)*(pi - x)*0.25", pi / 3,
                                   pi / 4, 2.0);
}

}  // namespace

TEST_CASE("construction rejects zero coupling and non-finite angles") {
  CHECK_THROWS_AS(ProblemSpec::from_strings("0", "0", "0", "0", 1.0, 1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(ProblemSpec::from_strings("0", "0", "0", "0", NAN, 1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(ProblemSpec::from_strings("0", "0", "0", "0", 1.0, INFINITY, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(ProblemSpec::from_strings("q", "0", "0", "0", 1.0, 1.0, 1.0), ParseError);
}

TEST_CASE("zero delay and zero coefficient pass every check") {
  const auto report = validate(null_problem());
  CHECK(report.accepted());
  for (const auto& c : report.checks) CHECK_MESSAGE(c.passed, c.name);
}

TEST_CASE("a retardation larger than x is rejected on the left") {
  auto spec = null_problem();
  spec.retard_left = Expr::parse("2*x");
  const auto report = validate(spec);
  CHECK_FALSE(report.accepted());
  const auto* c = report.find("delayed_argument_left");
  REQUIRE(c);
  CHECK_FALSE(c->passed);
  CHECK(c->worst_x > 0.0);
  CHECK(c->worst_value < 0.0);
}

TEST_CASE("negative retardation is rejected") {
  auto spec = null_problem();
  spec.retard_right = Expr::parse("-1");
  const auto report = validate(spec);
  CHECK_FALSE(report.accepted());
  CHECK_FALSE(report.find("retard_nonnegative_right")->passed);
}

TEST_CASE("the right delayed argument may not reach back across pi/2") {
  auto spec = null_problem();
  spec.retard_right = Expr::parse("0.5");
  CHECK_FALSE(validate(spec).find("delayed_argument_right")->passed);
}

TEST_CASE("the delayed reference problem is accepted") {
  const auto report = validate(delayed_problem());
  CHECK(report.accepted());
}

TEST_CASE("delayed argument bounds hold by brute force on a fine grid") {
  const auto spec = delayed_problem();
  double worst_left = INFINITY, worst_right = INFINITY;
  for (int i = 0; i <= 10000; ++i) {
    const double xl = (pi / 2) * i / 10000.0 * (1 - 1e-12);
    worst_left = std::min(worst_left, xl - spec.retard_left.eval(xl));
    const double xr = pi / 2 + (pi / 2) * i / 10000.0;
    worst_right = std::min(worst_right, xr - spec.retard_right.eval(xr) - pi / 2);
    CHECK(spec.retard_left.eval(xl) >= 0.0);
    CHECK(spec.retard_right.eval(xr) >= -1e-15);
  }
  CHECK(worst_left >= 0.0);
  CHECK(worst_right >= -1e-15);
}

TEST_CASE("a coefficient without a one-sided limit at the interface is rejected") {
  auto spec = null_problem();
  spec.q_left = Expr::parse("1 / (pi/2 - x)");
  CHECK_FALSE(validate(spec).accepted());
}

TEST_CASE("refined conditions for zero delay") {
  const auto c = check_refined_conditions(null_problem());
  CHECK(c.condition_a);
  CHECK(c.condition_b);
  CHECK(c.case1);
  CHECK(c.refined_ok());
}

TEST_CASE("retardation slope pi/4 at the origin passes the slope condition") {
  const auto c = check_refined_conditions(delayed_problem());
  const auto* slope = c.find("retard_slope_at_most_one_left");
  REQUIRE(slope);
  CHECK(slope->passed);
  CHECK(c.refined_ok());
  // d/dx 0.5 x (pi/2 - x) = pi/4 - x, largest at the origin.
  CHECK(pi / 4 <= 1.0);
}

TEST_CASE("slope above one fails condition b") {
  auto spec = null_problem();
  spec.retard_left = Expr::parse("0.35*x^3");
  const auto c = check_refined_conditions(spec);
  CHECK_FALSE(c.find("retard_slope_at_most_one_left")->passed);
  CHECK_FALSE(c.condition_b);
  CHECK(validate(spec).accepted());
}

TEST_CASE("retardation must vanish at the origin and just right of the interface") {
  auto spec = null_problem();
  spec.retard_left = Expr::parse("0.1 + 0*x");
  spec.retard_right = Expr::parse("0.1*(x - pi/2) + 0.01");
  const auto c = check_refined_conditions(spec);
  CHECK_FALSE(c.find("retard_zero_at_origin")->passed);
  CHECK_FALSE(c.find("retard_zero_right_of_interface")->passed);
}

TEST_CASE("case 1 flag") {
  auto spec = null_problem();
  spec.alpha = 0.0;
  CHECK_FALSE(spec.case1());
  CHECK_FALSE(check_refined_conditions(spec).refined_ok());
  spec.alpha = pi / 2;
  spec.beta = pi;
  CHECK_FALSE(spec.case1());
}

TEST_CASE("q norms") {
  const auto zero = q_norms(null_problem());
  CHECK(zero.q1 == 0.0);
  CHECK(zero.q2 == 0.0);
  const auto one = q_norms(ProblemSpec::from_strings("1", "1", "0", "0", pi / 2, pi / 2, 1.0));
  CHECK(one.q1 == doctest::Approx(pi / 2).epsilon(1e-12));
  CHECK(one.q2 == doctest::Approx(pi / 2).epsilon(1e-12));
  const auto sine = q_norms(ProblemSpec::from_strings("sin(x)", "0", "0", "0", pi / 2, pi / 2, 1.0));
  CHECK(sine.q1 == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(sine.q2 == 0.0);
  const auto signed_q = q_norms(ProblemSpec::from_strings("cos(2*x)", "0", "0", "0", pi / 2, pi / 2, 1.0));
  CHECK(signed_q.q1 == doctest::Approx(1.0).epsilon(1e-8));  // integral of |cos 2x|
}

TEST_CASE("side grids stay off the interface") {
  for (Side side : {Side::left, Side::right}) {
    const auto g = side_grid(side, 257);
    for (double x : g) CHECK(x != pi / 2);
    if (side == Side::left) CHECK(g.back() == doctest::Approx(pi / 2 - kOneSidedOffset));
    else CHECK(g.front() == doctest::Approx(pi / 2 + kOneSidedOffset));
  }
}
