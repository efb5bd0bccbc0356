#include <cmath>
#include <numbers>

#include <doctest.h>

#include "delayspec/spectral.hpp"

using namespace delayspec;

namespace {

constexpr double pi = std::numbers::pi;

ProblemSpec null_problem() { return ProblemSpec::from_strings("0", "0", "0", "0", pi / 2, pi / 2, 1.0); }

}  // namespace

TEST_CASE("char_fn sampling of the null problem") {
  const Shooter shooter(null_problem());
  CHECK(std::fabs(char_fn(shooter, 1.0).F) < 1e-8);
  CHECK(char_fn(shooter, 2.25).F == doctest::Approx(std::cbrt(1.5)).epsilon(1e-8));
  CHECK(std::fabs(char_fn(shooter, 4.0).F) < 1e-8);
  CHECK(char_fn(shooter, 4.0).method == CharacteristicSample::Method::shooting);
}

TEST_CASE("shooting and Picard characteristic functions agree") {
  const auto spec = ProblemSpec::from_strings("1", "1", "0", "0", pi / 2, pi / 2, 1.0);
  for (double lambda : {9.0, 50.0}) {
    const auto a = char_fn(spec, lambda);
    const auto b = char_fn_picard(spec, lambda);
    CHECK(b.method == CharacteristicSample::Method::picard);
    CHECK(a.F == doctest::Approx(b.F).scale(1.0).epsilon(1e-7));
  }
}

TEST_CASE("null problem roots are the integers") {
  const Shooter shooter(null_problem());
  for (int n = 1; n <= 12; ++n) {
    const auto p = localize_near_n(shooter, n);
    CHECK(p.index == n);
    CHECK(std::fabs(p.s - n) < 1e-8);
    CHECK(p.lambda == p.s * p.s);
    CHECK(std::fabs(p.F_residual) < 1e-8);
  }
}

TEST_CASE("a scan over [0.5, 3.5] finds three roots with ordinal indices") {
  const auto roots = scan_roots(Shooter(null_problem()), 0.5, 3.5, 301);
  REQUIRE(roots.size() == 3);
  for (int i = 0; i < 3; ++i) {
    CHECK(roots[i].index == i + 1);
    CHECK(roots[i].s == doctest::Approx(i + 1.0).epsilon(1e-9));
  }
}

TEST_CASE("constant coefficient roots are sqrt(n^2 - 1)") {
  const Shooter shooter(ProblemSpec::from_strings("1", "1", "0", "0", pi / 2, pi / 2, 1.0));
  for (int n : {5, 13, 30}) {
    const auto p = localize_near_n(shooter, n);
    CHECK(p.s == doctest::Approx(std::sqrt(n * n - 1.0)).epsilon(1e-9));
  }
}

TEST_CASE("Robin end: tan(s pi) = 1/s") {
  // q = 0, alpha = pi/2, beta = pi/4: F = -s^(1/3) (sin s pi - cos s pi / s) / sqrt(2).
  const Shooter shooter(ProblemSpec::from_strings("0", "0", "0", "0", pi / 2, pi / 4, 1.0));
  for (int n : {3, 8}) {
    const auto p = localize_near_n(shooter, n);
    CHECK(std::tan(p.s * pi) == doctest::Approx(1.0 / p.s).epsilon(1e-6));
  }
}

TEST_CASE("refine_root needs a sign change") {
  const Shooter shooter(null_problem());
  CHECK_THROWS_AS(refine_root(shooter, 1.2, 1.0, 1.4, 1.0, 1e-10, 1), std::invalid_argument);
  const auto p = refine_root(shooter, 1.7, shooter.characteristic(1.7 * 1.7), 2.2, shooter.characteristic(2.2 * 2.2),
                             1e-12, 2);
  CHECK(p.s == doctest::Approx(2.0).epsilon(1e-10));
}

TEST_CASE("windows with no or several sign changes are refused") {
  // With q = -400 the equation does not oscillate below lambda = 400, so the
  // window around n = 3 holds no root.
  const Shooter crowded(ProblemSpec::from_strings("-400", "-400", "0", "0", pi / 2, pi / 2, 1.0));
  int changes = count_sign_changes(crowded, 3);
  CHECK(changes != 1);
  CHECK_THROWS_AS(localize_near_n(crowded, 3), LocalizationError);
  try {
    localize_near_n(crowded, 3);
  } catch (const LocalizationError& e) {
    CHECK(e.n() == 3);
    CHECK(e.sign_changes() == changes);
  }
}

TEST_CASE("localization requires case 1") {
  const Shooter shooter(ProblemSpec::from_strings("0", "0", "0", "0", 0.0, pi / 2, 1.0));
  CHECK_THROWS_AS(localize_near_n(shooter, 3), Case1Required);
  CHECK_THROWS_AS(localize_near_n(Shooter(null_problem()), 0), std::invalid_argument);
}

TEST_CASE("simple roots pass the transversality certificate") {
  const Shooter shooter(null_problem());
  for (int n : {1, 4, 15}) {
    const auto p = localize_near_n(shooter, n);
    const auto c = simplicity_certificate(shooter, p, default_certificate_step(p.lambda));
    CHECK(c.reliable);
    CHECK(c.passed);
    // dF/dlambda = -pi cos(s pi) s^(1/3) / (2 s) at integer s.
    const double expected = -pi * std::cos(n * pi) * std::cbrt(double(n)) / (2.0 * n);
    CHECK(c.derivative == doctest::Approx(expected).epsilon(1e-3));
  }
}

TEST_CASE("certificate step outside (0, 1] or beyond lambda is unreliable") {
  const Shooter shooter(null_problem());
  const auto p = localize_near_n(shooter, 1);
  CHECK_FALSE(simplicity_certificate(shooter, p, 2.0).reliable);
  CHECK_FALSE(simplicity_certificate(shooter, p, 0.0).reliable);
  CHECK(default_certificate_step(1e6) == 0.5);
}
