#include "delayspec/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "delayspec/kernels.hpp"

namespace delayspec {

namespace {

bool opposite(double a, double b) { return (a < 0.0 && b > 0.0) || (a > 0.0 && b < 0.0); }

Eigenpair finish(const Shooter& shooter, double s, int index) {
  Eigenpair p;
  p.index = index;
  p.s = s;
  p.lambda = s * s;
  auto shot = shooter.shoot(p.lambda);
  const auto& spec = shooter.spec();
  p.F_residual = shot.right.back_value() * std::cos(spec.beta) + shot.right.back_deriv() * std::sin(spec.beta);
  p.left = std::move(shot.left);
  p.right = std::move(shot.right);
  return p;
}

std::vector<double> window_grid(int n, int samples) {
  std::vector<double> s(static_cast<std::size_t>(samples));
  const double lo = n - 0.5;
  for (int i = 0; i < samples; ++i) s[static_cast<std::size_t>(i)] = lo + static_cast<double>(i) / (samples - 1);
  return s;
}

}  // namespace

LocalizationError::LocalizationError(int n, int sign_changes)
    : std::runtime_error("window around n = " + std::to_string(n) + " holds " + std::to_string(sign_changes) +
                         " sign changes of F (expected exactly one); use an s-range scan instead"),
      n_(n),
      sign_changes_(sign_changes) {}

CharacteristicSample char_fn(const Shooter& shooter, double lambda) {
  return {lambda, shooter.characteristic(lambda), CharacteristicSample::Method::shooting};
}

CharacteristicSample char_fn(const ProblemSpec& spec, double lambda, int steps) {
  return char_fn(Shooter(spec, steps), lambda);
}

CharacteristicSample char_fn_picard(const ProblemSpec& spec, double lambda, const PicardOptions& opts) {
  return {lambda, picard_characteristic(spec, lambda, opts), CharacteristicSample::Method::picard};
}

Eigenpair refine_root(const Shooter& shooter, double s_lo, double f_lo, double s_hi, double f_hi, double tol,
                      int index) {
  if (f_lo == 0.0) return finish(shooter, s_lo, index);
  if (f_hi == 0.0) return finish(shooter, s_hi, index);
  if (!opposite(f_lo, f_hi)) throw std::invalid_argument("refine_root: bracket does not change sign");
  for (int it = 0; it < 200 && s_hi - s_lo >= tol; ++it) {
    const double mid = 0.5 * (s_lo + s_hi);
    const double fm = shooter.characteristic(mid * mid);
    if (fm == 0.0) return finish(shooter, mid, index);
    if (opposite(fm, f_lo)) {
      s_hi = mid;
    } else {
      s_lo = mid;
      f_lo = fm;
    }
  }
  return finish(shooter, 0.5 * (s_lo + s_hi), index);
}

std::vector<Eigenpair> scan_roots(const Shooter& shooter, double s_min, double s_max, int samples,
                                  double refine_tol) {
  if (!(s_min > 0.0) || !(s_max > s_min)) throw std::invalid_argument("scan_roots needs 0 < s_min < s_max");
  if (samples < 2) throw std::invalid_argument("scan_roots needs at least two samples");
  std::vector<double> s(static_cast<std::size_t>(samples));
  for (int i = 0; i < samples; ++i)
    s[static_cast<std::size_t>(i)] = s_min + (s_max - s_min) * static_cast<double>(i) / (samples - 1);
  const auto f = parallel::sample_characteristic(shooter, s);

  std::vector<Eigenpair> roots;
  for (std::size_t i = 0; i + 1 < s.size(); ++i) {
    if (f[i] == 0.0) {
      roots.push_back(finish(shooter, s[i], static_cast<int>(roots.size()) + 1));
    } else if (opposite(f[i], f[i + 1])) {
      roots.push_back(refine_root(shooter, s[i], f[i], s[i + 1], f[i + 1], refine_tol,
                                  static_cast<int>(roots.size()) + 1));
    }
  }
  if (f.back() == 0.0) roots.push_back(finish(shooter, s.back(), static_cast<int>(roots.size()) + 1));
  return roots;
}

int count_sign_changes(const Shooter& shooter, int n, int samples) {
  const auto s = window_grid(n, samples);
  const auto f = serial::sample_characteristic(shooter, s);
  int changes = 0;
  for (std::size_t i = 0; i + 1 < f.size(); ++i)
    if (opposite(f[i], f[i + 1]) || (f[i] == 0.0 && i > 0)) ++changes;
  return changes;
}

Eigenpair localize_near_n(const Shooter& shooter, int n, double refine_tol, int samples) {
  if (n < 1) throw std::invalid_argument("localize_near_n needs n >= 1");
  if (samples < 2) throw std::invalid_argument("localize_near_n needs at least two window samples");
  if (!shooter.spec().case1()) throw Case1Required("localization near n^2 needs sin(alpha) != 0 and sin(beta) != 0");

  const auto s = window_grid(n, samples);
  const auto f = serial::sample_characteristic(shooter, s);
  int changes = 0;
  std::size_t at = 0;
  for (std::size_t i = 0; i + 1 < f.size(); ++i) {
    if (opposite(f[i], f[i + 1]) || (f[i] == 0.0 && i > 0)) {
      ++changes;
      at = i;
    }
  }
  if (changes != 1) throw LocalizationError(n, changes);
  return refine_root(shooter, s[at], f[at], s[at + 1], f[at + 1], refine_tol, n);
}

double default_certificate_step(double lambda) { return std::min(0.5, 1e-4 * std::max(1.0, lambda)); }

SimplicityCertificate simplicity_certificate(const Shooter& shooter, const Eigenpair& pair, double h) {
  SimplicityCertificate c;
  c.reliable = h > 0.0 && h <= 1.0 && h < pair.lambda;
  if (!c.reliable) return c;
  const double fp = shooter.characteristic(pair.lambda + h);
  const double fm = shooter.characteristic(pair.lambda - h);
  c.derivative = (fp - fm) / (2.0 * h);
  c.threshold = 10.0 * std::fabs(pair.F_residual) / h;
  c.passed = std::isfinite(c.derivative) && std::fabs(c.derivative) > c.threshold;
  return c;
}

}  // namespace delayspec
