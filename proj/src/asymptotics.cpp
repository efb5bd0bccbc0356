#include "delayspec/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <string>

#include "delayspec/quadrature.hpp"

namespace delayspec {

namespace {

constexpr double kPi = std::numbers::pi;

double cot(double a) { return std::cos(a) / std::sin(a); }

// Integral over [0, x] of f(side, t), split at pi/2.
template <class F>
double split_integral(double x, int points, F&& f) {
  const auto n = static_cast<std::size_t>(points);
  if (x <= kInterface) return simpson([&](double t) { return f(Side::left, t); }, 0.0, x, n);
  return simpson([&](double t) { return f(Side::left, t); }, 0.0, kInterface, n) +
         simpson([&](double t) { return f(Side::right, t); }, kInterface, x, n);
}

double sup_abs_diff(const SolutionSegment& seg, double a, double b, int samples, bool include_a,
                    const std::function<double(double)>& predicted) {
  double worst = 0.0;
  const double h = (b - a) / samples;
  for (int j = include_a ? 0 : 1; j <= samples - (include_a ? 1 : 0); ++j) {
    const double x = a + j * h;
    worst = std::max(worst, std::fabs(seg.eval(x) - predicted(x)));
  }
  return worst;
}

}  // namespace

KL kl_integrals(const ProblemSpec& spec, double x, double s, int quadrature_points) {
  if (!(x > 0.0) || x > kRightEnd) throw std::domain_error("kl_integrals needs x in (0, pi]");
  KL out;
  out.K = 0.5 * split_integral(x, quadrature_points, [&](Side side, double t) {
            return spec.q(side).eval(t) * std::sin(s * spec.retard(side).eval(t));
          });
  out.L = 0.5 * split_integral(x, quadrature_points, [&](Side side, double t) {
            return spec.q(side).eval(t) * std::cos(s * spec.retard(side).eval(t));
          });
  return out;
}

double AsymptoticEstimate::refined() const {
  if (s_refined) return *s_refined;
  if (!case1) throw Case1Required("refined eigenvalue asymptotics need sin(alpha) != 0 and sin(beta) != 0");
  throw RefinedUnavailable("refined eigenvalue asymptotics need conditions a) and b)");
}

AsymptoticModel::AsymptoticModel(ProblemSpec spec, int quadrature_points, int grid_points)
    : spec_(std::move(spec)), quad_(quadrature_points), conditions_(check_refined_conditions(spec_, grid_points)) {}

void AsymptoticModel::require_refined() const {
  if (!conditions_.case1)
    throw Case1Required("refined asymptotics need sin(alpha) != 0 and sin(beta) != 0");
  if (!conditions_.refined_ok()) throw RefinedUnavailable("refined asymptotics need conditions a) and b)");
}

AsymptoticEstimate AsymptoticModel::predict_s(int n) const {
  if (n < 1) throw std::invalid_argument("predict_s needs n >= 1");
  AsymptoticEstimate e;
  e.n = n;
  e.s_leading = n;
  e.case1 = conditions_.case1;
  const KL kl_pi = kl(kRightEnd, n);
  e.K_pi = kl_pi.K;
  e.L_pi = kl_pi.L;
  if (conditions_.refined_ok())
    e.s_refined = n + (cot(spec_.beta) - cot(spec_.alpha) - kl_pi.L) / (n * kPi);
  return e;
}

double AsymptoticModel::predict_eigenfunction(int n, double x, EigenfunctionOrder order,
                                              RightScaling scaling) const {
  if (x == kInterface) throw std::domain_error("the eigenfunction is two-valued at pi/2");
  if (x < 0.0 || x > kRightEnd) throw std::domain_error("x must lie in [0, pi]");
  const double sa = std::sin(spec_.alpha);
  const double nn = n;
  const bool left = x < kInterface;
  const double amplitude = left ? sa : sa / (std::cbrt(nn * nn) * spec_.coupling);

  if (order == EigenfunctionOrder::leading) return amplitude * std::cos(nn * x);

  require_refined();
  const double ca = cot(spec_.alpha);
  const double shift = cot(spec_.beta) - ca - kl(kRightEnd, nn).L;
  const KL at_x = x > 0.0 ? kl(x, nn) : KL{};
  const double sin_scale = left || scaling == RightScaling::parallel_to_left
                               ? 1.0 / (nn * kPi)
                               : 1.0 / (std::pow(nn, 5.0 / 3.0) * kPi);
  return amplitude * (std::cos(nn * x) * (1.0 + at_x.K / nn) -
                      std::sin(nn * x) * sin_scale * (shift * x + (ca + at_x.L) * kPi));
}

AsymptoticEstimate predict_s(const ProblemSpec& spec, int n) { return AsymptoticModel(spec).predict_s(n); }

double predict_eigenfunction(const ProblemSpec& spec, int n, double x, EigenfunctionOrder order) {
  return AsymptoticModel(spec).predict_eigenfunction(n, x, order);
}

AprioriBounds apriori_bounds(const ProblemSpec& spec, double lambda, const QNorms& norms) {
  const double q1 = norms.q1;
  const double q2 = norms.q2;
  if (!(q1 > 1e-14)) throw DegenerateBound("a-priori bounds need q1 > 0");
  const double sa = std::sin(spec.alpha), ca = std::cos(spec.alpha);
  const double a = std::sqrt(4.0 * q1 * q1 * sa * sa + ca * ca);
  AprioriBounds b;
  b.bound1 = a / q1;
  b.bound2 = 2.0 * std::cbrt(2.0) / (std::cbrt(std::pow(q1, 5.0)) * std::fabs(spec.coupling)) * a;
  b.deriv_bound = a / std::cbrt(4.0 * std::pow(q1, 5.0));
  b.applicable1 = lambda >= 4.0 * q1 * q1;
  b.applicable2 = lambda >= std::max(4.0 * q1 * q1, 4.0 * q2 * q2);
  b.applicable_deriv = std::sqrt(lambda) >= 2.0 * q1;
  return b;
}

AprioriBounds apriori_bounds(const ProblemSpec& spec, double lambda) { return apriori_bounds(spec, lambda, q_norms(spec)); }

BoundViolations check_apriori_bounds(const ProblemSpec&, const ShootingResult& shot, const AprioriBounds& bounds,
                             int samples) {
  BoundViolations v;
  v.samples = samples;
  const double s53 = std::pow(shot.lambda, 5.0 / 6.0);
  for (int j = 0; j < samples; ++j) {
    const double xl = kInterface * j / (samples - 1);
    const double xr = kInterface + kInterface * j / (samples - 1);
    if (bounds.applicable1 && std::fabs(shot.left.eval(xl)) > bounds.bound1) ++v.w1;
    if (bounds.applicable2 && std::fabs(shot.right.eval(xr)) > bounds.bound2) ++v.w2;
    if (bounds.applicable_deriv && std::fabs(shot.left.eval_deriv(xl)) / s53 > bounds.deriv_bound) ++v.deriv;
  }
  return v;
}

SlopeFit fit_rate(const std::vector<double>& n, const std::vector<double>& residual, double floor,
                  double threshold) {
  SlopeFit f;
  f.threshold = threshold;
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < n.size(); ++i) {
    if (residual[i] > floor) {
      xs.push_back(n[i]);
      ys.push_back(residual[i]);
    }
  }
  f.points_used = static_cast<int>(xs.size());
  if (xs.size() < 3) {
    f.floor_limited = true;
    f.passed = true;
    return f;
  }
  f.slope = loglog_slope(xs, ys);
  f.passed = f.slope <= threshold;
  return f;
}

double oscillatory_integral(const ProblemSpec& spec, double x, double s, bool cosine, int quadrature_points) {
  const int points = std::max(quadrature_points, static_cast<int>(std::ceil(64.0 * s)));
  return split_integral(x, points, [&](Side side, double t) {
    const double phase = s * (2.0 * t - spec.retard(side).eval(t));
    return spec.q(side).eval(t) * (cosine ? std::cos(phase) : std::sin(phase));
  });
}

bool RateReport::passed() const {
  bool ok = bounded && eigenvalue_rate.passed && eigenfunction_leading.passed && eigenfunction_refined.passed &&
            amplitude_ok && bounds.total() == 0;
  for (const auto& d : decay) ok = ok && d.fit.passed;
  return ok;
}

RateReport verify_rates(const AsymptoticModel& model, const std::vector<Eigenpair>& pairs,
                        const std::vector<AsymptoticEstimate>& estimates, const RateOptions& options) {
  std::map<int, const AsymptoticEstimate*> by_n;
  for (const auto& e : estimates) by_n[e.n] = &e;
  std::vector<const Eigenpair*> matched;
  for (const auto& p : pairs)
    if (by_n.count(p.index)) matched.push_back(&p);
  std::sort(matched.begin(), matched.end(), [](auto* a, auto* b) { return a->index < b->index; });
  if (matched.size() < 8)
    throw InsufficientRange("rate verification needs at least 8 indices (got " + std::to_string(matched.size()) +
                            "); widen the n-range, e.g. n in [5, 50]");

  const ProblemSpec& spec = model.spec();
  const bool refined = model.conditions().refined_ok();
  const double sa = std::sin(spec.alpha);
  const int m = options.eigenfunction_samples;

  RateReport r;
  r.decay_s = options.decay_s;
  for (const Eigenpair* p : matched) {
    const AsymptoticEstimate& e = *by_n.at(p->index);
    RateRow row;
    row.n = p->index;
    row.s = p->s;
    const double nn = row.n;
    row.scaled_shift = std::cbrt(nn) * std::fabs(p->s - nn);
    row.s_refined = e.s_refined.value_or(e.s_leading);
    row.eigenvalue_residual = std::fabs(p->s - row.s_refined);

    auto predicted = [&](EigenfunctionOrder order, RightScaling scaling) {
      return [&, order, scaling](double x) { return model.predict_eigenfunction(row.n, x, order, scaling); };
    };
    row.err_leading = sup_abs_diff(p->left, 0.0, kInterface, m, true,
                                   predicted(EigenfunctionOrder::leading, RightScaling::as_printed));
    if (refined) {
      row.err_refined = sup_abs_diff(p->left, 0.0, kInterface, m, true,
                                     predicted(EigenfunctionOrder::refined, RightScaling::as_printed));
      row.err_right_printed = sup_abs_diff(p->right, kInterface, kRightEnd, m, false,
                                           predicted(EigenfunctionOrder::refined, RightScaling::as_printed));
      row.err_right_parallel = sup_abs_diff(p->right, kInterface, kRightEnd, m, false,
                                            predicted(EigenfunctionOrder::refined, RightScaling::parallel_to_left));
    }
    double sup_right = 0.0;
    for (int j = 1; j <= m; ++j) sup_right = std::max(sup_right, std::fabs(p->right.eval(kInterface + kInterface * j / m)));
    row.right_amplitude_ratio = sa != 0.0 ? sup_right * std::cbrt(nn * nn) * std::fabs(spec.coupling) / std::fabs(sa) : 0.0;
    r.rows.push_back(row);
  }

  // (i) n^(1/3) |s_n - n| must not grow between the two halves of the range.
  const std::size_t half = (r.rows.size() + 1) / 2;
  for (std::size_t i = 0; i < r.rows.size(); ++i)
    (i < half ? r.shift_max_first : r.shift_max_second) =
        std::max(i < half ? r.shift_max_first : r.shift_max_second, r.rows[i].scaled_shift);
  r.bounded = r.shift_max_second <= options.boundedness_factor * r.shift_max_first ||
              r.shift_max_second <= options.eigenvalue_floor;

  // (ii) eigenvalue rate.
  std::vector<double> ns, res;
  for (const auto& row : r.rows) {
    ns.push_back(row.n);
    res.push_back(row.eigenvalue_residual);
  }
  if (refined) {
    r.eigenvalue_rate = fit_rate(ns, res, options.eigenvalue_floor, options.eigenvalue_slope);
  } else {
    r.eigenvalue_rate.floor_limited = true;
    r.eigenvalue_rate.passed = true;
  }

  // (iii) eigenfunction rates over n >= eigenfunction_min_n when that leaves enough points.
  std::vector<const RateRow*> ef;
  for (const auto& row : r.rows)
    if (row.n >= options.eigenfunction_min_n) ef.push_back(&row);
  if (ef.size() < 8) {
    ef.clear();
    for (const auto& row : r.rows) ef.push_back(&row);
  }
  std::vector<double> en, lead, ref, rp, rpar;
  for (const RateRow* row : ef) {
    en.push_back(row->n);
    lead.push_back(row->err_leading);
    ref.push_back(row->err_refined);
    rp.push_back(row->err_right_printed);
    rpar.push_back(row->err_right_parallel);
  }
  r.eigenfunction_leading =
      fit_rate(en, lead, options.eigenfunction_floor, options.leading_eigenfunction_slope);
  if (refined) {
    r.eigenfunction_refined =
        fit_rate(en, ref, options.eigenfunction_floor, options.refined_eigenfunction_slope);
    r.right_printed = fit_rate(en, rp, options.eigenfunction_floor, options.refined_eigenfunction_slope);
    r.right_parallel = fit_rate(en, rpar, options.eigenfunction_floor, options.refined_eigenfunction_slope);
  } else {
    for (SlopeFit* f : {&r.eigenfunction_refined, &r.right_printed, &r.right_parallel}) {
      f->floor_limited = true;
      f->passed = true;
    }
  }

  r.amplitude_ratio = r.rows.back().right_amplitude_ratio;
  r.amplitude_ok = sa == 0.0 || std::fabs(r.amplitude_ratio - 1.0) <= options.amplitude_tolerance;

  // (iv) decay of the oscillatory integrals.
  for (double x : {kInterface, kRightEnd}) {
    for (bool cosine : {true, false}) {
      DecayFit d;
      d.x = x;
      d.cosine = cosine;
      for (double s : options.decay_s) d.values.push_back(std::fabs(oscillatory_integral(spec, x, s, cosine, kDefaultKLPoints)));
      d.fit = fit_rate(options.decay_s, d.values, 1e-12, options.decay_slope);
      r.decay.push_back(std::move(d));
    }
  }

  // A-priori bounds on every pair in range.
  const QNorms norms = q_norms(spec);
  if (norms.q1 > 1e-14) {
    r.bounds_checked = true;
    for (const Eigenpair* p : matched) {
      const auto b = apriori_bounds(spec, p->lambda, norms);
      ShootingResult shot{p->left, p->right, p->lambda};
      const auto v = check_apriori_bounds(spec, shot, b);
      r.bounds.samples += v.samples;
      r.bounds.w1 += v.w1;
      r.bounds.w2 += v.w2;
      r.bounds.deriv += v.deriv;
    }
  }
  return r;
}

SolverFloor solver_floor(const ProblemSpec& spec, const Eigenpair& pair, int steps, double refine_tol) {
  const Shooter fine(spec, 2 * steps);
  const double half_window = 1e-3;
  const double lo = pair.s - half_window, hi = pair.s + half_window;
  const double flo = fine.characteristic(lo * lo), fhi = fine.characteristic(hi * hi);
  SolverFloor f;
  if ((flo < 0.0) == (fhi < 0.0)) return f;
  const Eigenpair other = refine_root(fine, lo, flo, hi, fhi, refine_tol, pair.index);
  double ef = 0.0;
  for (int j = 0; j < 256; ++j) {
    const double x = kInterface * j / 256.0;
    ef = std::max(ef, std::fabs(pair.left.eval(x) - other.left.eval(x)));
  }
  f.eigenvalue = std::max(1e-12, 10.0 * std::fabs(pair.s - other.s));
  f.eigenfunction = std::max(1e-12, 10.0 * ef);
  return f;
}

}  // namespace delayspec
