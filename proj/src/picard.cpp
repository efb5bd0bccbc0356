#include "delayspec/picard.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "delayspec/quadrature.hpp"

namespace delayspec {

namespace {

// One Volterra equation w = seed - K[w] on a uniform grid over [a, b].
class VolterraSweep {
 public:
  VolterraSweep(const ProblemSpec& spec, Side side, double a, double b, double s, int grid_points)
      : a_(a), b_(b), s_(s) {
    if (grid_points < 3) throw std::invalid_argument("Picard grid needs at least three points");
    const auto n = static_cast<std::size_t>(grid_points);
    h_ = (b - a) / static_cast<double>(n - 1);
    x_.resize(n);
    q_.resize(n);
    delayed_.resize(n);
    cos_.resize(n);
    sin_.resize(n);
    const Expr& q = spec.q(side);
    const Expr& retard = spec.retard(side);
    for (std::size_t i = 0; i < n; ++i) {
      const double x = i + 1 == n ? b : a + static_cast<double>(i) * h_;
      x_[i] = x;
      q_[i] = q.eval(x);
      double xd = x - retard.eval(x);
      if (xd < a && xd >= a - kInequalitySlack) xd = a;
      if (xd > x) xd = std::min(xd, x + kInequalitySlack);
      if (xd < a || xd > x + kInequalitySlack) {
        std::ostringstream os;
        os << "delayed argument " << xd << " at x = " << x << " leaves [" << a << ", x]";
        throw std::domain_error(os.str());
      }
      delayed_[i] = std::min(xd, b);
      cos_[i] = std::cos(s * x);
      sin_[i] = std::sin(s * x);
    }
  }

  const std::vector<double>& x() const { return x_; }
  double cos_at(std::size_t i) const { return cos_[i]; }
  double sin_at(std::size_t i) const { return sin_[i]; }

  // Returns K[w] and its x-derivative part:
  //   value: (1/s) int_a^x q sin s(x-t) w(t - D(t)) dt
  //   deriv: int_a^x q cos s(x-t) w(t - D(t)) dt
  void apply(const std::vector<double>& w, const std::vector<double>& dw, std::vector<double>& value,
             std::vector<double>& deriv) const {
    const std::size_t n = x_.size();
    std::vector<double> gc(n), gs(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double g = q_[i] * interpolate(w, dw, delayed_[i]);
      gc[i] = g * cos_[i];
      gs[i] = g * sin_[i];
    }
    const auto c = cumulative_simpson(gc, h_);
    const auto sn = cumulative_simpson(gs, h_);
    value.resize(n);
    deriv.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      value[i] = (sin_[i] * c[i] - cos_[i] * sn[i]) / s_;
      deriv[i] = cos_[i] * c[i] + sin_[i] * sn[i];
    }
  }

 private:
  // Cubic Hermite through the iterate's values and slopes.
  double interpolate(const std::vector<double>& w, const std::vector<double>& dw, double xd) const {
    const std::size_t last = x_.size() - 2;
    auto j = static_cast<std::size_t>(std::min<double>(std::floor((xd - a_) / h_), static_cast<double>(last)));
    while (j > 0 && xd < x_[j]) --j;
    while (j < last && xd >= x_[j + 1]) ++j;
    const double t = (xd - x_[j]) / h_;
    if (t == 0.0) return w[j];
    if (xd == b_) return w.back();
    return hermite_value(w[j], dw[j], w[j + 1], dw[j + 1], h_, t);
  }

  double a_, b_, s_, h_ = 0.0;
  std::vector<double> x_, q_, delayed_, cos_, sin_;
};

struct Seed {
  std::vector<double> value;
  std::vector<double> deriv;
};

PicardSolution iterate(const VolterraSweep& sweep, const Seed& seed, double lambda, const PicardOptions& opts,
                       const char* name) {
  std::vector<double> w = seed.value, dw = seed.deriv;
  std::vector<double> kv, kd;
  double residual = 0.0;
  for (int it = 1; it <= opts.max_iters; ++it) {
    sweep.apply(w, dw, kv, kd);
    residual = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
      const double nv = seed.value[i] - kv[i];
      residual = std::max(residual, std::fabs(nv - w[i]));
      w[i] = nv;
      dw[i] = seed.deriv[i] - kd[i];
    }
    if (!std::isfinite(residual)) throw PicardError(std::string(name) + ": iterate became non-finite", it, residual);
    if (residual < opts.tol) {
      const auto& x = sweep.x();
      return {SolutionSegment(x.front(), x.back(), std::move(w), std::move(dw), lambda), it, residual};
    }
  }
  std::ostringstream os;
  os << name << ": no convergence in " << opts.max_iters << " iterations (residual " << residual << ")";
  throw PicardError(os.str(), opts.max_iters, residual);
}

void require_contraction(double s, double norm, const char* which) {
  if (!(s > norm)) {
    std::ostringstream os;
    os << "Picard oracle needs sqrt(lambda) = " << s << " > " << which << " = " << norm;
    throw PicardError(os.str(), 0, 0.0);
  }
}

Seed seed_w1(const ProblemSpec& spec, const VolterraSweep& sweep, double s) {
  const double sa = std::sin(spec.alpha), ca = std::cos(spec.alpha);
  const std::size_t n = sweep.x().size();
  Seed seed{std::vector<double>(n), std::vector<double>(n)};
  for (std::size_t i = 0; i < n; ++i) {
    seed.value[i] = sa * sweep.cos_at(i) - ca / s * sweep.sin_at(i);
    seed.deriv[i] = -s * sa * sweep.sin_at(i) - ca * sweep.cos_at(i);
  }
  return seed;
}

Seed seed_w2(const ProblemSpec& spec, const VolterraSweep& sweep, double s, const SolutionSegment& w1) {
  const double w1v = w1.back_value();
  const double w1d = w1.back_deriv();
  const double d = spec.coupling;
  const double s13 = std::cbrt(s);
  const double s23 = s13 * s13;
  const std::size_t n = sweep.x().size();
  Seed seed{std::vector<double>(n), std::vector<double>(n)};
  for (std::size_t i = 0; i < n; ++i) {
    const double u = s * (sweep.x()[i] - kInterface);
    const double c = std::cos(u), sn = std::sin(u);
    seed.value[i] = w1v / (s23 * d) * c + w1d / (s * s23 * d) * sn;
    seed.deriv[i] = -s13 / d * w1v * sn + w1d / (s23 * d) * c;
  }
  return seed;
}

double sweep_residual(const VolterraSweep& sweep, const Seed& seed, const SolutionSegment& w) {
  std::vector<double> v(w.values().begin(), w.values().end());
  std::vector<double> d(w.derivs().begin(), w.derivs().end());
  if (v.size() != sweep.x().size()) throw std::invalid_argument("segment grid does not match the Picard grid");
  std::vector<double> kv, kd;
  sweep.apply(v, d, kv, kd);
  double r = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) r = std::max(r, std::fabs(seed.value[i] - kv[i] - v[i]));
  return r;
}

double root_of(double lambda) {
  if (!(lambda > 0.0)) throw std::domain_error("Picard oracle needs lambda > 0");
  return std::sqrt(lambda);
}

}  // namespace

PicardSolution picard_w1(const ProblemSpec& spec, double lambda, const PicardOptions& opts) {
  const double s = root_of(lambda);
  require_contraction(s, q_norms(spec).q1, "q1");
  const VolterraSweep sweep(spec, Side::left, 0.0, kInterface, s, opts.grid_points);
  return iterate(sweep, seed_w1(spec, sweep, s), lambda, opts, "picard_w1");
}

PicardSolution picard_w2(const ProblemSpec& spec, double lambda, const SolutionSegment& w1,
                         const PicardOptions& opts) {
  const double s = root_of(lambda);
  require_contraction(s, q_norms(spec).q2, "q2");
  if (w1.lambda() != lambda) throw std::invalid_argument("w1 was computed at a different lambda");
  const VolterraSweep sweep(spec, Side::right, kInterface, kRightEnd, s, opts.grid_points);
  return iterate(sweep, seed_w2(spec, sweep, s, w1), lambda, opts, "picard_w2");
}

double picard_w1_residual(const ProblemSpec& spec, double lambda, const SolutionSegment& w) {
  const double s = root_of(lambda);
  const VolterraSweep sweep(spec, Side::left, 0.0, kInterface, s, static_cast<int>(w.size()));
  return sweep_residual(sweep, seed_w1(spec, sweep, s), w);
}

double picard_w2_residual(const ProblemSpec& spec, double lambda, const SolutionSegment& w1,
                          const SolutionSegment& w) {
  const double s = root_of(lambda);
  const VolterraSweep sweep(spec, Side::right, kInterface, kRightEnd, s, static_cast<int>(w.size()));
  return sweep_residual(sweep, seed_w2(spec, sweep, s, w1), w);
}

double picard_characteristic(const ProblemSpec& spec, double lambda, const PicardOptions& opts) {
  const auto w1 = picard_w1(spec, lambda, opts);
  const auto w2 = picard_w2(spec, lambda, w1.segment, opts);
  return w2.segment.back_value() * std::cos(spec.beta) + w2.segment.back_deriv() * std::sin(spec.beta);
}

}  // namespace delayspec
