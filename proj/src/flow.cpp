#include "cmc/flow.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cmc/error.hpp"

namespace cmc {

CurvatureTrajectory make_trajectory(double k0) {
  if (k0 == -1.0) throw DomainError("curvature trajectory undefined for k0 = -1");
  CurvatureTrajectory tr;
  tr.k0 = k0;
  const double a = std::abs(k0);
  tr.regime = a == 1.0 ? Regime::unit : (a < 1.0 ? Regime::sub : Regime::super);
  tr.k_tilde = std::abs((1.0 - k0) / (1.0 + k0));
  return tr;
}

double CurvatureTrajectory::blowup_time() const {
  if (k0 < -1.0) return 0.5 * std::log(k_tilde);
  return std::numeric_limits<double>::infinity();
}

double CurvatureTrajectory::at(double t) const {
  if (!(t >= 0.0)) throw DomainError("evolve_curvature: t must be non-negative");
  if (regime == Regime::unit) return k0;
  if (!(t < blowup_time())) throw DomainError("evolve_curvature: past the pole of the trajectory");
  // tanh(t - log sqrt(kt)) = (1 - kt e^{-2t}) / (1 + kt e^{-2t}), coth is the
  // reciprocal; written this way the value at t = 0 is exactly k0.
  const double e = k_tilde * std::exp(-2.0 * t);
  return regime == Regime::sub ? (1.0 - e) / (1.0 + e) : (1.0 + e) / (1.0 - e);
}

double evolve_curvature(double k0, double t) { return make_trajectory(k0).at(t); }

double evolve_curvature_ode(double k0, double t, const OdeOptions& opt) {
  const auto tr = make_trajectory(k0);
  if (!(t >= 0.0)) throw DomainError("evolve_curvature_ode: t must be non-negative");
  if (!(t < tr.blowup_time())) throw DomainError("evolve_curvature_ode: past the pole of the trajectory");
  auto f = [](double k) { return 1.0 - k * k; };
  auto rk4 = [&](double k, double dt) {
    const double a = f(k);
    const double b = f(k + 0.5 * dt * a);
    const double c = f(k + 0.5 * dt * b);
    const double d = f(k + dt * c);
    return k + dt * (a + 2.0 * b + 2.0 * c + d) / 6.0;
  };
  double k = k0, s = 0.0, dt = std::min(0.01, t);
  while (s < t) {
    dt = std::min(dt, t - s);
    if (dt < opt.min_step && t - s > opt.min_step) {
      throw ConvergenceError("evolve_curvature_ode: step size underflow near a pole");
    }
    const double full = rk4(k, dt);
    const double half = rk4(rk4(k, 0.5 * dt), 0.5 * dt);
    const double err = std::abs(half - full) / 15.0;
    const double allowed = opt.tol * std::max(dt, 1e-300) * std::max(1.0, std::abs(half));
    if (err <= allowed || dt <= opt.min_step) {
      k = half + (half - full) / 15.0;
      s += dt;
      const double grow = err > 0.0 ? 0.9 * std::pow(allowed / err, 0.2) : 4.0;
      dt *= std::clamp(grow, 0.2, 4.0);
    } else {
      dt *= std::clamp(0.9 * std::pow(allowed / err, 0.25), 0.1, 0.9);
    }
  }
  return k;
}

OffsetResult offset_curve_detailed(const DiscreteCurve& curve, double t) {
  if (!(t >= 0.0)) throw DomainError("offset_curve: t must be non-negative");
  const std::size_t n = curve.size();
  OffsetResult out;
  out.image_theta.resize(n);
  out.image_rho.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const auto q = to_polar(exp_map(curve.point(k), outward_normal_angle(curve, k), t));
    out.image_rho[k] = q.rho;
    out.image_theta[k] = q.theta;
  }
  // The moved nodes must still wind once around 0 in order.
  std::vector<double> unwrapped(n);
  unwrapped[0] = out.image_theta[0];
  double total = 0.0;
  for (std::size_t k = 1; k <= n; ++k) {
    const double step = std::remainder(out.image_theta[k % n] - out.image_theta[k - 1], kTwoPi);
    if (!(step > 0.0)) throw GeometryError("offset_curve: nodes no longer form a radial graph");
    total += step;
    if (k < n) unwrapped[k] = unwrapped[k - 1] + step;
  }
  if (std::abs(total - kTwoPi) > 1e-9) throw GeometryError("offset_curve: curve lost star-shapedness");

  // Rotate the node list so the abscissae start at the smallest angle.
  const auto first = static_cast<std::size_t>(
      std::min_element(out.image_theta.begin(), out.image_theta.end()) - out.image_theta.begin());
  std::vector<double> xs(n), ys(n);
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t k = (first + j) % n;
    xs[j] = unwrapped[k] - unwrapped[first] + out.image_theta[first];
    if (k < first) xs[j] += kTwoPi;
    ys[j] = out.image_rho[k];
  }
  const PeriodicCubicSpline s(xs, ys, kTwoPi);
  out.curve = DiscreteCurve::sample([&](double th) { return s(th); }, n);
  return out;
}

DiscreteCurve offset_curve(const DiscreteCurve& curve, double t) {
  return offset_curve_detailed(curve, t).curve;
}

double curvature_at(const DiscreteCurve& curve, double theta) {
  const auto k = curvature_samples(curve);
  return PeriodicCubicSpline::uniform(k, kTwoPi)(theta);
}

}  // namespace cmc
