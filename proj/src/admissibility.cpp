#include "cmc/admissibility.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/tools/minima.hpp>

#include "cmc/error.hpp"
#include "cmc/kernels.hpp"

namespace cmc {

CurveSamples::CurveSamples(const DiscreteCurve& curve, std::size_t factor) {
  const std::size_t m = curve.size() * std::max<std::size_t>(factor, 1);
  const auto s = curve.interpolant();
  x.resize(m);
  y.resize(m);
  w.resize(m);
  for (std::size_t j = 0; j < m; ++j) {
    const double th = kTwoPi * static_cast<double>(j) / static_cast<double>(m);
    const auto p = from_polar({s(th), th});
    x[j] = p.x();
    y[j] = p.y();
    w[j] = 1.0 / (1.0 - p.norm2());
  }
  spline_ = s;
}

double CurveSamples::distance(const ModelPoint& p) const {
  const auto best = kernels::weighted_min(p.x(), p.y(), x.data(), y.data(), w.data(), x.size());
  // sinh^2(d/2) = |p - q|^2 / ((1 - |p|^2)(1 - |q|^2)).
  const double coarse = 2.0 * std::asinh(std::sqrt(best.value / (1.0 - p.norm2())));
  // Polish on the interpolant between the neighbouring samples.
  const double dth = kTwoPi / static_cast<double>(x.size());
  const double th0 = dth * static_cast<double>(best.index);
  const PolarPoint pp = to_polar(p);
  auto dist = [&](double th) { return polar_distance(pp, {spline_(th), th}); };
  const auto [th, d] = boost::math::tools::brent_find_minima(dist, th0 - dth, th0 + dth, 40);
  (void)th;
  return std::min(coarse, d);
}

double interior_sphere_radius(const DiscreteCurve& curve, std::size_t certify_factor) {
  const auto k = curvature_samples(curve);
  const double kmax = *std::max_element(k.begin(), k.end());
  const CurveSamples dense(curve, certify_factor);
  const std::size_t n = curve.size();
  const auto g = curve.interpolant();

  // Inward tangent disk of radius r at node i fits iff its center keeps
  // distance >= r from the whole curve.
  auto fits = [&](double r) {
    for (std::size_t i = 0; i < n; ++i) {
      const double inward = outward_normal_angle(curve, i) + 0.5 * kTwoPi;
      const auto c = exp_map(curve.point(i), inward, r);
      const auto cp = to_polar(c);
      if (cp.rho >= g(cp.theta)) return false;
      if (dense.distance(c) < r * (1.0 - 1e-9) - 1e-12) return false;
    }
    return true;
  };

  double r = kmax > 1.0 ? std::atanh(1.0 / kmax) : curve.max_g();
  r = std::min(r, curve.min_g());
  if (fits(r)) return r;
  double lo = 0.0, hi = r;
  for (int it = 0; it < 50 && hi - lo > 1e-10 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (fits(mid) ? lo : hi) = mid;
  }
  if (!(lo > 0.0)) throw GeometryError("interior_sphere_radius: certification failed");
  return lo;
}

ConvexityResult horosphere_convex(const DiscreteCurve& curve) {
  const auto k = curvature_samples(curve);
  const double m = *std::min_element(k.begin(), k.end());
  return {m > 1.0, m};
}

Parameters choose_parameters(const DiscreteCurve& curve, double h, const AdmissibilityOptions& opt) {
  Parameters p;
  p.r = opt.radius ? *opt.radius : interior_sphere_radius(curve, opt.certify_factor);
  if (!(p.r > 0.0)) throw GeometryError("choose_parameters: interior radius must be positive");
  const auto bb = beta_bar(h, opt.beta_bar);
  p.beta_bar = bb.value;
  p.beta_bar_capped = bb.capped;
  p.r_effective = p.r;
  p.beta = alpha_for_radius(h, p.r, Branch::upper);
  if (p.beta > bb.value) {
    // rho^h is increasing on the upper branch, so the largest admissible
    // radius is rho^h(beta_bar) itself.
    p.r_reduced = true;
    p.beta = bb.value;
    p.r_effective = rho_of_alpha(h, bb.value);
  }
  if (opt.alpha) {
    p.alpha = *opt.alpha;
  } else {
    const double target = opt.alpha_fraction * curve.min_g();
    p.alpha = target < rho_h_lower_limit(h) ? alpha_for_radius(h, target, Branch::lower)
                                            : 2.0 * h * (1.0 - 1e-3);
  }
  if (!(p.alpha > 0.0 && p.alpha < 2.0 * h)) throw DomainError("choose_parameters: alpha must lie in (0, 2h)");
  if (!(rho_of_alpha(h, p.alpha) < curve.min_g())) {
    throw GeometryError("choose_parameters: base circle of H_alpha is not inside the curve");
  }
  return p;
}

double xi(double h, double alpha, double beta) {
  if (!(alpha > 0.0 && alpha < 2.0 * h && beta > 2.0 * h)) throw DomainError("xi: need alpha < 2h < beta");
  return std::min(0.5 * d_beta(make_profile(h, beta)), d_infinity(h, alpha, beta));
}

AdmissibilityReport check_r_admissible(const DiscreteCurve& curve, double h,
                                       const AdmissibilityOptions& opt) {
  AdmissibilityReport rep;
  rep.h = h;
  const auto par = choose_parameters(curve, h, opt);
  rep.r = par.r;
  rep.r_reduced = par.r_reduced;
  rep.r_effective = par.r_effective;
  rep.alpha = par.alpha;
  rep.beta = par.beta;
  rep.beta_bar = par.beta_bar;
  rep.beta_bar_capped = par.beta_bar_capped;
  rep.half_d_beta = 0.5 * d_beta(make_profile(h, par.beta));
  rep.d_infinity = d_infinity(h, par.alpha, par.beta);
  rep.xi = std::min(rep.half_d_beta, rep.d_infinity);
  rep.annulus_inner = par.r_effective;
  rep.annulus_outer = par.r_effective + rep.xi;

  const auto k = curvature_samples(curve);
  rep.min_k = *std::min_element(k.begin(), k.end());
  rep.max_k = *std::max_element(k.begin(), k.end());
  rep.horosphere_convex = rep.min_k > 1.0;

  const double certified = opt.radius ? interior_sphere_radius(curve, opt.certify_factor) : par.r;
  rep.margins.interior_sphere = certified - par.r_effective;
  rep.interior_sphere = rep.margins.interior_sphere >= -1e-12;
  rep.margins.inner = curve.min_g() - rep.annulus_inner;
  rep.margins.outer = rep.annulus_outer - curve.max_g();
  rep.margins.base_circle = curve.min_g() - rho_of_alpha(h, par.alpha);
  // Boundary contact (a circle of radius exactly r) counts as contained.
  rep.contained = rep.margins.inner >= -1e-12 && rep.margins.outer >= -1e-12;

  if (!rep.contained) rep.reasons.emplace_back("curve leaves the annulus A_gamma");
  if (!rep.interior_sphere) rep.reasons.emplace_back("interior sphere condition fails at radius r");
  if (!(rep.xi > 0.0)) rep.reasons.emplace_back("xi is not positive");
  rep.verdict = rep.contained && rep.interior_sphere && rep.xi > 0.0;
  return rep;
}

BarrierReport verify_barrier_tangency(const DiscreteCurve& curve, double h,
                                      const AdmissibilityReport& report, std::size_t z_index,
                                      const BarrierTangencyOptions& opt) {
  if (z_index >= curve.size()) throw DomainError("verify_barrier_tangency: node index out of range");
  const double r = report.r_effective;
  if (discrete_curvature(curve, z_index) > 1.0 / std::tanh(r) * (1.0 + 1e-9)) {
    throw GeometryError("verify_barrier_tangency: curve bends tighter than the base circle at z");
  }
  const auto pa = make_profile(h, report.alpha);
  const auto pb = make_profile(h, report.beta);
  const double ch = slope_ch(h);

  BarrierReport out;
  out.z_index = z_index;
  const double inward = outward_normal_angle(curve, z_index) + 0.5 * kTwoPi;
  const auto cz = exp_map(curve.point(z_index), inward, r);
  out.center = to_polar(cz);
  out.center_distance = out.center.rho;

  // Conclusion 1: translated H_beta stays below H_alpha outside the curve.
  const RotationalTable ta(pa, opt.rho_max + 1.0);
  const RotationalTable tb(pb, opt.rho_max + out.center_distance + 1.0);
  const auto g = curve.interpolant();
  double margin = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < opt.n_theta; ++j) {
    const double th = kTwoPi * static_cast<double>(j) / static_cast<double>(opt.n_theta);
    const double r_in = g(th);
    for (std::size_t i = 0; i <= opt.n_rho; ++i) {
      const double rho = r_in + (opt.rho_max - r_in) * static_cast<double>(i) / static_cast<double>(opt.n_rho);
      const double dz = polar_distance({rho, th}, out.center);
      if (dz < pb.rho0) continue;
      margin = std::min(margin, ta(rho) - tb(dz));
    }
  }
  out.grid_margin = margin;
  out.asymptotic_margin = pa.asymptotics().k_asym - pb.asymptotics().k_asym - ch * out.center_distance;
  out.below = out.grid_margin > 0.0 && out.asymptotic_margin > 0.0;

  // Conclusion 2: every node lies in the disk where the translate is <= 0.
  double far = 0.0;
  for (std::size_t k = 0; k < curve.size(); ++k) far = std::max(far, hyp_distance(cz, curve.point(k)));
  out.inside_margin = min_circle_radius(pb) - far;
  out.nonpositive_on_curve = out.inside_margin >= 0.0;
  out.pass = out.below && out.nonpositive_on_curve;
  return out;
}

}  // namespace cmc
