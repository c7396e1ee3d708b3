#include "cmc/barriers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cmc/annulus.hpp"
#include "cmc/parallel.hpp"
#include "cmc/rotational.hpp"

namespace cmc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

SandwichCheck sandwich(const GraphSolution& S, const RotationalTable& ta, const RotationalTable& tb,
                       double slack) {
  SandwichCheck out{kInf, kInf, false};
  const auto& G = S.grid;
  const double ra = ta.profile().rho0, rb = tb.profile().rho0;
  bool defined = true;
  for (std::size_t k = 0; k < S.u.size(); ++k) {
    const double r = G.rho(k / G.n_theta(), k % G.n_theta());
    if (r < ra || r < rb) {
      defined = false;
      continue;
    }
    out.upper_margin = std::min(out.upper_margin, ta(r) - S.u[k]);
    out.lower_margin = std::min(out.lower_margin, S.u[k] - tb(r));
  }
  out.pass = defined && out.upper_margin >= -slack && out.lower_margin >= -slack;
  return out;
}

WPlusCheck w_plus(const AnnulusProblem& P, const GraphSolution& S, const RotationalTable& ta,
                  const BarrierOptions& opt) {
  WPlusCheck w;
  const auto& curve = P.inner;
  const auto k = curvature_samples(curve);
  w.c = *std::max_element(k.begin(), k.end());

  // Points at distance eps along the outward normals.
  auto M_of = [&](double eps) {
    double m = 0.0;
    for (std::size_t i = 0; i < curve.size(); ++i) {
      const auto q = exp_map(curve.point(i), outward_normal_angle(curve, i), eps);
      m = std::max(m, ta(to_polar(q).rho));
    }
    return m;
  };
  auto worst = [&](double eps, double A) {
    double f = -kInf;
    for (std::size_t m = 0; m <= opt.x_scan; ++m) {
      const double x = eps * static_cast<double>(m) / static_cast<double>(opt.x_scan);
      const double p1 = psi_prime(eps, A, x);
      f = std::max(f, w.c * p1 * (1.0 + p1 * p1) + psi_second(eps, A, x));
    }
    return f;
  };

  // Largest eps on the scan with the operator strictly negative on [0, eps];
  // psi'(0) ~ 2M / eps so this is also (nearly) the sharpest slope bound.
  const double eps_max = std::min(1.0, 0.5 * (P.outer_radius - curve.max_g()));
  for (std::size_t m = opt.eps_scan; m >= 1; --m) {
    const double eps = eps_max * static_cast<double>(m) / static_cast<double>(opt.eps_scan);
    const double M = M_of(eps);
    const double A = M / (std::expm1(eps) - eps);
    const double f = worst(eps, A);
    if (f < 0.0) {
      w.feasible = true;
      w.epsilon = eps;
      w.M = M;
      w.A = A;
      w.max_operator = f;
      break;
    }
  }
  if (!w.feasible) return w;
  w.psi_at_eps = psi(w.epsilon, w.A, w.epsilon);
  w.slope_bound = psi_prime(w.epsilon, w.A, 0.0);

  const auto& G = S.grid;
  const CurveSamples dense(curve, opt.distance_factor);
  const std::size_t nt = G.n_theta();
  std::vector<double> row_margin(G.n_s() + 1, kInf);
  std::vector<std::size_t> row_count(G.n_s() + 1, 0);
  parallel_rows(G.n_s() + 1, [&](std::size_t i) {
    for (std::size_t j = 0; j < nt; ++j) {
      if (G.rho(i, j) > G.inner_g(j) + w.epsilon) continue;
      const double d = i == 0 ? 0.0 : dense.distance(from_polar(G.polar(i, j)));
      if (d > w.epsilon) continue;
      row_margin[i] = std::min(row_margin[i], psi(w.epsilon, w.A, d) - S.u[G.index(i, j)]);
      ++row_count[i];
    }
  });
  w.margin = *std::min_element(row_margin.begin(), row_margin.end());
  for (auto c : row_count) w.nodes_checked += c;
  w.max_inner_normal = *std::max_element(S.inner_normal.begin(), S.inner_normal.end());
  w.pass = w.margin >= -opt.slack && w.max_inner_normal <= w.slope_bound;
  return w;
}

TangencyCheck tangency(const AnnulusProblem& P, const GraphSolution& S, const AdmissibilityReport& rep,
                       const RotationalTable& tb, const BarrierOptions& opt) {
  TangencyCheck t;
  const auto& curve = P.inner;
  const std::size_t n = curve.size();
  t.nodes = n;
  std::vector<BarrierReport> br(n);
  std::vector<char> ok(n, 0);
  std::vector<double> node_margin(n, kInf);
  const auto& G = S.grid;
  const double rb = tb.profile().rho0;
  parallel_rows(n, [&](std::size_t z) {
    try {
      br[z] = verify_barrier_tangency(curve, P.h, rep, z, opt.tangency);
      ok[z] = 1;
    } catch (const std::exception&) {
      return;
    }
    for (std::size_t k = 0; k < S.u.size(); ++k) {
      const double dz = polar_distance(G.polar(k / G.n_theta(), k % G.n_theta()), br[z].center);
      if (dz < rb) continue;
      node_margin[z] = std::min(node_margin[z], S.u[k] - tb(dz));
    }
  });
  t.grid_margin = t.asymptotic_margin = t.inside_margin = t.solution_margin = kInf;
  for (std::size_t z = 0; z < n; ++z) {
    if (!ok[z]) continue;
    if (br[z].pass) ++t.passed;
    t.grid_margin = std::min(t.grid_margin, br[z].grid_margin);
    t.asymptotic_margin = std::min(t.asymptotic_margin, br[z].asymptotic_margin);
    t.inside_margin = std::min(t.inside_margin, br[z].inside_margin);
    t.solution_margin = std::min(t.solution_margin, node_margin[z]);
  }
  t.min_inner_normal = *std::min_element(S.inner_normal.begin(), S.inner_normal.end());
  t.pass = t.passed == n && t.solution_margin >= -opt.slack;
  return t;
}

OuterCheck outer(const AnnulusProblem& P, const GraphSolution& S, const RotationalTable& ta,
                 const RotationalTable& tb, const BarrierOptions& opt) {
  OuterCheck o;
  const double rho2 = P.outer_radius, h = P.h;
  o.top = ta(rho2);
  o.slice_margin = o.top - *std::max_element(S.u.begin(), S.u.end());

  // Widest cone with slope >= target: c(rho0) grows without bound as rho0 -> rho2.
  const double target = slope_ch(h) * (1.0 + opt.cone_excess);
  auto slope = [&](double r0) { return (o.top - tb(r0)) / (rho2 - r0); };
  double lo = std::max(P.inner.max_g(), tb.profile().rho0);
  if (slope(lo) >= target) {
    o.rho0 = lo;
  } else {
    double hi = rho2;
    for (int it = 0; it < 200 && hi - lo > 1e-13 * rho2; ++it) {
      const double mid = 0.5 * (lo + hi);
      (slope(mid) < target ? lo : hi) = mid;
    }
    o.rho0 = hi;
  }
  o.c = slope(o.rho0);
  o.k = o.top - o.c * rho2;
  o.equation_error = std::max(std::abs(o.c * o.rho0 + o.k - tb(o.rho0)), std::abs(o.c * rho2 + o.k - o.top));

  const auto& G = S.grid;
  std::vector<double> f(G.nodes());
  for (std::size_t k = 0; k < f.size(); ++k) f[k] = o.c * G.rho(k / G.n_theta(), k % G.n_theta()) + o.k;
  const auto q = discrete_Q(G, f);
  o.mean_curvature_excess = o.cone_margin = kInf;
  for (std::size_t i = 0; i <= G.n_s(); ++i) {
    for (std::size_t j = 0; j < G.n_theta(); ++j) {
      const std::size_t k = G.index(i, j);
      if (G.rho(i, j) < o.rho0) continue;
      o.cone_margin = std::min(o.cone_margin, S.u[k] - f[k]);
      if (i > 0 && i < G.n_s()) o.mean_curvature_excess = std::min(o.mean_curvature_excess, q[k] - 2.0 * h);
    }
  }
  o.outer_slope_min = o.outer_slope_max = -S.outer_normal.front();
  for (double v : S.outer_normal) {
    o.outer_slope_min = std::min(o.outer_slope_min, -v);
    o.outer_slope_max = std::max(o.outer_slope_max, -v);
  }
  o.pass = o.slice_margin >= -opt.slack && o.c >= target && o.c / std::sqrt(1.0 + o.c * o.c) > 2.0 * h &&
           o.mean_curvature_excess > 0.0 && o.cone_margin >= -opt.slack && o.outer_slope_min >= -opt.slack &&
           o.outer_slope_max <= o.c;
  return o;
}

}  // namespace

double psi(double eps, double A, double x) { return A * (std::exp(eps) - x - std::exp(eps - x)); }
double psi_prime(double eps, double A, double x) { return A * std::expm1(eps - x); }
double psi_second(double eps, double A, double x) { return -A * std::exp(eps - x); }

BarrierSuite barrier_suite(const AnnulusProblem& P, const GraphSolution& S, const AdmissibilityReport& rep,
                           const BarrierOptions& opt) {
  BarrierSuite b;
  const double rmax = P.outer_radius + 1.0;
  const RotationalTable ta(make_profile(P.h, P.alpha), rmax);
  const RotationalTable tb(make_profile(P.h, P.beta), rmax + opt.tangency.rho_max);

  b.sandwich = sandwich(S, ta, tb, opt.slack);
  b.w_plus = w_plus(P, S, ta, opt);
  b.tangency = tangency(P, S, rep, tb, opt);
  b.outer = outer(P, S, ta, tb, opt);

  if (!b.sandwich.pass) b.failures.emplace_back("sandwich H_beta <= u <= H_alpha violated");
  if (!b.w_plus.feasible) b.failures.emplace_back("w+: no epsilon with a strictly negative operator");
  else if (!b.w_plus.pass) b.failures.emplace_back("w+: u exceeds the upper barrier near the inner curve");
  if (!b.tangency.pass) b.failures.emplace_back("tangent translates of H_beta are not below u");
  if (!b.outer.pass) b.failures.emplace_back("outer slice or cone barrier violated");
  b.pass = b.failures.empty();
  return b;
}

}  // namespace cmc
