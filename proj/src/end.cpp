#include "cmc/end.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cmc/error.hpp"
#include "cmc/rotational.hpp"

namespace cmc {

namespace {

// sup |u_a - u_b| over the nodes of a with rho <= R; b is sampled along rays.
double sup_difference(const GraphSolution& a, const GraphSolution& b, double R) {
  const auto& G = a.grid;
  if (G.n_theta() != b.grid.n_theta()) throw DomainError("sup_difference: theta grids differ");
  double d = 0.0;
  for (std::size_t i = 0; i <= G.n_s(); ++i) {
    for (std::size_t j = 0; j < G.n_theta(); ++j) {
      const double r = G.rho(i, j);
      if (r > R) continue;
      d = std::max(d, std::abs(a.u[G.index(i, j)] - sample_ray(b.grid, b.u, j, r)));
    }
  }
  return d;
}

}  // namespace

EndReport solve_end(const DiscreteCurve& curve, double h, const std::vector<double>& schedule,
                    const EndOptions& opt) {
  if (schedule.size() < 2) throw DomainError("solve_end: need at least two radii");
  for (std::size_t m = 1; m < schedule.size(); ++m) {
    if (!(schedule[m] > schedule[m - 1])) throw DomainError("solve_end: schedule must be strictly increasing");
  }
  if (!(schedule.front() > curve.max_g())) throw DomainError("solve_end: first radius must exceed max g");

  EndReport rep;
  rep.h = h;
  const auto adm = check_r_admissible(curve, h, opt.admissibility);
  rep.alpha = adm.alpha;
  rep.beta = adm.beta;
  const auto pa = make_profile(h, adm.alpha);
  const auto pb = make_profile(h, adm.beta);
  rep.k_alpha = pa.asymptotics().k_asym;
  rep.k_beta = pb.asymptotics().k_asym;
  const double ch = slope_ch(h);
  rep.epsilon_bound = (rep.k_alpha - rep.k_beta) / ch;
  rep.epsilon = opt.eps_fraction * rep.epsilon_bound;
  rep.compare_radius = schedule.front() - opt.compare_margin;

  GraphSolution prev;
  for (std::size_t m = 0; m < schedule.size(); ++m) {
    const double rn = schedule[m];
    auto sol = solve_dirichlet(make_problem(curve, h, rn, adm), opt.solver);
    EndStage st;
    st.rho = rn;
    st.residual = sol.residual_norm;
    st.newton = sol.total_newton;
    st.max_u = *std::max_element(sol.u.begin(), sol.u.end());

    // Lower cone f = c rho + k on A(rho_n - eps, rho_n).
    const double eps = rep.epsilon;
    if (eps > 0.0 && rn - eps >= std::max(pb.rho0, curve.max_g())) {
      st.t_n = height(pa, rn);
      st.t_eps = height(pb, rn - eps);
      st.c = (st.t_n - st.t_eps) / eps;
      st.k = st.t_n - st.c * rn;
      st.cone_curvature = st.c / std::sqrt(1.0 + st.c * st.c);
      st.cone_margin = std::numeric_limits<double>::infinity();
      const auto& G = sol.grid;
      for (std::size_t i = 0; i <= G.n_s(); ++i) {
        for (std::size_t j = 0; j < G.n_theta(); ++j) {
          const double r = G.rho(i, j);
          if (r < rn - eps) continue;
          st.cone_margin = std::min(st.cone_margin, sol.u[G.index(i, j)] - (st.c * r + st.k));
        }
      }
      st.cone_ok = st.cone_curvature >= 2.0 * h && st.cone_margin >= -opt.slack;
    }
    rep.stages.push_back(st);

    if (m > 0) rep.differences.push_back(sup_difference(prev, sol, rep.compare_radius));
    prev = std::move(sol);
  }
  rep.last = std::move(prev);

  rep.cauchy = true;
  for (std::size_t m = 1; m < rep.differences.size(); ++m) {
    if (!(rep.differences[m] < rep.differences[m - 1])) rep.cauchy = false;
  }

  const auto& L = rep.last;
  if (opt.slope_hi <= schedule.back() && opt.slope_lo >= L.grid.inner().max_g() && opt.slope_lo < opt.slope_hi) {
    double s = 0.0;
    for (std::size_t j = 0; j < L.grid.n_theta(); ++j) {
      s += sample_ray(L.grid, L.u, j, opt.slope_hi) - sample_ray(L.grid, L.u, j, opt.slope_lo);
    }
    rep.slope = s / (static_cast<double>(L.grid.n_theta()) * (opt.slope_hi - opt.slope_lo));
    rep.slope_error = rep.slope / ch - 1.0;
    rep.slope_ok = std::abs(rep.slope_error) <= opt.slope_tolerance;
  }

  double cmin = std::numeric_limits<double>::infinity(), cmax = -cmin;
  rep.cones_ok = true;
  for (const auto& st : rep.stages) {
    cmin = std::min(cmin, st.c);
    cmax = std::max(cmax, st.c);
    rep.cones_ok = rep.cones_ok && st.cone_ok;
  }
  rep.c_spread = cmax > 0.0 ? (cmax - cmin) / cmax : std::numeric_limits<double>::infinity();
  rep.cones_ok = rep.cones_ok && rep.c_spread <= opt.spread_tolerance;

  rep.growth_ok = true;
  for (std::size_t m = 1; m < rep.stages.size(); ++m) {
    const double g = (rep.stages[m].max_u - rep.stages[m - 1].max_u) / (rep.stages[m].rho - rep.stages[m - 1].rho);
    rep.growth.push_back(g);
    if (!(std::abs(g / ch - 1.0) <= opt.slope_tolerance)) rep.growth_ok = false;
  }
  rep.pass = rep.cauchy && rep.slope_ok && rep.cones_ok && rep.growth_ok;
  return rep;
}

}  // namespace cmc
