#include "cmc/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/SparseLU>

#include "cmc/error.hpp"
#include "cmc/rotational.hpp"

namespace cmc {

namespace {

using Lu = Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>>;

struct NewtonResult {
  bool converged = false;
  int iterations = 0;
  double residual = 0.0;
  std::vector<double> steps;
};

double merit(const AnnulusGrid& G, const std::vector<double>& u, double h, double* maxnorm) {
  const auto q = discrete_Q(G, u);
  double sum = 0.0, m = 0.0;
  for (std::size_t i = 1; i < G.n_s(); ++i) {
    for (std::size_t j = 0; j < G.n_theta(); ++j) {
      const double r = q[G.index(i, j)] - 2.0 * h;
      sum += r * r;
      m = std::max(m, std::abs(r));
    }
  }
  if (!std::isfinite(sum)) m = sum = std::numeric_limits<double>::infinity();
  if (maxnorm) *maxnorm = m;
  return sum;
}

// Damped Newton on the interior nodes; boundary values of u are left alone.
NewtonResult newton(const AnnulusGrid& G, std::vector<double>& u, double h, const SolverOptions& opt,
                    Lu& lu, bool& analyzed) {
  NewtonResult out;
  const std::size_t nt = G.n_theta();
  double res = 0.0;
  double m0 = merit(G, u, h, &res);
  for (int it = 0; it < opt.max_newton; ++it) {
    out.residual = res;
    if (res <= opt.tol && it >= opt.min_newton) {
      out.converged = true;
      return out;
    }
    const auto L = linearize(G, u, h);
    if (!analyzed) {
      lu.analyzePattern(L.jacobian);
      analyzed = true;
    }
    lu.factorize(L.jacobian);
    if (lu.info() != Eigen::Success) return out;
    const Eigen::VectorXd d = lu.solve(-L.residual);
    if (lu.info() != Eigen::Success || !d.allFinite()) return out;

    // Backtracking on the squared residual of Q - 2h.
    double lambda = 1.0;
    bool moved = false;
    std::vector<double> trial(u.size());
    while (lambda >= opt.damping_floor) {
      trial = u;
      for (std::size_t k = 0; k < G.unknowns(); ++k) {
        trial[G.index(k / nt + 1, k % nt)] += lambda * d[static_cast<Eigen::Index>(k)];
      }
      double r = 0.0;
      const double m = merit(G, trial, h, &r);
      if (m < (1.0 - 1e-4 * lambda) * m0) {
        u.swap(trial);
        m0 = m;
        res = r;
        moved = true;
        break;
      }
      lambda *= 0.5;
    }
    ++out.iterations;
    if (!moved) {
      // Already at round-off: no further decrease is possible.
      out.converged = res <= opt.tol;
      return out;
    }
    out.steps.push_back(lambda * d.cwiseAbs().maxCoeff());
  }
  out.residual = res;
  out.converged = res <= opt.tol;
  return out;
}

DiscreteCurve blend(const std::vector<double>& g, double r0, double sigma) {
  std::vector<double> v(g.size());
  for (std::size_t j = 0; j < g.size(); ++j) v[j] = sigma == 0.0 ? g[j] : sigma * r0 + (1.0 - sigma) * g[j];
  return DiscreteCurve(std::move(v));
}

void impose(const AnnulusGrid& G, std::vector<double>& u, const std::vector<double>& in,
            const std::vector<double>& out) {
  for (std::size_t j = 0; j < G.n_theta(); ++j) {
    u[G.index(0, j)] = in[j];
    u[G.index(G.n_s(), j)] = out[j];
  }
}

}  // namespace

AnnulusProblem make_problem(const DiscreteCurve& inner, double h, double outer_radius,
                            const AdmissibilityReport& report) {
  AnnulusProblem p;
  p.h = h;
  p.inner = inner;
  p.outer_radius = outer_radius;
  p.alpha = report.alpha;
  p.beta = report.beta;
  return p;
}

std::vector<double> rotational_field(const AnnulusGrid& G, double h, double alpha) {
  const auto p = make_profile(h, alpha);
  const RotationalTable t(p, G.rho2() + 1.0);
  std::vector<double> u(G.nodes());
  for (std::size_t k = 0; k < u.size(); ++k) {
    const double r = G.rho(k / G.n_theta(), k % G.n_theta());
    u[k] = r <= p.rho0 ? 0.0 : t(r);
  }
  return u;
}

double sample_ray(const AnnulusGrid& G, const std::vector<double>& u, std::size_t j, double rho) {
  const std::size_t ns = G.n_s();
  if (!(rho >= G.rho(0, j) && rho <= G.rho(ns, j))) throw DomainError("sample_ray: radius outside the ray");
  std::size_t lo = 0, hi = ns;
  while (hi - lo > 1) {
    const std::size_t mid = (lo + hi) / 2;
    (G.rho(mid, j) <= rho ? lo : hi) = mid;
  }
  const std::size_t a = std::min(lo == 0 ? 0 : lo - 1, ns - 3);
  double v = 0.0;
  for (std::size_t m = a; m < a + 4; ++m) {
    double w = 1.0;
    for (std::size_t n = a; n < a + 4; ++n) {
      if (n != m) w *= (rho - G.rho(n, j)) / (G.rho(m, j) - G.rho(n, j));
    }
    v += w * u[G.index(m, j)];
  }
  return v;
}

GraphSolution solve_dirichlet(const AnnulusProblem& P, const SolverOptions& opt) {
  const double h = P.h;
  if (!(h > 0.0 && h < 0.5)) throw DomainError("solve_dirichlet: h must lie in (0, 1/2)");
  if (!(P.alpha > 0.0 && P.alpha < 2.0 * h)) throw DomainError("solve_dirichlet: alpha must lie in (0, 2h)");
  if (!(P.inner.max_g() < P.outer_radius)) throw DomainError("solve_dirichlet: inner curve must lie inside rho2");
  if (!(opt.tol > 0.0)) throw DomainError("solve_dirichlet: tol must be positive");
  const double r0 = rho_of_alpha(h, P.alpha);
  // Equality is the circular oracle case: the inner curve is the base circle.
  if (!(r0 <= P.inner.min_g() * (1.0 + 1e-12))) throw GeometryError("solve_dirichlet: base circle of H_alpha is not inside the curve");

  const std::size_t nt = opt.n_theta;
  const double dt = kTwoPi / static_cast<double>(nt);
  std::vector<double> g(nt), in(nt), out(nt);
  const auto spline = P.inner.interpolant();
  const double top = height(make_profile(h, P.alpha), P.outer_radius);
  for (std::size_t j = 0; j < nt; ++j) {
    const double th = dt * static_cast<double>(j);
    g[j] = nt == P.inner.size() ? P.inner.g(j) : spline(th);
    in[j] = P.inner_data ? P.inner_data(th) : 0.0;
    out[j] = P.outer_data ? P.outer_data(th) : top;
    if (!std::isfinite(in[j]) || !std::isfinite(out[j])) throw DomainError("solve_dirichlet: boundary data not finite");
  }

  GraphSolution sol;
  Lu lu;
  bool analyzed = false;
  auto fail = [&](double sigma) {
    std::ostringstream s;
    s << "solve_dirichlet: continuation failed; last accepted sigma = " << sigma;
    throw ConvergenceError(s.str());
  };

  // sigma = 1: circular annulus with H_alpha as the exact solution. It is
  // only the starting field; the discrete problem there degenerates when the
  // base circle is tiny (vertical tangent at rho0), so no Newton solve.
  AnnulusGrid G(blend(g, r0, 1.0), P.outer_radius, opt.n_s, nt);
  std::vector<double> u = rotational_field(G, h, P.alpha);
  impose(G, u, in, out);
  double sigma = 1.0;
  sol.path.push_back({1.0, 0, residual_norm(G, u, h), true});

  double step = opt.continuation ? opt.sigma_step : 1.0;
  NewtonResult last;
  while (sigma > 0.0) {
    const double next = std::max(0.0, sigma - step);
    AnnulusGrid Gn(blend(g, r0, next), P.outer_radius, opt.n_s, nt);
    std::vector<double> v = u;  // same (i, j): u composed with the chart map
    impose(Gn, v, in, out);
    auto r = newton(Gn, v, h, opt, lu, analyzed);
    sol.path.push_back({next, r.iterations, r.residual, r.converged});
    sol.total_newton += r.iterations;
    if (r.converged) {
      sigma = next;
      u.swap(v);
      G = std::move(Gn);
      last = std::move(r);
      step = std::min(1.5 * step, opt.sigma_step_max);
    } else {
      if (!opt.continuation) fail(1.0);
      step *= 0.5;
      if (step < opt.sigma_step_min) fail(sigma);
    }
  }

  sol.residual_norm = residual_norm(G, u, h);
  sol.newton_steps = last.steps;
  const auto& st = last.steps;
  if (st.size() >= 2 && st[st.size() - 2] > 0.0) {
    sol.newton_constant = st.back() / (st[st.size() - 2] * st[st.size() - 2]);
  }
  sol.grad = G.gradient_norm(u);
  for (std::size_t i = 1; i < G.n_s(); ++i) {
    for (std::size_t j = 0; j < nt; ++j) sol.grad_max = std::max(sol.grad_max, sol.grad[G.index(i, j)]);
  }
  sol.inner_normal = G.inner_normal_derivative(u);
  sol.outer_normal = G.outer_normal_derivative(u);
  for (double v : sol.inner_normal) sol.boundary_slope = std::max(sol.boundary_slope, std::abs(v));
  for (double v : sol.outer_normal) sol.boundary_slope = std::max(sol.boundary_slope, std::abs(v));
  sol.grad_ceiling = opt.grad_ceiling_factor * sol.boundary_slope;
  sol.grad_ok = sol.grad_max <= sol.grad_ceiling;
  sol.accepted = sol.residual_norm <= opt.tol && sol.grad_ok;
  sol.grid = std::move(G);
  sol.u = std::move(u);
  return sol;
}

std::vector<DeformationMember> deformation_family(const DiscreteCurve& curve, double h, double alpha,
                                                  std::size_t n_steps) {
  if (n_steps == 0) throw DomainError("deformation_family: need at least one step");
  const double r0 = rho_of_alpha(h, alpha);
  std::vector<DeformationMember> fam;
  for (std::size_t k = 0; k <= n_steps; ++k) {
    DeformationMember m;
    m.sigma = 1.0 - static_cast<double>(k) / static_cast<double>(n_steps);
    m.curve = blend(curve.samples(), r0, m.sigma);
    m.horosphere_convex = horosphere_convex(m.curve).convex;
    try {
      m.report = check_r_admissible(m.curve, h);
      m.pass = m.report.verdict && m.horosphere_convex;
      if (!m.report.verdict) m.warning = m.report.reasons.empty() ? "not admissible" : m.report.reasons.front();
      else if (!m.horosphere_convex) m.warning = "not horosphere convex";
    } catch (const std::exception& e) {
      m.warning = e.what();
    }
    fam.push_back(std::move(m));
  }
  return fam;
}

}  // namespace cmc
