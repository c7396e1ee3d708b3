#include "cmc/annulus.hpp"

#include <algorithm>
#include <cmath>

#include "cmc/error.hpp"
#include "cmc/kernels.hpp"
#include "cmc/parallel.hpp"

namespace cmc {

namespace {

// Derivative at x0 of the quadratic through (x0, f0), (x1, f1), (x2, f2).
double one_sided(double x0, double x1, double x2, double f0, double f1, double f2) {
  return f0 * (2.0 * x0 - x1 - x2) / ((x0 - x1) * (x0 - x2)) + f1 * (x0 - x2) / ((x1 - x0) * (x1 - x2)) +
         f2 * (x0 - x1) / ((x2 - x0) * (x2 - x1));
}

void resize(FaceGeometry& f, std::size_t n) {
  f.a.assign(n, 0.0);
  f.b.assign(n, 0.0);
  f.c.assign(n, 0.0);
  f.mu.assign(n, 0.0);
}

void store(FaceGeometry& f, std::size_t k, const ChartMetric& m) {
  f.a[k] = m.a;
  f.b[k] = m.b;
  f.c[k] = m.c;
  f.mu[k] = m.mu;
}

// d u / d s at the s-face (i + 1/2) is sum_m w[m] (u[first + m] - u[first]) / 24.
// Fourth order inside, five-point one-sided at the two boundary faces. Next to
// the inner curve rho_s vanishes linearly in s and the flux divides by it; the
// five-point error there is O(ds^5) for fields smooth in rho.
struct FaceStencil {
  std::size_t first;
  int count;
  double w[5];
};
FaceStencil s_face_stencil(std::size_t i, std::size_t ns) {
  if (i == 0) return {0, 5, {-22, 17, 9, -5, 1}};
  if (i + 1 == ns) return {ns - 4, 5, {-1, 5, -9, -17, 22}};
  return {i - 1, 4, {1, -27, 27, -1, 0}};
}

// Face fluxes and their derivatives with respect to the face gradient.
struct Fluxes {
  std::vector<double> fs, ft;              // s-face f1, theta-face f2
  std::vector<double> fs_p, fs_q, ft_p, ft_q;
};

Fluxes fluxes(const AnnulusGrid& G, const std::vector<double>& u, bool partials) {
  const std::size_t ns = G.n_s(), nt = G.n_theta();
  const double ids = 1.0 / G.ds(), idt = 1.0 / G.dtheta();
  Fluxes F;
  F.fs.assign(G.nodes(), 0.0);
  F.ft.assign(G.nodes(), 0.0);
  if (partials) {
    F.fs_p.assign(G.nodes(), 0.0);
    F.fs_q.assign(G.nodes(), 0.0);
    F.ft_p.assign(G.nodes(), 0.0);
    F.ft_q.assign(G.nodes(), 0.0);
  }
  auto U = [&](std::size_t i, std::size_t j) { return u[G.index(i, j)]; };
  auto jp = [nt](std::size_t j) { return j + 1 == nt ? 0 : j + 1; };
  auto jm = [nt](std::size_t j) { return j == 0 ? nt - 1 : j - 1; };

  // Row r < ns: s-faces (r + 1/2, .); row ns + r: theta-faces (r, .), r >= 1.
  parallel_rows(2 * ns, [&](std::size_t row) {
    const bool sface = row < ns;
    const std::size_t i = sface ? row : row - ns;
    if (!sface && i == 0) return;
    std::vector<double> p(nt), q(nt), f1(nt), f2(nt), w(nt);
    for (std::size_t j = 0; j < nt; ++j) {
      if (sface) {
        const auto st = s_face_stencil(i, ns);
        const double base = U(st.first, j);
        double d = 0.0;
        for (int m = 1; m < st.count; ++m) d += st.w[m] * (U(st.first + m, j) - base);
        p[j] = d / 24.0 * ids;
        q[j] = (U(i, jp(j)) - U(i, jm(j)) + U(i + 1, jp(j)) - U(i + 1, jm(j))) * 0.25 * idt;
      } else {
        p[j] = (U(i + 1, j) - U(i - 1, j) + U(i + 1, jp(j)) - U(i - 1, jp(j))) * 0.25 * ids;
        q[j] = (U(i, jp(j)) - U(i, j)) * idt;
      }
    }
    const FaceGeometry& g = sface ? G.s_faces() : G.theta_faces();
    const std::size_t off = G.index(i, 0);
    kernels::face_flux({p.data(), q.data(), g.a.data() + off, g.b.data() + off, g.c.data() + off,
                        g.mu.data() + off, f1.data(), f2.data(), w.data()},
                       nt);
    for (std::size_t j = 0; j < nt; ++j) {
      const std::size_t k = off + j;
      (sface ? F.fs : F.ft)[k] = sface ? f1[j] : f2[j];
      if (!partials) continue;
      const double a = g.a[k], b = g.b[k], c = g.c[k], mu = g.mu[k], W = w[j];
      const double gp = a * p[j] + b * q[j], gq = b * p[j] + c * q[j];
      const double W3 = W * W * W;
      if (sface) {
        F.fs_p[k] = mu * (a / W - gp * gp / W3);
        F.fs_q[k] = mu * (b / W - gp * gq / W3);
      } else {
        F.ft_p[k] = mu * (b / W - gq * gp / W3);
        F.ft_q[k] = mu * (c / W - gq * gq / W3);
      }
    }
  });
  return F;
}

}  // namespace

ChartPoint chart_point(double g, double dg, double rho2, double s) {
  // t = rho - g = g sinh^2 v, with P(v) = (g/2) sinh 2v + (g + 2c) v linear in s.
  const double c = kChartScale;
  const double L = rho2 - g;
  const double V = std::asinh(std::sqrt(L / g));
  auto P = [&](double v) { return 0.5 * g * std::sinh(2.0 * v) + (g + 2.0 * c) * v; };
  auto Pv = [&](double v) { const double ch = std::cosh(v); return 2.0 * (g * ch * ch + c); };
  auto Pg = [&](double v) { return 0.5 * std::sinh(2.0 * v) + v; };
  const double Ptot = P(V);
  const double target = s * Ptot;
  double v;
  if (s <= 0.0) {
    v = 0.0;
  } else if (s >= 1.0) {
    v = V;
  } else {
    // P is convex and increasing on v >= 0, so Newton from the right end
    // converges monotonically.
    v = V;
    for (int it = 0; it < 100; ++it) {
      const double dv = (P(v) - target) / Pv(v);
      v -= dv;
      if (std::abs(dv) <= 1e-16 * (1.0 + v)) break;
    }
    v = std::clamp(v, 0.0, V);
  }
  const double sh = std::sinh(v);
  const double t = s >= 1.0 ? L : g * sh * sh;
  const double tv = g * std::sinh(2.0 * v);
  const double dV = -std::sqrt(rho2) / (2.0 * g * std::sqrt(L));
  const double dPtot = Pv(V) * dV + Pg(V);
  const double vs = Ptot / Pv(v);
  const double vg = (s * dPtot - Pg(v)) / Pv(v);
  return {g + t, tv * vs, dg * (1.0 + sh * sh + tv * vg)};
}

ChartMetric chart_metric(double g, double dg, double rho2, double s) {
  const auto cp = chart_point(g, dg, rho2, s);
  const double S = std::sinh(cp.rho);
  const double S2 = S * S;
  const double rs = cp.rho_s, rt = cp.rho_theta;
  return {cp.rho, (rt * rt + S2) / (rs * rs * S2), -rt / (rs * S2), 1.0 / S2, rs * S};
}

double AnnulusGrid::dtheta() const { return kTwoPi / static_cast<double>(n_theta_); }

AnnulusGrid::AnnulusGrid(const DiscreteCurve& inner, double rho2, std::size_t n_s, std::size_t n_theta)
    : inner_(inner), rho2_(rho2), n_s_(n_s), n_theta_(n_theta) {
  if (n_s < 4 || n_theta < 8) throw DomainError("AnnulusGrid: need n_s >= 4 and n_theta >= 8");
  if (!(inner.max_g() < rho2)) throw DomainError("AnnulusGrid: inner curve must lie inside rho2");
  const auto spline = inner.interpolant();
  const double dt = dtheta();
  g_.resize(n_theta);
  dg_.resize(n_theta);
  std::vector<double> gh(n_theta), dgh(n_theta);
  for (std::size_t j = 0; j < n_theta; ++j) {
    const double th = dt * static_cast<double>(j);
    g_[j] = n_theta == inner.size() ? inner.g(j) : spline(th);
    dg_[j] = spline.derivative(th);
    gh[j] = spline(th + 0.5 * dt);
    dgh[j] = spline.derivative(th + 0.5 * dt);
  }
  rho_.resize(nodes());
  area_.assign(nodes(), 0.0);
  resize(sf_, nodes());
  resize(tf_, nodes());
  const double h = ds();
  for (std::size_t i = 0; i <= n_s; ++i) {
    const double si = h * static_cast<double>(i);
    for (std::size_t j = 0; j < n_theta; ++j) {
      const std::size_t k = index(i, j);
      rho_[k] = i == n_s ? rho2 : chart_point(g_[j], dg_[j], rho2, si).rho;
      if (i < n_s) store(sf_, k, chart_metric(g_[j], dg_[j], rho2, si + 0.5 * h));
      if (i > 0 && i < n_s) {
        store(tf_, k, chart_metric(gh[j], dgh[j], rho2, si));
        // Exact area of the rho-band: int sinh = cosh difference.
        const double lo = chart_point(g_[j], dg_[j], rho2, si - 0.5 * h).rho;
        const double hi = chart_point(g_[j], dg_[j], rho2, si + 0.5 * h).rho;
        area_[k] = 2.0 * std::sinh(0.5 * (hi + lo)) * std::sinh(0.5 * (hi - lo)) * dt;
      }
    }
  }
}

std::vector<double> AnnulusGrid::gradient_norm(const std::vector<double>& u) const {
  std::vector<double> out(nodes(), 0.0);
  const std::size_t nt = n_theta_;
  const double dt = dtheta(), h = ds();
  auto jp = [nt](std::size_t j) { return j + 1 == nt ? 0 : j + 1; };
  auto jm = [nt](std::size_t j) { return j == 0 ? nt - 1 : j - 1; };
  for (std::size_t i = 1; i < n_s_; ++i) {
    for (std::size_t j = 0; j < nt; ++j) {
      const auto m = chart_metric(g_[j], dg_[j], rho2_, s(i));
      const double p = (u[index(i + 1, j)] - u[index(i - 1, j)]) / (2.0 * h);
      const double q = (u[index(i, jp(j))] - u[index(i, jm(j))]) / (2.0 * dt);
      out[index(i, j)] = std::sqrt(m.a * p * p + 2.0 * m.b * p * q + m.c * q * q);
    }
  }
  for (std::size_t j = 0; j < nt; ++j) {
    for (std::size_t i : {std::size_t{0}, n_s_}) {
      const bool in = i == 0;
      const std::size_t i1 = in ? 1 : n_s_ - 1, i2 = in ? 2 : n_s_ - 2;
      const double ur = one_sided(rho(i, j), rho(i1, j), rho(i2, j), u[index(i, j)], u[index(i1, j)],
                                  u[index(i2, j)]);
      // Tangential derivative of the data along the boundary curve.
      const double ut_b = (u[index(i, jp(j))] - u[index(i, jm(j))]) / (2.0 * dt);
      const double ut = ut_b - (in ? ur * dg_[j] : 0.0);
      const double S = std::sinh(rho(i, j));
      out[index(i, j)] = std::sqrt(ur * ur + ut * ut / (S * S));
    }
  }
  return out;
}

std::vector<double> AnnulusGrid::inner_normal_derivative(const std::vector<double>& u) const {
  std::vector<double> out(n_theta_);
  const std::size_t nt = n_theta_;
  const double dt = dtheta();
  for (std::size_t j = 0; j < nt; ++j) {
    const double ur = one_sided(rho(0, j), rho(1, j), rho(2, j), u[index(0, j)], u[index(1, j)], u[index(2, j)]);
    const double ut_b = (u[index(0, (j + 1) % nt)] - u[index(0, (j + nt - 1) % nt)]) / (2.0 * dt);
    const double ut = ut_b - ur * dg_[j];
    const double S = std::sinh(rho(0, j));
    const double gs = dg_[j] / S;
    // nu = (1, -g'/S) / sqrt(1 + (g'/S)^2) in the orthonormal (rho, theta) frame.
    out[j] = (ur - gs * ut / S) / std::sqrt(1.0 + gs * gs);
  }
  return out;
}

std::vector<double> AnnulusGrid::outer_normal_derivative(const std::vector<double>& u) const {
  std::vector<double> out(n_theta_);
  for (std::size_t j = 0; j < n_theta_; ++j) {
    const std::size_t a = n_s_, b = n_s_ - 1, c = n_s_ - 2;
    out[j] = -one_sided(rho(a, j), rho(b, j), rho(c, j), u[index(a, j)], u[index(b, j)], u[index(c, j)]);
  }
  return out;
}

std::vector<double> discrete_Q(const AnnulusGrid& G, const std::vector<double>& u) {
  if (u.size() != G.nodes()) throw DomainError("discrete_Q: field size does not match the grid");
  const auto F = fluxes(G, u, false);
  const std::size_t nt = G.n_theta();
  const double dt = G.dtheta(), ds = G.ds();
  std::vector<double> q(G.nodes(), 0.0);
  for (std::size_t i = 1; i < G.n_s(); ++i) {
    for (std::size_t j = 0; j < nt; ++j) {
      const std::size_t k = G.index(i, j);
      const double net = (F.fs[k] - F.fs[G.index(i - 1, j)]) * dt +
                         (F.ft[k] - F.ft[G.index(i, j == 0 ? nt - 1 : j - 1)]) * ds;
      q[k] = net / G.area(i, j);
    }
  }
  return q;
}

double residual_norm(const AnnulusGrid& G, const std::vector<double>& u, double h) {
  const auto q = discrete_Q(G, u);
  double m = 0.0;
  for (std::size_t i = 1; i < G.n_s(); ++i) {
    for (std::size_t j = 0; j < G.n_theta(); ++j) m = std::max(m, std::abs(q[G.index(i, j)] - 2.0 * h));
  }
  return m;
}

Linearization linearize(const AnnulusGrid& G, const std::vector<double>& u, double h) {
  if (u.size() != G.nodes()) throw DomainError("linearize: field size does not match the grid");
  const auto F = fluxes(G, u, true);
  const std::size_t ns = G.n_s(), nt = G.n_theta();
  const double dt = G.dtheta(), ds = G.ds();
  const double ids = 1.0 / ds, idt = 1.0 / dt;
  auto jp = [nt](std::size_t j) { return j + 1 == nt ? 0 : j + 1; };
  auto jm = [nt](std::size_t j) { return j == 0 ? nt - 1 : j - 1; };

  Linearization L;
  L.residual.resize(static_cast<Eigen::Index>(G.unknowns()));
  std::vector<std::vector<Eigen::Triplet<double>>> rows(ns - 1);

  parallel_rows(ns - 1, [&](std::size_t r) {
    const std::size_t i = r + 1;
    auto& T = rows[r];
    T.reserve(nt * 24);
    for (std::size_t j = 0; j < nt; ++j) {
      const std::size_t k = G.index(i, j);
      const auto row = static_cast<int>(r * nt + j);
      auto add = [&](std::size_t ii, std::size_t jj, double v) {
        if (ii == 0 || ii == ns) return;
        T.emplace_back(row, static_cast<int>((ii - 1) * nt + jj), v);
      };
      const std::size_t kd = G.index(i - 1, j), kl = G.index(i, jm(j));
      L.residual[row] = (F.fs[k] - F.fs[kd]) * dt + (F.ft[k] - F.ft[kl]) * ds - 2.0 * h * G.area(i, j);

      // Outgoing s-face (i + 1/2, j), weight +dt; incoming (i - 1/2, j), weight -dt.
      for (int side : {+1, -1}) {
        const std::size_t lo = side > 0 ? i : i - 1;
        const std::size_t f = G.index(lo, j);
        const double wp = side * dt * F.fs_p[f] * ids;
        const double wq = side * dt * F.fs_q[f] * 0.25 * idt;
        const auto st = s_face_stencil(lo, ns);
        for (int m = 0; m < st.count; ++m) add(st.first + m, j, wp * st.w[m] / 24.0);
        add(lo, jp(j), wq);
        add(lo, jm(j), -wq);
        add(lo + 1, jp(j), wq);
        add(lo + 1, jm(j), -wq);
      }
      // theta-faces (i, j + 1/2) weight +ds and (i, j - 1/2) weight -ds.
      for (int side : {+1, -1}) {
        const std::size_t jl = side > 0 ? j : jm(j);
        const std::size_t f = G.index(i, jl);
        const double wp = side * ds * F.ft_p[f] * 0.25 * ids;
        const double wq = side * ds * F.ft_q[f] * idt;
        add(i, jp(jl), wq);
        add(i, jl, -wq);
        add(i + 1, jl, wp);
        add(i - 1, jl, -wp);
        add(i + 1, jp(jl), wp);
        add(i - 1, jp(jl), -wp);
      }
    }
  });

  std::size_t total = 0;
  for (const auto& r : rows) total += r.size();
  std::vector<Eigen::Triplet<double>> all;
  all.reserve(total);
  for (const auto& r : rows) all.insert(all.end(), r.begin(), r.end());
  const auto n = static_cast<Eigen::Index>(G.unknowns());
  L.jacobian.resize(n, n);
  L.jacobian.setFromTriplets(all.begin(), all.end());
  return L;
}

}  // namespace cmc
