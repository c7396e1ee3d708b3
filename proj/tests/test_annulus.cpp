#include <doctest.h>

#include <cmath>
#include <vector>

#include "cmc/annulus.hpp"
#include "cmc/rotational.hpp"

using namespace cmc;

namespace {

template <class F>
std::vector<double> field(const AnnulusGrid& G, F&& f) {
  std::vector<double> u(G.nodes());
  for (std::size_t i = 0; i <= G.n_s(); ++i) {
    for (std::size_t j = 0; j < G.n_theta(); ++j) u[G.index(i, j)] = f(G.rho(i, j), G.theta(j));
  }
  return u;
}

double max_interior(const AnnulusGrid& G, const std::vector<double>& v, double target) {
  double m = 0.0;
  for (std::size_t i = 1; i < G.n_s(); ++i) {
    for (std::size_t j = 0; j < G.n_theta(); ++j) m = std::max(m, std::abs(v[G.index(i, j)] - target));
  }
  return m;
}

DiscreteCurve wavy(double r, double a, int k, std::size_t n) {
  return DiscreteCurve::sample([=](double t) { return r + a * std::cos(k * t); }, n);
}

}  // namespace

TEST_CASE("chart") {
  const double g = 0.4, dg = 0.1, rho2 = 6.0;
  CHECK(chart_point(g, dg, rho2, 0.0).rho == g);
  CHECK(chart_point(g, dg, rho2, 1.0).rho == doctest::Approx(rho2).epsilon(1e-15));
  CHECK(chart_point(g, dg, rho2, 0.0).rho_s == 0.0);
  CHECK(std::abs(chart_point(g, dg, rho2, 1.0).rho_theta) < 1e-12);
  // Derivatives against central differences.
  for (double s : {0.1, 0.5, 0.9}) {
    const auto c = chart_point(g, dg, rho2, s);
    const double e = 1e-6;
    const double fs = (chart_point(g, dg, rho2, s + e).rho - chart_point(g, dg, rho2, s - e).rho) / (2 * e);
    const double fg = (chart_point(g + e, dg, rho2, s).rho - chart_point(g - e, dg, rho2, s).rho) / (2 * e);
    CHECK(c.rho_s == doctest::Approx(fs).epsilon(1e-8));
    CHECK(c.rho_theta == doctest::Approx(dg * fg).epsilon(1e-8));
  }
  double prev = g;
  for (int i = 1; i <= 100; ++i) {
    const double r = chart_point(g, 0.0, rho2, i / 100.0).rho;
    CHECK(r > prev);
    prev = r;
  }
}

TEST_CASE("constants are exact solutions of Q = 0") {
  const AnnulusGrid G(wavy(0.6, 0.05, 3, 64), 5.0, 24, 64);
  const auto q = discrete_Q(G, std::vector<double>(G.nodes(), 3.25));
  CHECK(max_interior(G, q, 0.0) == 0.0);
}

TEST_CASE("rotational heights have Q = 2h") {
  for (double h : {0.1, 0.25, 0.4}) {
    for (double f : {0.3, 0.9, 1.5}) {
      const auto p = make_profile(h, 2.0 * h * f);
      double prev = 0.0;
      for (std::size_t n : {32, 64}) {
        const AnnulusGrid G(DiscreteCurve::circle(p.rho0, 16), 6.0, n, 16);
        const auto u = field(G, [&](double r, double) { return height(p, r); });
        const double e = max_interior(G, discrete_Q(G, u), 2.0 * h);
        CHECK(e <= 4.0 / static_cast<double>(n * n));
        if (prev > 0.0) CHECK(std::log2(prev / e) >= 1.9);
        prev = e;
      }
    }
  }
}

TEST_CASE("rotational height over a non-circular inner curve") {
  // H_alpha restricted to an annulus whose inner curve is wavy exercises the
  // off-diagonal metric terms.
  const double h = 0.25;
  const auto p = make_profile(h, 0.3);
  const RotationalTable t(p, 6.5);
  double prev = 0.0;
  for (std::size_t n : {32, 64, 128}) {
    const AnnulusGrid G(wavy(0.6, 0.08, 3, n), 6.0, n, n);
    const auto u = field(G, [&](double r, double) { return t(r); });
    const double e = max_interior(G, discrete_Q(G, u), 2.0 * h);
    CHECK(e < 40.0 / static_cast<double>(n * n));
    if (prev > 0.0) CHECK(std::log2(prev / e) > 1.9);
    prev = e;
  }
}

TEST_CASE("cones") {
  // Q(c rho + k) = c / sqrt(1 + c^2) coth rho.
  const double c = 0.7;
  double prev = 0.0;
  for (std::size_t n : {32, 64}) {
    const AnnulusGrid G(DiscreteCurve::circle(0.5, 16), 5.0, n, 16);
    const auto u = field(G, [&](double r, double) { return c * r - 2.0; });
    const auto q = discrete_Q(G, u);
    double e = 0.0;
    for (std::size_t i = 1; i < n; ++i) {
      e = std::max(e, std::abs(q[G.index(i, 3)] - c / std::sqrt(1.0 + c * c) / std::tanh(G.rho(i, 3))));
    }
    CHECK(e < 4.0 / static_cast<double>(n * n));
    if (prev > 0.0) CHECK(std::log2(prev / e) > 1.9);
    prev = e;
  }
}

TEST_CASE("jacobian matches finite differences") {
  const double h = 0.25;
  const AnnulusGrid G(wavy(0.6, 0.05, 2, 16), 3.0, 6, 16);
  auto u = field(G, [](double r, double t) { return 0.4 * r + 0.1 * std::sin(t) * r; });
  const auto L = linearize(G, u, h);
  CHECK(L.jacobian.rows() == static_cast<Eigen::Index>(G.unknowns()));
  const std::size_t nt = G.n_theta();
  double worst = 0.0;
  for (std::size_t col = 0; col < G.unknowns(); col += 5) {
    const std::size_t node = G.index(col / nt + 1, col % nt);
    const double e = 1e-6;
    auto up = u, um = u;
    up[node] += e;
    um[node] -= e;
    const Eigen::VectorXd fd = (linearize(G, up, h).residual - linearize(G, um, h).residual) / (2 * e);
    const Eigen::VectorXd an = L.jacobian.col(static_cast<Eigen::Index>(col));
    worst = std::max(worst, (fd - an).cwiseAbs().maxCoeff() / (1.0 + an.cwiseAbs().maxCoeff()));
  }
  CHECK(worst < 1e-7);

  // Residual rows are flux balances: Q - 2h times the cell area.
  const auto q = discrete_Q(G, u);
  for (std::size_t k = 0; k < G.unknowns(); k += 7) {
    const std::size_t i = k / nt + 1, j = k % nt;
    CHECK(L.residual[static_cast<Eigen::Index>(k)] ==
          doctest::Approx((q[G.index(i, j)] - 2 * h) * G.area(i, j)).epsilon(1e-10));
  }
}

TEST_CASE("boundary derivatives") {
  const double c = 0.6;
  const AnnulusGrid G(wavy(0.8, 0.05, 3, 64), 4.0, 128, 64);
  const auto u = field(G, [&](double r, double) { return c * r; });
  const auto out = G.outer_normal_derivative(u);
  for (double v : out) CHECK(v == doctest::Approx(-c).epsilon(1e-10));
  // rho = c rho on the inner curve: the normal derivative is c times the
  // rho-component of the unit normal.
  const auto in = G.inner_normal_derivative(u);
  const auto gr = G.gradient_norm(u);
  for (std::size_t j = 0; j < 64; ++j) {
    const double S = std::sinh(G.inner_g(j));
    const double gs = G.inner_dg(j) / S;
    CHECK(in[j] == doctest::Approx(c / std::sqrt(1.0 + gs * gs)).epsilon(1e-3));
    CHECK(gr[G.index(40, j)] == doctest::Approx(c).epsilon(1e-3));
  }
}
