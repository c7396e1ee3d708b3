#include <doctest.h>

#include <cmath>

#include "cmc/barriers.hpp"
#include "cmc/rotational.hpp"

using namespace cmc;

TEST_CASE("psi") {
  const double eps = 0.3, A = 2.0;
  CHECK(psi(eps, A, 0.0) == 0.0);
  CHECK(psi(eps, A, eps) == doctest::Approx(A * (std::exp(eps) - eps - 1.0)).epsilon(1e-15));
  CHECK(psi_prime(eps, A, eps) == doctest::Approx(0.0).epsilon(1e-15));
  for (double x : {0.05, 0.1, 0.2}) {
    const double e = 1e-6;
    CHECK(psi_prime(eps, A, x) == doctest::Approx((psi(eps, A, x + e) - psi(eps, A, x - e)) / (2 * e)).epsilon(1e-8));
    CHECK(psi_second(eps, A, x) ==
          doctest::Approx((psi_prime(eps, A, x + e) - psi_prime(eps, A, x - e)) / (2 * e)).epsilon(1e-7));
    CHECK(psi_prime(eps, A, x) > 0.0);
    CHECK(psi_second(eps, A, x) < 0.0);
  }
}

TEST_CASE("barrier suite on the perturbed fixture") {
  const double h = 0.25;
  const auto c = DiscreteCurve::sample([](double t) { return 0.7 + 0.02 * std::cos(3.0 * t); }, 128);
  const auto rep = check_r_admissible(c, h);
  const auto P = make_problem(c, h, 6.0, rep);
  SolverOptions o;
  o.n_s = 32;
  o.n_theta = 128;
  const auto s = solve_dirichlet(P, o);
  const auto b = barrier_suite(P, s, rep);
  CHECK(b.sandwich.pass);
  CHECK(b.sandwich.lower_margin > 0.0);

  const auto& w = b.w_plus;
  CHECK(w.feasible);
  CHECK(w.max_operator < 0.0);
  CHECK(w.psi_at_eps == doctest::Approx(w.M).epsilon(1e-12));
  CHECK(w.slope_bound == doctest::Approx(psi_prime(w.epsilon, w.A, 0.0)).epsilon(1e-15));
  CHECK(w.max_inner_normal <= w.slope_bound);
  CHECK(w.pass);

  CHECK(b.tangency.nodes == c.size());
  CHECK(b.tangency.passed == c.size());
  CHECK(b.tangency.pass);

  // The cone f = c rho + k through the slice has mean curvature above h.
  const auto& q = b.outer;
  CHECK(q.c == doctest::Approx(slope_ch(h) * 1.001).epsilon(1e-12));
  CHECK(q.mean_curvature_excess > 0.0);
  CHECK(q.outer_slope_min >= 0.0);
  CHECK(q.outer_slope_max <= q.c);
  CHECK(q.pass);
  CHECK(b.pass);
  CHECK(b.failures.empty());
}

TEST_CASE("w+ is infeasible for the circle of radius 0.5") {
  const double h = 0.25;
  const auto c = DiscreteCurve::circle(0.5, 64);
  const auto rep = check_r_admissible(c, h);
  const auto P = make_problem(c, h, 6.0, rep);
  SolverOptions o;
  o.n_s = 24;
  o.n_theta = 64;
  const auto b = barrier_suite(P, solve_dirichlet(P, o), rep);
  CHECK_FALSE(b.w_plus.feasible);
  CHECK_FALSE(b.pass);
  CHECK(b.sandwich.pass);
  CHECK(b.tangency.pass);
  CHECK(b.outer.pass);
}
