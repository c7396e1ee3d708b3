#include <doctest.h>

#include <cmath>
#include <vector>

#include "cmc/error.hpp"
#include "cmc/flow.hpp"

using namespace cmc;

TEST_CASE("trajectory regimes") {
  CHECK(make_trajectory(1.0).regime == Regime::unit);
  CHECK(make_trajectory(0.3).regime == Regime::sub);
  CHECK(make_trajectory(-3.0).regime == Regime::super);
  CHECK(make_trajectory(2.0).k_tilde == doctest::Approx(1.0 / 3.0));
  CHECK_THROWS_AS(make_trajectory(-1.0), DomainError);
}

TEST_CASE("closed form") {
  for (double t : {0.0, 0.5, 3.0, 40.0}) CHECK(evolve_curvature(1.0, t) == 1.0);
  CHECK(evolve_curvature(2.0, 0.0) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(evolve_curvature(2.0, 30.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(evolve_curvature(2.0, 5.0) > 1.0);
  for (double t : {0.1, 1.0, 2.5}) CHECK(evolve_curvature(0.0, t) == doctest::Approx(std::tanh(t)).epsilon(1e-15));
  for (double R : {0.3, 1.0, 2.0}) {
    for (double t : {0.0, 0.7, 3.0}) {
      CHECK(std::abs(evolve_curvature(1.0 / std::tanh(R), t) - 1.0 / std::tanh(R + t)) < 1e-12);
    }
  }
  // Continuity across |k0| = 1.
  CHECK(std::abs(evolve_curvature(1.0 + 1e-9, 0.8) - 1.0) < 1e-8);
  CHECK(std::abs(evolve_curvature(1.0 - 1e-9, 0.8) - 1.0) < 1e-8);
  // k0 < -1 runs into a pole.
  const auto tr = make_trajectory(-2.0);
  CHECK(tr.blowup_time() == doctest::Approx(0.5 * std::log(3.0)));
  CHECK_THROWS_AS(evolve_curvature(-2.0, 0.6), DomainError);
  CHECK(evolve_curvature(-2.0, 0.5) < -2.0);
  CHECK_THROWS_AS(evolve_curvature(-1.0, 0.1), DomainError);
  CHECK_THROWS_AS(evolve_curvature(0.5, -0.1), DomainError);
}

TEST_CASE("closed form agrees with the ODE") {
  for (double k0 : {0.0, 0.5, 0.99, 1.0, 1.01, 2.0, 5.0, -0.5}) {
    for (double t = 0.0; t <= 3.0; t += 0.25) {
      CHECK(std::abs(evolve_curvature_ode(k0, t) - evolve_curvature(k0, t)) <= 1e-9);
    }
  }
  double prev = 5.0;
  for (double t = 0.1; t <= 3.0; t += 0.1) {
    const double k = evolve_curvature_ode(5.0, t);
    CHECK(k < prev);
    prev = k;
  }
  CHECK_THROWS_AS(evolve_curvature_ode(-2.0, 1.0), DomainError);
}

TEST_CASE("offset of a circle is a circle") {
  const auto c = DiscreteCurve::circle(1.0, 64);
  const auto o = offset_curve(c, 0.5);
  for (std::size_t k = 0; k < o.size(); ++k) CHECK(o.g(k) == doctest::Approx(1.5).epsilon(1e-12));
  for (std::size_t k = 0; k < o.size(); k += 9) {
    CHECK(std::abs(discrete_curvature(o, k) - evolve_curvature(discrete_curvature(c, k), 0.5)) < 1e-10);
  }
}

TEST_CASE("offset curvature follows the evolution law") {
  auto gf = [](double t) { return 0.7 + 0.02 * std::cos(3 * t); };
  for (std::size_t n : {64u, 128u}) {
    const auto c = DiscreteCurve::sample(gf, n);
    const auto k0 = curvature_samples(c);
    for (double t : {0.1, 0.5, 1.0}) {
      const auto res = offset_curve_detailed(c, t);
      double err = 0.0;
      for (std::size_t q = 0; q < n; ++q) {
        err = std::max(err, std::abs(curvature_at(res.curve, res.image_theta[q]) - evolve_curvature(k0[q], t)));
      }
      CHECK(err <= 2.0 * std::pow(kTwoPi / n, 2) + 1e-6);
      // Horosphere convexity persists.
      for (double k : curvature_samples(res.curve)) CHECK(k > 1.0);
    }
  }
}

TEST_CASE("offsets compose") {
  const auto c = DiscreteCurve::fourier(0.8, {0.0, 0.03}, {0.0, 0.0, 0.01}, 128);
  const auto a = offset_curve(offset_curve(c, 0.3), 0.4);
  const auto b = offset_curve(c, 0.7);
  for (std::size_t k = 0; k < c.size(); ++k) CHECK(std::abs(a.g(k) - b.g(k)) < 1e-7);
}

TEST_CASE("focal points are detected") {
  // A curve with a deep inward dent has a nearby focal point.
  const auto c = DiscreteCurve::fourier(1.0, {0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.25}, {}, 128);
  CHECK_THROWS_AS(offset_curve(c, 3.0), GeometryError);
}
