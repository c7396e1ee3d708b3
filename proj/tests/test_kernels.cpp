#include <doctest.h>

#include <cmath>
#include <cstring>
#include <random>
#include <vector>

#include "cmc/kernels.hpp"

using namespace cmc::kernels;

namespace {

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

struct FluxData {
  std::vector<double> p, q, a, b, c, mu, f1, f2, w;
  explicit FluxData(std::size_t n, unsigned seed)
      : p(n), q(n), a(n), b(n), c(n), mu(n), f1(n), f2(n), w(n) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-3.0, 3.0), pos(0.01, 5.0);
    for (std::size_t i = 0; i < n; ++i) {
      p[i] = u(rng);
      q[i] = u(rng);
      a[i] = pos(rng);
      c[i] = pos(rng);
      b[i] = 0.9 * std::sqrt(a[i] * c[i]) * std::tanh(u(rng));
      mu[i] = pos(rng);
    }
  }
  FluxBatch batch() { return {p.data(), q.data(), a.data(), b.data(), c.data(), mu.data(), f1.data(), f2.data(), w.data()}; }
};

}  // namespace

TEST_CASE("scalar reference values") {
  FluxData d(1, 1);
  d.p[0] = 1.0; d.q[0] = 2.0; d.a[0] = 1.0; d.b[0] = 0.0; d.c[0] = 0.25; d.mu[0] = 3.0;
  scalar::face_flux(d.batch(), 1);
  CHECK(d.w[0] == doctest::Approx(std::sqrt(3.0)));
  CHECK(d.f1[0] == doctest::Approx(3.0 / std::sqrt(3.0)));
  CHECK(d.f2[0] == doctest::Approx(1.5 / std::sqrt(3.0)));

  const double qx[] = {0.5, -0.2, 0.1}, qy[] = {0.0, 0.3, -0.1}, w[] = {1.0, 2.0, 10.0};
  const auto m = scalar::weighted_min(0.0, 0.0, qx, qy, w, 3);
  CHECK(m.value == doctest::Approx(0.2));
  CHECK(m.index == 2);
  CHECK(std::isinf(scalar::weighted_min(0.0, 0.0, qx, qy, w, 0).value));
}

TEST_CASE("dispatch reports an instruction set") {
  const auto isa = active_isa();
  CHECK((isa == Isa::scalar || isa == Isa::avx2));
  MESSAGE("active kernels: " << isa_name(isa));
}

#if defined(CMC_HAVE_AVX2)
TEST_CASE("avx2 kernels match the scalar reference bit for bit") {
  if (!__builtin_cpu_supports("avx2")) {
    MESSAGE("cpu lacks avx2, skipping");
    return;
  }
  for (std::size_t n : {0u, 1u, 3u, 4u, 5u, 17u, 64u, 129u}) {
    FluxData s(n, 42 + static_cast<unsigned>(n)), v = s;
    scalar::face_flux(s.batch(), n);
    avx2::face_flux(v.batch(), n);
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(same_bits(s.f1[i], v.f1[i]));
      CHECK(same_bits(s.f2[i], v.f2[i]));
      CHECK(same_bits(s.w[i], v.w[i]));
    }

    std::mt19937_64 rng(n);
    std::uniform_real_distribution<double> u(-0.9, 0.9), pw(1.0, 50.0);
    std::vector<double> qx(n), qy(n), w(n);
    for (std::size_t j = 0; j < n; ++j) { qx[j] = u(rng); qy[j] = u(rng); w[j] = pw(rng); }
    for (int t = 0; t < 10; ++t) {
      const double px = u(rng), py = u(rng);
      const auto a = scalar::weighted_min(px, py, qx.data(), qy.data(), w.data(), n);
      const auto b = avx2::weighted_min(px, py, qx.data(), qy.data(), w.data(), n);
      CHECK(same_bits(a.value, b.value));
      CHECK(a.index == b.index);
    }
    // Repeated minima resolve to the first index on both paths.
    std::vector<double> ones(n, 1.0), zeros(n, 0.0);
    if (n > 0) {
      CHECK(scalar::weighted_min(0.5, 0.0, zeros.data(), zeros.data(), ones.data(), n).index == 0);
      CHECK(avx2::weighted_min(0.5, 0.0, zeros.data(), zeros.data(), ones.data(), n).index == 0);
    }
  }
}
#endif
