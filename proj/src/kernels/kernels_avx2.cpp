#include <immintrin.h>

#include <cmath>
#include <limits>

#include "cmc/kernels.hpp"

namespace cmc::kernels::avx2 {

ArgMin weighted_min(double px, double py, const double* qx, const double* qy, const double* w,
                    std::size_t n) {
  const __m256d vx = _mm256_set1_pd(px);
  const __m256d vy = _mm256_set1_pd(py);
  __m256d best = _mm256_set1_pd(std::numeric_limits<double>::infinity());
  __m256d best_idx = _mm256_setzero_pd();
  __m256d idx = _mm256_setr_pd(0.0, 1.0, 2.0, 3.0);
  const __m256d four = _mm256_set1_pd(4.0);
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    const __m256d dx = _mm256_sub_pd(vx, _mm256_loadu_pd(qx + j));
    const __m256d dy = _mm256_sub_pd(vy, _mm256_loadu_pd(qy + j));
    const __m256d d2 = _mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy));
    const __m256d v = _mm256_mul_pd(d2, _mm256_loadu_pd(w + j));
    const __m256d lt = _mm256_cmp_pd(v, best, _CMP_LT_OQ);
    best = _mm256_blendv_pd(best, v, lt);
    best_idx = _mm256_blendv_pd(best_idx, idx, lt);
    idx = _mm256_add_pd(idx, four);
  }
  // Each lane holds its first minimum; ties across lanes go to the lower index.
  alignas(32) double lv[4], li[4];
  _mm256_store_pd(lv, best);
  _mm256_store_pd(li, best_idx);
  ArgMin out{std::numeric_limits<double>::infinity(), 0};
  for (int k = 0; k < 4; ++k) {
    const auto i = static_cast<std::size_t>(li[k]);
    if (lv[k] < out.value || (lv[k] == out.value && i < out.index)) out = {lv[k], i};
  }
  for (; j < n; ++j) {
    const double dx = px - qx[j];
    const double dy = py - qy[j];
    const double v = (dx * dx + dy * dy) * w[j];
    if (v < out.value) out = {v, j};
  }
  return out;
}

void face_flux(const FluxBatch& f, std::size_t n) {
  const __m256d one = _mm256_set1_pd(1.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d p = _mm256_loadu_pd(f.p + i);
    const __m256d q = _mm256_loadu_pd(f.q + i);
    const __m256d a = _mm256_loadu_pd(f.a + i);
    const __m256d b = _mm256_loadu_pd(f.b + i);
    const __m256d c = _mm256_loadu_pd(f.c + i);
    const __m256d gp = _mm256_add_pd(_mm256_mul_pd(a, p), _mm256_mul_pd(b, q));
    const __m256d gq = _mm256_add_pd(_mm256_mul_pd(b, p), _mm256_mul_pd(c, q));
    const __m256d quad = _mm256_add_pd(_mm256_mul_pd(p, gp), _mm256_mul_pd(q, gq));
    const __m256d W = _mm256_sqrt_pd(_mm256_add_pd(one, quad));
    const __m256d s = _mm256_div_pd(_mm256_loadu_pd(f.mu + i), W);
    _mm256_storeu_pd(f.f1 + i, _mm256_mul_pd(s, gp));
    _mm256_storeu_pd(f.f2 + i, _mm256_mul_pd(s, gq));
    _mm256_storeu_pd(f.w + i, W);
  }
  if (i < n) {
    FluxBatch tail{f.p + i, f.q + i, f.a + i, f.b + i, f.c + i, f.mu + i, f.f1 + i, f.f2 + i, f.w + i};
    scalar::face_flux(tail, n - i);
  }
}

}  // namespace cmc::kernels::avx2
