#include <cmath>
#include <limits>

#include "cmc/kernels.hpp"

namespace cmc::kernels::scalar {

ArgMin weighted_min(double px, double py, const double* qx, const double* qy, const double* w,
                    std::size_t n) {
  ArgMin best{std::numeric_limits<double>::infinity(), 0};
  for (std::size_t j = 0; j < n; ++j) {
    const double dx = px - qx[j];
    const double dy = py - qy[j];
    const double v = (dx * dx + dy * dy) * w[j];
    if (v < best.value) best = {v, j};
  }
  return best;
}

void face_flux(const FluxBatch& f, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double gp = f.a[i] * f.p[i] + f.b[i] * f.q[i];
    const double gq = f.b[i] * f.p[i] + f.c[i] * f.q[i];
    const double W = std::sqrt(1.0 + (f.p[i] * gp + f.q[i] * gq));
    const double s = f.mu[i] / W;
    f.f1[i] = s * gp;
    f.f2[i] = s * gq;
    f.w[i] = W;
  }
}

}  // namespace cmc::kernels::scalar
