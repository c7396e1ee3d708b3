#pragma once
// Data-parallel inner loops with a scalar reference and an AVX2 variant.
// Both variants use the same operation order without fused multiply-add, so
// their results are bitwise identical.

#include <cstddef>

namespace cmc::kernels {

enum class Isa { scalar, avx2 };

/// Best available instruction set; CMC_SIMD=scalar forces the reference path.
Isa active_isa();
const char* isa_name(Isa isa);

/// min_j ((px - qx_j)^2 + (py - qy_j)^2) * w_j and the first j attaining
/// it. Returns {+inf, 0} for n == 0.
struct ArgMin {
  double value;
  std::size_t index;
};
using WeightedMinFn = ArgMin (*)(double px, double py, const double* qx, const double* qy,
                                 const double* w, std::size_t n);

/// Flux through a batch of faces. For gradient (p, q) in chart coordinates
/// and inverse metric [[a, b], [b, c]]:
///   W = sqrt(1 + p (a p + b q) + q (b p + c q)),
///   f1 = mu (a p + b q) / W,  f2 = mu (b p + c q) / W.
struct FluxBatch {
  const double* p;
  const double* q;
  const double* a;
  const double* b;
  const double* c;
  const double* mu;
  double* f1;
  double* f2;
  double* w;
};
using FaceFluxFn = void (*)(const FluxBatch& batch, std::size_t n);

ArgMin weighted_min(double px, double py, const double* qx, const double* qy, const double* w,
                    std::size_t n);
void face_flux(const FluxBatch& batch, std::size_t n);

namespace scalar {
ArgMin weighted_min(double px, double py, const double* qx, const double* qy, const double* w,
                    std::size_t n);
void face_flux(const FluxBatch& batch, std::size_t n);
}  // namespace scalar

#if defined(CMC_HAVE_AVX2)
namespace avx2 {
ArgMin weighted_min(double px, double py, const double* qx, const double* qy, const double* w,
                    std::size_t n);
void face_flux(const FluxBatch& batch, std::size_t n);
}  // namespace avx2
#endif

}  // namespace cmc::kernels
