#include <cstdlib>
#include <string_view>

#include "cmc/kernels.hpp"

namespace cmc::kernels {

namespace {

Isa detect() {
  if (const char* env = std::getenv("CMC_SIMD"); env && std::string_view(env) == "scalar") {
    return Isa::scalar;
  }
#if defined(CMC_HAVE_AVX2)
  __builtin_cpu_init();
  if (__builtin_cpu_supports("avx2")) return Isa::avx2;
#endif
  return Isa::scalar;
}

struct Table {
  WeightedMinFn weighted_min;
  FaceFluxFn face_flux;
};

const Table& table() {
  static const Table t = [] {
#if defined(CMC_HAVE_AVX2)
    if (detect() == Isa::avx2) return Table{&avx2::weighted_min, &avx2::face_flux};
#endif
    return Table{&scalar::weighted_min, &scalar::face_flux};
  }();
  return t;
}

}  // namespace

Isa active_isa() {
  static const Isa isa = detect();
  return isa;
}

const char* isa_name(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

ArgMin weighted_min(double px, double py, const double* qx, const double* qy, const double* w,
                    std::size_t n) {
  return table().weighted_min(px, py, qx, qy, w, n);
}

void face_flux(const FluxBatch& batch, std::size_t n) { table().face_flux(batch, n); }

}  // namespace cmc::kernels
