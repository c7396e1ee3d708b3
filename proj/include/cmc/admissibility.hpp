#pragma once
// r-admissibility of an inner boundary curve and the (alpha, beta, xi) data
// consumed by the annulus solver.

#include <optional>
#include <string>
#include <vector>

#include "cmc/curve.hpp"
#include "cmc/rotational.hpp"

namespace cmc {

struct AdmissibilityOptions {
  std::optional<double> alpha;   // overrides the base-circle rule
  std::optional<double> radius;  // overrides the certified interior radius
  double alpha_fraction = 0.9;   // rho^h(alpha) = fraction * min g when solvable
  std::size_t certify_factor = 16;
  BetaBarOptions beta_bar;
};

/// Dense samples of a curve in disk coordinates with weights 1 / (1 - |x|^2),
/// ready for the distance kernel.
struct CurveSamples {
  std::vector<double> x, y, w;
  CurveSamples(const DiscreteCurve& curve, std::size_t factor);
  /// Hyperbolic distance from p to the curve: nearest sample, then a
  /// one-dimensional polish on the interpolant.
  double distance(const ModelPoint& p) const;

private:
  PeriodicCubicSpline spline_;
};

/// Largest r for which the disk of radius r tangent from inside at every node
/// stays inside the curve, certified against dense samples.
double interior_sphere_radius(const DiscreteCurve& curve, std::size_t certify_factor = 16);

struct ConvexityResult {
  bool convex = false;
  double min_k = 0.0;
};
ConvexityResult horosphere_convex(const DiscreteCurve& curve);

struct Parameters {
  double alpha = 0.0;
  double beta = 0.0;
  double r = 0.0;            // interior sphere radius (or override)
  double r_effective = 0.0;  // after the beta <= beta_bar reduction
  bool r_reduced = false;
  double beta_bar = 0.0;
  bool beta_bar_capped = false;
};
/// Throws GeometryError if no alpha puts the base circle inside the curve.
Parameters choose_parameters(const DiscreteCurve& curve, double h, const AdmissibilityOptions& opt = {});

double xi(double h, double alpha, double beta);

struct AdmissibilityReport {
  double h = 0.0;
  double r = 0.0;
  bool r_reduced = false;
  double r_effective = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  double beta_bar = 0.0;
  bool beta_bar_capped = false;
  double xi = 0.0;
  double half_d_beta = 0.0;
  double d_infinity = 0.0;
  double annulus_inner = 0.0;
  double annulus_outer = 0.0;
  bool horosphere_convex = false;
  double min_k = 0.0;
  double max_k = 0.0;
  bool interior_sphere = false;
  bool contained = false;
  bool verdict = false;
  struct Margins {
    double inner = 0.0;            // min g - r_effective
    double outer = 0.0;            // r_effective + xi - max g
    double interior_sphere = 0.0;  // certified radius - r_effective
    double base_circle = 0.0;      // min g - rho^h(alpha)
  } margins;
  std::vector<std::string> reasons;
};

AdmissibilityReport check_r_admissible(const DiscreteCurve& curve, double h,
                                       const AdmissibilityOptions& opt = {});

struct BarrierTangencyOptions {
  double rho_max = 14.0;
  std::size_t n_rho = 96;
  std::size_t n_theta = 128;
};

struct BarrierReport {
  std::size_t z_index = 0;
  PolarPoint center;              // center of the translated base circle
  double center_distance = 0.0;   // d(0, center)
  double grid_margin = 0.0;       // min of H_alpha - translated H_beta on samples
  double asymptotic_margin = 0.0; // k_alpha - k_beta - c_h d(0, center)
  bool below = false;             // conclusion 1
  double inside_margin = 0.0;     // arccosh(beta/2h) - max_k d(center, node)
  bool nonpositive_on_curve = false;  // conclusion 2
  bool pass = false;
};

/// Throws GeometryError when the curve is more curved at z than a circle of
/// radius r_effective.
BarrierReport verify_barrier_tangency(const DiscreteCurve& curve, double h,
                                      const AdmissibilityReport& report, std::size_t z_index,
                                      const BarrierTangencyOptions& opt = {});

}  // namespace cmc
