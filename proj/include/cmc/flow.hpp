#pragma once
// Geodesic curvature along the distance flow of a compact region.
// Convention: circles about 0 have curvature +coth R and move outward, so
// k' = 1 - k^2 and k(t) = tanh or coth(t - log sqrt(k_tilde)).

#include <vector>

#include "cmc/curve.hpp"

namespace cmc {

enum class Regime { unit, sub, super };

struct CurvatureTrajectory {
  double k0 = 0.0;
  Regime regime = Regime::unit;
  double k_tilde = 0.0;  // |(1 - k0) / (1 + k0)|
  /// Pole of coth for k0 < -1, +inf otherwise.
  double blowup_time() const;
  double at(double t) const;
};

/// Throws DomainError for k0 = -1.
CurvatureTrajectory make_trajectory(double k0);

/// Closed form. Throws DomainError at k0 = -1, for t < 0 or at/after a pole.
double evolve_curvature(double k0, double t);

struct OdeOptions {
  double tol = 1e-13;       // local error per unit time
  double min_step = 1e-12;
};
/// Adaptive RK4 (step doubling with Richardson correction) for k' = 1 - k^2.
double evolve_curvature_ode(double k0, double t, const OdeOptions& opt = {});

struct OffsetResult {
  DiscreteCurve curve;              // resampled on the uniform grid
  std::vector<double> image_theta;  // angle of each moved node
  std::vector<double> image_rho;
};

/// Moves every node a hyperbolic distance t along the outward normal and
/// resamples. Throws GeometryError if the moved nodes stop being a radial
/// graph (focal point or loss of star-shapedness).
OffsetResult offset_curve_detailed(const DiscreteCurve& curve, double t);
DiscreteCurve offset_curve(const DiscreteCurve& curve, double t);

/// Curvature at an arbitrary angle, interpolating the node curvatures.
double curvature_at(const DiscreteCurve& curve, double theta);

}  // namespace cmc
