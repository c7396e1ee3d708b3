#pragma once
// Poincare disk model of the hyperbolic plane: metric, distances, polar
// coordinates and translations along geodesics through the origin.

#include <complex>

namespace cmc {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

/// Point of the open unit disk, Euclidean coordinates.
class ModelPoint {
public:
  ModelPoint() = default;
  /// Throws DomainError unless x^2 + y^2 < 1.
  ModelPoint(double x, double y);

  double x() const { return x_; }
  double y() const { return y_; }
  double norm2() const { return x_ * x_ + y_ * y_; }
  std::complex<double> as_complex() const { return {x_, y_}; }

private:
  double x_ = 0.0;
  double y_ = 0.0;
};

/// Geodesic polar coordinates about the origin; rho is the hyperbolic
/// distance from 0 and theta lies in [0, 2pi).
struct PolarPoint {
  double rho = 0.0;
  double theta = 0.0;
};

/// Hyperbolic translation along the geodesic through 0 with direction
/// `direction`, moving the origin a signed distance `distance`.
struct GeodesicTranslation {
  double direction = 0.0;
  double distance = 0.0;
};

double normalize_angle(double theta);

/// lambda(r) = 2 / (1 - r^2).
double conformal_factor(double euclidean_radius);

double hyp_distance(const ModelPoint& p, const ModelPoint& q);

/// Distance between points given in polar form. Stable for nearby points and
/// for radii far beyond where the disk model saturates.
double polar_distance(const PolarPoint& p, const PolarPoint& q);

PolarPoint to_polar(const ModelPoint& p);
ModelPoint from_polar(const PolarPoint& pp);

ModelPoint translate(const ModelPoint& p, const GeodesicTranslation& by);

/// Mobius map z -> (z + a) / (1 + conj(a) z), the isometry taking 0 to a
/// with derivative a positive multiple of the identity at 0.
ModelPoint mobius_shift(const ModelPoint& z, const ModelPoint& a);

/// Endpoint of the unit-speed geodesic leaving p in the Euclidean direction
/// `direction` (an angle), after hyperbolic length t.
ModelPoint exp_map(const ModelPoint& p, double direction, double t);

}  // namespace cmc
