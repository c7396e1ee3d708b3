#include "cmc/hyperbolic.hpp"

#include <cmath>
#include <string>

#include "cmc/error.hpp"

namespace cmc {

namespace {

void require_inside(double r2, const char* what) {
  if (!(r2 < 1.0)) {
    throw DomainError(std::string(what) + ": point not strictly inside the unit disk");
  }
}

}  // namespace

ModelPoint::ModelPoint(double x, double y) : x_(x), y_(y) {
  require_inside(norm2(), "ModelPoint");
}

double normalize_angle(double theta) {
  double t = std::fmod(theta, kTwoPi);
  if (t < 0.0) t += kTwoPi;
  if (t >= kTwoPi) t = 0.0;
  return t;
}

double conformal_factor(double euclidean_radius) {
  if (!(euclidean_radius >= 0.0) || !(euclidean_radius < 1.0)) {
    throw DomainError("conformal_factor: radius must lie in [0, 1)");
  }
  return 2.0 / (1.0 - euclidean_radius * euclidean_radius);
}

double hyp_distance(const ModelPoint& p, const ModelPoint& q) {
  const auto zp = p.as_complex();
  const auto zq = q.as_complex();
  const double num = std::abs(zp - zq);
  if (num == 0.0) return 0.0;
  const double den = std::abs(1.0 - std::conj(zp) * zq);
  return 2.0 * std::atanh(num / den);
}

double polar_distance(const PolarPoint& p, const PolarPoint& q) {
  // sinh^2(d/2) = sinh^2((r1 - r2)/2) + sinh r1 sinh r2 sin^2(dtheta/2)
  const double a = std::sinh(0.5 * (p.rho - q.rho));
  const double b = std::sin(0.5 * (p.theta - q.theta));
  const double s2 = a * a + std::sinh(p.rho) * std::sinh(q.rho) * b * b;
  return 2.0 * std::asinh(std::sqrt(s2));
}

PolarPoint to_polar(const ModelPoint& p) {
  const double r = std::sqrt(p.norm2());
  if (r == 0.0) return {0.0, 0.0};
  return {2.0 * std::atanh(r), normalize_angle(std::atan2(p.y(), p.x()))};
}

ModelPoint from_polar(const PolarPoint& pp) {
  if (!(pp.rho >= 0.0)) throw DomainError("from_polar: rho must be non-negative");
  const double t = std::tanh(0.5 * pp.rho);
  return ModelPoint(t * std::cos(pp.theta), t * std::sin(pp.theta));
}

ModelPoint mobius_shift(const ModelPoint& z, const ModelPoint& a) {
  const auto zz = z.as_complex();
  const auto aa = a.as_complex();
  const auto w = (zz + aa) / (1.0 + std::conj(aa) * zz);
  return ModelPoint(w.real(), w.imag());
}

ModelPoint translate(const ModelPoint& p, const GeodesicTranslation& by) {
  const double t = std::tanh(0.5 * by.distance);
  const ModelPoint a(t * std::cos(by.direction), t * std::sin(by.direction));
  return mobius_shift(p, a);
}

ModelPoint exp_map(const ModelPoint& p, double direction, double t) {
  // Move p to the origin, walk along the straight geodesic, move back. The
  // shift has a positive real derivative at 0, so directions are preserved.
  const ModelPoint at_origin = translate(ModelPoint(0.0, 0.0), {direction, t});
  return mobius_shift(at_origin, p);
}

}  // namespace cmc
