#pragma once
// Closed star-shaped curves stored as radial graphs rho = g(theta) on a
// uniform theta grid, theta_k = 2 pi k / n.

#include <filesystem>
#include <string_view>
#include <vector>

#include "cmc/hyperbolic.hpp"
#include "cmc/spline.hpp"

namespace cmc {

class DiscreteCurve {
public:
  DiscreteCurve() = default;
  /// Throws DomainError for n < 8, non-finite or non-positive samples.
  explicit DiscreteCurve(std::vector<double> g);

  static DiscreteCurve circle(double radius, std::size_t n);
  /// g(theta) = a0 + sum_k a[k-1] cos(k theta) + b[k-1] sin(k theta).
  static DiscreteCurve fourier(double a0, const std::vector<double>& a,
                               const std::vector<double>& b, std::size_t n);
  /// Samples an arbitrary periodic function on the uniform grid.
  template <class F>
  static DiscreteCurve sample(F&& f, std::size_t n) {
    std::vector<double> g(n);
    for (std::size_t k = 0; k < n; ++k) g[k] = f(kTwoPi * static_cast<double>(k) / static_cast<double>(n));
    return DiscreteCurve(std::move(g));
  }

  std::size_t size() const { return g_.size(); }
  double dtheta() const { return kTwoPi / static_cast<double>(g_.size()); }
  double theta(std::size_t k) const { return dtheta() * static_cast<double>(k); }
  double g(std::size_t k) const { return g_[k]; }
  const std::vector<double>& samples() const { return g_; }

  /// g' and g'' at node k, fourth-order central differences.
  double dg(std::size_t k) const;
  double d2g(std::size_t k) const;

  double min_g() const;
  double max_g() const;

  ModelPoint point(std::size_t k) const { return from_polar({g_[k], theta(k)}); }

  /// Periodic cubic interpolant of g.
  PeriodicCubicSpline interpolant() const;

  /// Rotation by m grid steps: g'(theta_k) = g(theta_{k-m}).
  DiscreteCurve rotated(std::ptrdiff_t m) const;

private:
  std::vector<double> g_;
};

/// Geodesic curvature of the radial graph rho = g(theta) given g, g', g''.
/// Circles about 0 of radius R get +coth R.
double radial_graph_curvature(double g, double dg, double d2g);

double discrete_curvature(const DiscreteCurve& curve, std::size_t i);
std::vector<double> curvature_samples(const DiscreteCurve& curve);

/// Outward unit normal at node k as a Euclidean angle in the disk model.
double outward_normal_angle(const DiscreteCurve& curve, std::size_t k);

/// Reads {"n", "g"} or {"fourier": {"a0", "a", "b"}} (optional "n", default
/// 128). Throws ParseError carrying the line number for malformed JSON.
DiscreteCurve parse_curve_json(std::string_view text);
DiscreteCurve load_curve(const std::filesystem::path& path);
std::string curve_to_json(const DiscreteCurve& curve);

}  // namespace cmc
