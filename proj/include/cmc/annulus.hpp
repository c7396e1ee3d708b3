#pragma once
// Structured grid on the annulus between a star-shaped inner curve rho = g(theta)
// and the circle rho = rho2, and the flux-form mean curvature operator on it.
//
// Chart: rho = g + t with t = g sinh^2 v and s proportional to
//   P(v) = (g/2) sinh 2v + (g + 2c) v,
// i.e. cell size ~ sqrt(t (t + g)) / (c + t + g). Near the inner curve
// t ~ s^2, which turns the sqrt(rho - rho0) behaviour of rotational heights at
// their base circle into a smooth function of s; for g << t << c the grid is
// uniform in log t, and beyond c it is uniform in rho.

#include <cstddef>
#include <vector>

#include <Eigen/SparseCore>

#include "cmc/curve.hpp"

namespace cmc {

/// Inverse metric [[a, b], [b, c]] and area density mu = sqrt(det) per face.
struct FaceGeometry {
  std::vector<double> a, b, c, mu;
};

/// Grading scale c of the chart (see below).
inline constexpr double kChartScale = 4.0;

struct ChartPoint {
  double rho, rho_s, rho_theta;
};
/// rho(s, theta) for inner radius g, slope g' = dg and outer radius rho2.
ChartPoint chart_point(double g, double dg, double rho2, double s);

struct ChartMetric {
  double rho, a, b, c, mu;
};
/// Metric of the chart at (s, theta) for inner radius g and slope g'.
ChartMetric chart_metric(double g, double dg, double rho2, double s);

class AnnulusGrid {
public:
  AnnulusGrid() = default;
  /// n_s intervals in s (nodes i = 0..n_s), n_theta nodes in theta. The inner
  /// curve is resampled onto the theta grid when its size differs.
  AnnulusGrid(const DiscreteCurve& inner, double rho2, std::size_t n_s, std::size_t n_theta);

  std::size_t n_s() const { return n_s_; }
  std::size_t n_theta() const { return n_theta_; }
  std::size_t nodes() const { return (n_s_ + 1) * n_theta_; }
  std::size_t unknowns() const { return (n_s_ - 1) * n_theta_; }
  std::size_t index(std::size_t i, std::size_t j) const { return i * n_theta_ + j; }
  double ds() const { return 1.0 / static_cast<double>(n_s_); }
  double dtheta() const;
  double rho2() const { return rho2_; }

  double s(std::size_t i) const { return ds() * static_cast<double>(i); }
  double theta(std::size_t j) const { return dtheta() * static_cast<double>(j); }
  double rho(std::size_t i, std::size_t j) const { return rho_[index(i, j)]; }
  PolarPoint polar(std::size_t i, std::size_t j) const { return {rho(i, j), theta(j)}; }
  double inner_g(std::size_t j) const { return g_[j]; }
  double inner_dg(std::size_t j) const { return dg_[j]; }
  const DiscreteCurve& inner() const { return inner_; }

  /// Hyperbolic area of the control volume of interior node (i, j).
  double area(std::size_t i, std::size_t j) const { return area_[index(i, j)]; }
  /// Faces (i + 1/2, j) for i < n_s, stored at index(i, j).
  const FaceGeometry& s_faces() const { return sf_; }
  /// Faces (i, j + 1/2) for 0 < i < n_s, stored at index(i, j).
  const FaceGeometry& theta_faces() const { return tf_; }

  /// |grad u| at every node: central differences inside, one-sided
  /// second-order fits in rho on the two boundaries.
  std::vector<double> gradient_norm(const std::vector<double>& u) const;
  /// d u / d nu on the inner and outer boundaries, nu the unit normal
  /// pointing into the annulus. One value per theta node.
  std::vector<double> inner_normal_derivative(const std::vector<double>& u) const;
  std::vector<double> outer_normal_derivative(const std::vector<double>& u) const;

private:
  DiscreteCurve inner_;
  double rho2_ = 0.0;
  std::size_t n_s_ = 0, n_theta_ = 0;
  std::vector<double> g_, dg_, rho_, area_;
  FaceGeometry sf_, tf_;
};

/// Q(u) = div(grad u / W) at every node; boundary rows hold 0.
std::vector<double> discrete_Q(const AnnulusGrid& grid, const std::vector<double>& u);

/// Newton system in flux form over the interior nodes (row k = node
/// index(k / n_theta + 1, k % n_theta)): residual = net flux - 2h area.
struct Linearization {
  Eigen::VectorXd residual;
  Eigen::SparseMatrix<double> jacobian;
};
Linearization linearize(const AnnulusGrid& grid, const std::vector<double>& u, double h);

/// max over interior nodes of |Q(u) - 2h|.
double residual_norm(const AnnulusGrid& grid, const std::vector<double>& u, double h);

}  // namespace cmc
