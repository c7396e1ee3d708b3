#pragma once

#include <span>
#include <vector>

namespace cmc {

/// Periodic C2 cubic spline through (x_i, y_i), x_i strictly increasing and
/// spanning less than one period. Evaluation accepts any real argument.
class PeriodicCubicSpline {
public:
  PeriodicCubicSpline() = default;
  PeriodicCubicSpline(std::span<const double> x, std::span<const double> y, double period);

  /// Uniform nodes x_k = x0 + k * period / n.
  static PeriodicCubicSpline uniform(std::span<const double> y, double period, double x0 = 0.0);

  double operator()(double t) const;
  double derivative(double t) const;
  double second_derivative(double t) const;

  std::size_t size() const { return x_.size(); }
  double period() const { return period_; }

private:
  struct Local {
    std::size_t i;
    double h, a, b;  // interval width, left and right barycentric weights
  };
  Local locate(double t) const;

  std::vector<double> x_, y_, m_;  // m_: second derivatives at nodes
  double period_ = 0.0;
};

}  // namespace cmc
