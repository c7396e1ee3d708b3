#include "cmc/spline.hpp"

#include <algorithm>
#include <cmath>

#include "cmc/error.hpp"

namespace cmc {

namespace {

// Solves the cyclic tridiagonal system
//   lo[i] x[i-1] + di[i] x[i] + up[i] x[i+1] = rhs[i]   (indices mod n)
// by Sherman-Morrison on top of the Thomas algorithm.
std::vector<double> solve_cyclic(std::vector<double> lo, std::vector<double> di,
                                 std::vector<double> up, std::vector<double> rhs) {
  const std::size_t n = di.size();
  if (n == 1) return {rhs[0] / (di[0] + lo[0] + up[0])};
  if (n == 2) {
    const double a = di[0], b = lo[0] + up[0], c = lo[1] + up[1], d = di[1];
    const double det = a * d - b * c;
    return {(rhs[0] * d - b * rhs[1]) / det, (a * rhs[1] - c * rhs[0]) / det};
  }
  const double alpha = up[n - 1];  // A[n-1][0]
  const double beta = lo[0];       // A[0][n-1]
  const double gamma = -di[0];
  di[0] -= gamma;
  di[n - 1] -= alpha * beta / gamma;

  auto thomas = [&](std::vector<double> r) {
    std::vector<double> c(n), x(n);
    c[0] = up[0] / di[0];
    r[0] /= di[0];
    for (std::size_t i = 1; i < n; ++i) {
      const double m = di[i] - lo[i] * c[i - 1];
      c[i] = up[i] / m;
      r[i] = (r[i] - lo[i] * r[i - 1]) / m;
    }
    x[n - 1] = r[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) x[i] = r[i] - c[i] * x[i + 1];
    return x;
  };

  std::vector<double> x = thomas(rhs);
  std::vector<double> u(n, 0.0);
  u[0] = gamma;
  u[n - 1] = alpha;
  std::vector<double> z = thomas(u);
  const double fact = (x[0] + beta * x[n - 1] / gamma) / (1.0 + z[0] + beta * z[n - 1] / gamma);
  for (std::size_t i = 0; i < n; ++i) x[i] -= fact * z[i];
  return x;
}

}  // namespace

PeriodicCubicSpline::PeriodicCubicSpline(std::span<const double> x, std::span<const double> y,
                                         double period)
    : x_(x.begin(), x.end()), y_(y.begin(), y.end()), period_(period) {
  const std::size_t n = x_.size();
  if (n < 3 || y_.size() != n) throw DomainError("PeriodicCubicSpline: need >= 3 matching nodes");
  for (std::size_t i = 1; i < n; ++i) {
    if (!(x_[i] > x_[i - 1])) throw DomainError("PeriodicCubicSpline: nodes must increase");
  }
  if (!(x_[n - 1] - x_[0] < period)) throw DomainError("PeriodicCubicSpline: nodes span a period");

  auto width = [&](std::size_t i) {  // x_{i+1} - x_i, periodic
    return i + 1 < n ? x_[i + 1] - x_[i] : x_[0] + period_ - x_[n - 1];
  };
  std::vector<double> lo(n), di(n), up(n), rhs(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t im = (i + n - 1) % n, ip = (i + 1) % n;
    const double hm = width(im), hp = width(i);
    lo[i] = hm;
    di[i] = 2.0 * (hm + hp);
    up[i] = hp;
    rhs[i] = 6.0 * ((y_[ip] - y_[i]) / hp - (y_[i] - y_[im]) / hm);
  }
  m_ = solve_cyclic(std::move(lo), std::move(di), std::move(up), std::move(rhs));
}

PeriodicCubicSpline PeriodicCubicSpline::uniform(std::span<const double> y, double period,
                                                 double x0) {
  std::vector<double> x(y.size());
  const double h = period / static_cast<double>(y.size());
  for (std::size_t k = 0; k < y.size(); ++k) x[k] = x0 + h * static_cast<double>(k);
  return PeriodicCubicSpline(x, y, period);
}

PeriodicCubicSpline::Local PeriodicCubicSpline::locate(double t) const {
  const std::size_t n = x_.size();
  double r = std::fmod(t - x_[0], period_);
  if (r < 0.0) r += period_;
  const double tt = x_[0] + r;
  auto it = std::upper_bound(x_.begin(), x_.end(), tt);
  std::size_t i = static_cast<std::size_t>(it - x_.begin()) - 1;
  const double xr = i + 1 < n ? x_[i + 1] : x_[0] + period_;
  const double h = xr - x_[i];
  const double b = (tt - x_[i]) / h;
  return {i, h, 1.0 - b, b};
}

double PeriodicCubicSpline::operator()(double t) const {
  const auto [i, h, a, b] = locate(t);
  const std::size_t j = (i + 1) % x_.size();
  return a * y_[i] + b * y_[j] + ((a * a * a - a) * m_[i] + (b * b * b - b) * m_[j]) * h * h / 6.0;
}

double PeriodicCubicSpline::derivative(double t) const {
  const auto [i, h, a, b] = locate(t);
  const std::size_t j = (i + 1) % x_.size();
  return (y_[j] - y_[i]) / h - (3.0 * a * a - 1.0) / 6.0 * h * m_[i] +
         (3.0 * b * b - 1.0) / 6.0 * h * m_[j];
}

double PeriodicCubicSpline::second_derivative(double t) const {
  const auto [i, h, a, b] = locate(t);
  const std::size_t j = (i + 1) % x_.size();
  return a * m_[i] + b * m_[j];
}

}  // namespace cmc
