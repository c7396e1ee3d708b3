#pragma once
// Rotational graphs of constant mean curvature h in (0, 1/2) over the
// hyperbolic plane. The profile H_alpha solves
//   H'(rho) = u(rho) = (-alpha + 2h cosh rho) / sqrt(sinh^2 rho - (-alpha + 2h cosh rho)^2),
// H(rho0) = 0, on rho >= rho0 = arccosh(phi).

#include <cstddef>
#include <vector>

namespace cmc {

struct AsymptoticData {
  double k_asym = 0.0;       // lim H(rho) - c_h rho
  double slope = 0.0;        // c_h
  double decay_bound = 0.0;  // C in |H - k - c_h rho| <= C e^{-rho}
  double fitted_ratio = 0.0; // mean ratio of successive increments, ~ e^{-1}
};

struct RotationalProfile {
  double h = 0.0;
  double alpha = 0.0;
  double phi = 1.0;
  double phi_minus_one = 0.0;  // cancellation-free phi - 1
  double b = 0.0;
  double rho0 = 0.0;

  /// Asymptotic data with default options, memoized per (h, alpha).
  /// Concurrent first calls may duplicate the work; the result is identical.
  AsymptoticData asymptotics() const;
};

struct QuadratureOptions {
  double rel_tol = 1e-13;
  unsigned max_depth = 18;
};

double slope_ch(double h);

RotationalProfile make_profile(double h, double alpha);

/// Throws DomainError below rho0 and at rho0 (singular point).
double u_alpha(const RotationalProfile& p, double rho);

double height(const RotationalProfile& p, double rho, const QuadratureOptions& opt = {});

/// Inverts height on its monotone branch (rho >= rho0 for alpha <= 2h,
/// rho >= arccosh(alpha/2h) otherwise).
double height_inverse(const RotationalProfile& p, double t, const QuadratureOptions& opt = {});

struct AsymptoticOptions {
  double window_start = 12.0;
  int window_points = 5;
  double ratio_tolerance = 0.2;
};
AsymptoticData asymptotic_constant(const RotationalProfile& p, const AsymptoticOptions& opt = {});

/// -infinity exactly at alpha = 2h.
double dheight_dalpha(double h, double alpha, double rho, const QuadratureOptions& opt = {});

struct BetaBarOptions {
  double cap_factor = 4.0;   // never scan past cap_factor * 2h
  int grid_per_2h = 64;      // grid spacing 2h / grid_per_2h
  double fd_step = 1e-4;     // relative FD step on alpha
};
struct BetaBarResult {
  double value = 0.0;
  bool capped = false;       // scan reached the cap without a sign failure
  int grid_points = 0;
};
/// Memoized per (h, options).
BetaBarResult beta_bar(double h, const BetaBarOptions& opt = {});

enum class Branch { lower, upper };
double rho_of_alpha(double h, double alpha);
double rho_h_lower_limit(double h);  // lim_{alpha -> 0+} rho^h(alpha)
double alpha_for_radius(double h, double r, Branch branch);

double d_infinity(double h, double alpha, double beta);
double vertical_asymptotic_distance(double h, double alpha1, double alpha2);

double min_circle_radius(const RotationalProfile& p);
double d_beta(const RotationalProfile& p);

/// Dense cubic Hermite table of H in x = sqrt(rho - rho0), built from
/// exact values and exact derivatives. Falls back to quadrature past the
/// tabulated range.
class RotationalTable {
public:
  RotationalTable() = default;
  RotationalTable(const RotationalProfile& p, double rho_max, std::size_t intervals = 4096);

  const RotationalProfile& profile() const { return p_; }
  double rho_max() const { return rho_max_; }
  double operator()(double rho) const;
  double derivative(double rho) const;  // u, or +-inf at rho0

private:
  RotationalProfile p_;
  double rho_max_ = 0.0;
  double dx_ = 0.0;
  std::vector<double> y_, dy_;
};

}  // namespace cmc
