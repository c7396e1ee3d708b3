#pragma once
// Exterior end as a limit of annulus solutions u_n on A(gamma, rho_n).

#include <vector>

#include "cmc/admissibility.hpp"
#include "cmc/solver.hpp"

namespace cmc {

struct EndOptions {
  SolverOptions solver;
  AdmissibilityOptions admissibility;
  double compare_margin = 0.5;   // differences on rho <= rho_1 - margin
  double slope_lo = 8.0;         // radial slope window of the last solution
  double slope_hi = 10.0;
  double eps_fraction = 0.1;     // eps = fraction (k_alpha - k_beta) / c_h
  double slack = 1e-6;
  double slope_tolerance = 0.05;
  double spread_tolerance = 0.01;
};

struct EndStage {
  double rho = 0.0;
  double residual = 0.0;
  int newton = 0;
  double max_u = 0.0;
  double t_n = 0.0;      // H_alpha(rho_n)
  double t_eps = 0.0;    // H_beta(rho_n - eps)
  double c = 0.0;        // c_{n,eps} = (t_n - t_eps) / eps
  double k = 0.0;        // k_{n,eps} = t_n - c rho_n
  double cone_curvature = 0.0;  // c / sqrt(1 + c^2), must be >= 2h
  double cone_margin = 0.0;     // min of u_n - f_{n,eps} on rho >= rho_n - eps
  bool cone_ok = false;
};

struct EndReport {
  double h = 0.0, alpha = 0.0, beta = 0.0;
  double k_alpha = 0.0, k_beta = 0.0;
  double epsilon = 0.0, epsilon_bound = 0.0;
  double compare_radius = 0.0;
  std::vector<EndStage> stages;
  std::vector<double> differences;   // sup |u_n - u_{n+1}| on rho <= compare_radius
  bool cauchy = false;               // strictly decreasing
  double slope = 0.0;                // mean (u(hi) - u(lo)) / (hi - lo) of the last solution
  double slope_error = 0.0;          // slope / c_h - 1
  bool slope_ok = false;
  double c_spread = 0.0;             // (max c - min c) / max c
  bool cones_ok = false;             // every stage cone_ok and spread within tolerance
  std::vector<double> growth;        // (max u_{n+1} - max u_n) / (rho_{n+1} - rho_n)
  bool growth_ok = false;
  bool pass = false;
  GraphSolution last;
};

/// Throws DomainError for a schedule that is not strictly increasing or
/// starts inside the curve.
EndReport solve_end(const DiscreteCurve& curve, double h, const std::vector<double>& schedule,
                    const EndOptions& opt = {});

}  // namespace cmc
