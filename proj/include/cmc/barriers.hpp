#pragma once
// A posteriori checks of the C^0 and boundary gradient barriers on a computed
// annulus solution.

#include <string>
#include <vector>

#include "cmc/admissibility.hpp"
#include "cmc/solver.hpp"

namespace cmc {

struct BarrierOptions {
  double slack = 1e-6;          // eps-hat, applied to every one-sided comparison
  double cone_excess = 1e-3;    // outer cone slope c_h (1 + cone_excess)
  std::size_t eps_scan = 400;   // candidate epsilons for w+
  std::size_t x_scan = 64;      // x samples in [0, eps] per candidate
  std::size_t distance_factor = 16;
  BarrierTangencyOptions tangency;
};

struct SandwichCheck {
  double upper_margin = 0.0;  // min over nodes of H_alpha - u
  double lower_margin = 0.0;  // min over nodes of u - H_beta
  bool pass = false;
};

/// w+ = psi(d), psi(x) = A (e^eps - x - e^(eps - x)), d the distance to the
/// inner curve.
struct WPlusCheck {
  double c = 0.0;        // max geodesic curvature of the inner curve
  double epsilon = 0.0;
  double A = 0.0;
  double M = 0.0;        // max H_alpha on {d = eps}
  double psi_at_eps = 0.0;
  double max_operator = 0.0;  // max over [0, eps] of c psi' (1 + psi'^2) + psi''
  double slope_bound = 0.0;   // psi'(0)
  double max_inner_normal = 0.0;
  double margin = 0.0;        // min of w+ - u over nodes with d <= eps
  std::size_t nodes_checked = 0;
  bool feasible = false;
  bool pass = false;
};

struct TangencyCheck {
  std::size_t nodes = 0;
  std::size_t passed = 0;
  double grid_margin = 0.0;        // min over z of verify_barrier_tangency margins
  double asymptotic_margin = 0.0;
  double inside_margin = 0.0;
  double solution_margin = 0.0;    // min over z and grid nodes of u - tau_z H_beta
  double min_inner_normal = 0.0;
  bool pass = false;
};

struct OuterCheck {
  double top = 0.0;            // H_alpha(rho2)
  double slice_margin = 0.0;   // top - max u
  double rho0 = 0.0;           // cone through (rho0, H_beta(rho0)) and (rho2, top)
  double c = 0.0;
  double k = 0.0;
  double equation_error = 0.0; // max residual of the two defining equations
  double mean_curvature_excess = 0.0;  // min over the sub-annulus of discrete Q(cone) - 2h
  double cone_margin = 0.0;    // min over the sub-annulus of u - cone
  double outer_slope_min = 0.0;  // range of u_rho on the outer circle
  double outer_slope_max = 0.0;
  bool pass = false;
};

struct BarrierSuite {
  SandwichCheck sandwich;
  WPlusCheck w_plus;
  TangencyCheck tangency;
  OuterCheck outer;
  std::vector<std::string> failures;
  bool pass = false;
};

BarrierSuite barrier_suite(const AnnulusProblem& problem, const GraphSolution& solution,
                           const AdmissibilityReport& report, const BarrierOptions& opt = {});

/// psi_{eps, A} and its first two derivatives.
double psi(double eps, double A, double x);
double psi_prime(double eps, double A, double x);
double psi_second(double eps, double A, double x);

}  // namespace cmc
