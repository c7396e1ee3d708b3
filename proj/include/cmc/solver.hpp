#pragma once
// Dirichlet problem Q(u) = 2h on annuli with a star-shaped inner curve and a
// circular outer boundary, solved by damped Newton and continuation in the
// inner curve g^sigma = sigma rho^h(alpha) + (1 - sigma) g.

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "cmc/admissibility.hpp"
#include "cmc/annulus.hpp"
#include "cmc/curve.hpp"

namespace cmc {

/// Boundary values as a function of theta.
using BoundaryData = std::function<double(double)>;

struct AnnulusProblem {
  double h = 0.25;
  DiscreteCurve inner;
  double outer_radius = 6.0;
  BoundaryData inner_data;  // empty: u = 0
  BoundaryData outer_data;  // empty: u = H_alpha(outer_radius)
  double alpha = 0.0;
  double beta = 0.0;
};

/// Builds the problem from an admissibility report of `inner`.
AnnulusProblem make_problem(const DiscreteCurve& inner, double h, double outer_radius,
                            const AdmissibilityReport& report);

struct SolverOptions {
  std::size_t n_s = 64;
  std::size_t n_theta = 128;
  double tol = 1e-8;
  double damping_floor = 1.0 / 1024.0;
  int max_newton = 40;
  int min_newton = 1;            // steps taken even when the start already meets tol
  double sigma_step = 0.25;      // first continuation step
  double sigma_step_min = 1e-3;
  double sigma_step_max = 0.5;
  double grad_ceiling_factor = 10.0;
  bool continuation = true;      // false: Newton on the target curve from the sigma = 1 field
};

struct ContinuationStep {
  double sigma = 0.0;
  int newton_iterations = 0;
  double residual = 0.0;
  bool accepted = false;
};

struct GraphSolution {
  AnnulusGrid grid;
  std::vector<double> u;
  double residual_norm = 0.0;
  std::vector<double> grad;       // |grad u| per node
  double grad_max = 0.0;          // over interior nodes
  double boundary_slope = 0.0;    // max |d u / d nu| over both boundaries
  double grad_ceiling = 0.0;
  bool grad_ok = false;
  std::vector<double> inner_normal;  // d u / d nu, nu into the annulus
  std::vector<double> outer_normal;
  std::vector<ContinuationStep> path;
  std::vector<double> newton_steps;  // max |delta| per iteration at sigma = 0
  double newton_constant = 0.0;      // |d_{k+1}| / |d_k|^2 for the last pair
  int total_newton = 0;
  bool accepted = false;
};

/// Throws ConvergenceError naming the last accepted sigma when the step
/// falls below sigma_step_min.
GraphSolution solve_dirichlet(const AnnulusProblem& problem, const SolverOptions& opt = {});

/// u = H_alpha at every node of the grid.
std::vector<double> rotational_field(const AnnulusGrid& grid, double h, double alpha);

/// Value of a node field at (rho, theta_j): cubic through the four nearest
/// nodes of ray j.
double sample_ray(const AnnulusGrid& grid, const std::vector<double>& u, std::size_t j, double rho);

struct DeformationMember {
  double sigma = 0.0;
  DiscreteCurve curve;
  AdmissibilityReport report;
  bool horosphere_convex = false;
  bool pass = false;
  std::string warning;
};

/// n_steps + 1 curves from sigma = 1 (the base circle of H_alpha) to sigma = 0
/// (the input), each re-checked for admissibility and horosphere convexity.
std::vector<DeformationMember> deformation_family(const DiscreteCurve& curve, double h, double alpha,
                                                  std::size_t n_steps);

}  // namespace cmc
