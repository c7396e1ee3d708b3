#include "cmc/cli.hpp"

#include <cmath>
#include <iostream>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cmc/admissibility.hpp"
#include "cmc/barriers.hpp"
#include "cmc/config.hpp"
#include "cmc/curve.hpp"
#include "cmc/end.hpp"
#include "cmc/error.hpp"
#include "cmc/flow.hpp"
#include "cmc/io.hpp"
#include "cmc/parallel.hpp"
#include "cmc/rotational.hpp"
#include "cmc/solver.hpp"

namespace cmc {

namespace {

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kUsage = 2;

struct Args {
  std::string config;
  double h = 0.25;
  std::optional<double> alpha;
  double rho_max = 14.0;
  std::size_t alpha_grid = 64;
  std::string curve;
  double t = 0.0;
  double rho2 = 6.0;
  std::optional<std::size_t> ns, ntheta;
  std::optional<double> tol;
  std::vector<double> schedule{4, 6, 8, 10};
  std::string out, report, barriers;
};

// Writes to the file when a path was given, to stdout otherwise.
void emit(const CsvWriter& csv, const std::string& path, const RunConfig& cfg, std::ostream& out) {
  if (path.empty()) {
    out << csv.str();
  } else {
    csv.save(cfg.output(path));
  }
}

void check_h(double h) {
  if (!(h > 0.0 && h < 0.5)) throw DomainError("--h must lie in (0, 1/2)");
}

int run_family(const Args& a, const RunConfig& cfg, std::ostream& out) {
  check_h(a.h);
  if (!a.alpha) throw DomainError("family: --alpha is required");
  const auto p = make_profile(a.h, *a.alpha);
  if (!(a.rho_max > p.rho0)) throw DomainError("family: --rho-max must exceed rho0");
  const auto as = p.asymptotics();
  const std::size_t n = cfg.family_points;
  std::vector<double> rho(n + 1), u(n + 1), H(n + 1);
  parallel_rows(n + 1, [&](std::size_t i) {
    const double r = i == n ? a.rho_max : p.rho0 + (a.rho_max - p.rho0) * static_cast<double>(i) / static_cast<double>(n);
    rho[i] = r;
    if (i == 0) {
      // Vertical tangent on the base circle; alpha = 2h starts flat at the origin.
      const double num = -p.alpha + 2.0 * p.h * std::cosh(p.rho0);
      u[i] = p.rho0 > 0.0 ? std::copysign(std::numeric_limits<double>::infinity(), num) : 0.0;
      H[i] = 0.0;
    } else {
      u[i] = u_alpha(p, r);
      H[i] = height(p, r, cfg.quadrature);
    }
  });
  CsvWriter csv({"rho", "u", "H", "H_minus_asymptote"});
  for (std::size_t i = 0; i <= n; ++i) csv.row({rho[i], u[i], H[i], H[i] - (as.k_asym + as.slope * rho[i])});
  emit(csv, a.out, cfg, out);
  return kOk;
}

int run_monotonicity(const Args& a, const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  check_h(a.h);
  if (a.alpha_grid < 2) throw DomainError("monotonicity: --alpha-grid must be at least 2");
  const double bb = beta_bar(a.h, cfg.admissibility.beta_bar).value;
  const std::size_t n = a.alpha_grid;
  std::vector<double> al(n), k(n), dk(n);
  parallel_rows(n, [&](std::size_t m) {
    const double x = bb * static_cast<double>(m + 1) / static_cast<double>(n);
    const double d = 1e-4 * x;
    al[m] = x;
    k[m] = make_profile(a.h, x).asymptotics().k_asym;
    dk[m] = (make_profile(a.h, x + d).asymptotics().k_asym - make_profile(a.h, x - d).asymptotics().k_asym) / (2.0 * d);
  });
  CsvWriter csv({"alpha", "k_asym", "dk_dalpha_fd"});
  bool decreasing = true;
  for (std::size_t m = 0; m < n; ++m) {
    csv.row({al[m], k[m], dk[m]});
    if (m > 0 && !(k[m] < k[m - 1])) decreasing = false;
  }
  emit(csv, a.out, cfg, out);
  if (!decreasing) {
    err << "monotonicity: k_asym is not strictly decreasing on the grid\n";
    return kCheckFailed;
  }
  return kOk;
}

int run_flow(const Args& a, const RunConfig& cfg, std::ostream& out) {
  if (a.t < 0.0) throw DomainError("flow: --t must be non-negative");
  const auto curve = load_curve(a.curve);
  const auto moved = offset_curve_detailed(curve, a.t);
  const auto k0 = curvature_samples(curve);
  CsvWriter csv({"theta", "k_before", "k_after_closed_form", "k_after_discrete"});
  for (std::size_t i = 0; i < curve.size(); ++i) {
    csv.row({curve.theta(i), k0[i], evolve_curvature(k0[i], a.t), curvature_at(moved.curve, moved.image_theta[i])});
  }
  const std::string text = curve_to_json(moved.curve);
  if (a.out.empty()) {
    out << text;
  } else {
    auto j = nlohmann::ordered_json::parse(text);
    save_json(j, cfg.output(a.out));
  }
  if (!a.report.empty()) csv.save(cfg.output(a.report));
  return kOk;
}

AdmissibilityOptions admissibility_options(const Args& a, const RunConfig& cfg) {
  auto opt = cfg.admissibility;
  if (a.alpha) opt.alpha = *a.alpha;
  return opt;
}

int run_admissible(const Args& a, const RunConfig& cfg, std::ostream& out) {
  check_h(a.h);
  const auto curve = load_curve(a.curve);
  const auto rep = check_r_admissible(curve, a.h, admissibility_options(a, cfg));
  const auto j = to_json(rep);
  if (a.report.empty()) {
    out << j.dump(2) << "\n";
  } else {
    save_json(j, cfg.output(a.report));
    out << "verdict " << (rep.verdict ? "true" : "false") << "\n";
    for (const auto& r : rep.reasons) out << "  " << r << "\n";
  }
  return rep.verdict ? kOk : kCheckFailed;
}

int run_solve(const Args& a, const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  check_h(a.h);
  const auto curve = load_curve(a.curve);
  const auto rep = check_r_admissible(curve, a.h, admissibility_options(a, cfg));
  if (!rep.verdict) {
    err << "solve: curve is not r-admissible\n";
    for (const auto& r : rep.reasons) err << "  " << r << "\n";
    return kCheckFailed;
  }
  auto sopt = cfg.solver;
  if (a.ns) sopt.n_s = *a.ns;
  if (a.ntheta) sopt.n_theta = *a.ntheta;
  if (a.tol) sopt.tol = *a.tol;
  if (sopt.n_s < 8 || sopt.n_theta < 8) throw DomainError("solve: grid sizes must be at least 8");
  if (!(sopt.tol > 0.0)) throw DomainError("solve: --tol must be positive");

  const auto problem = make_problem(curve, a.h, a.rho2, rep);
  const auto sol = solve_dirichlet(problem, sopt);
  const auto suite = barrier_suite(problem, sol, rep, cfg.barriers);
  const auto family = deformation_family(curve, a.h, rep.alpha, cfg.deformation_steps);

  const auto& G = sol.grid;
  CsvWriter csv({"s", "theta", "rho", "u", "|grad u|"});
  for (std::size_t i = 0; i <= G.n_s(); ++i) {
    for (std::size_t j = 0; j < G.n_theta(); ++j) {
      const std::size_t q = G.index(i, j);
      csv.row({G.s(i), G.theta(j), G.rho(i, j), sol.u[q], sol.grad[q]});
    }
  }
  emit(csv, a.out, cfg, out);

  bool deformation_ok = true;
  for (const auto& m : family) {
    if (!m.pass) {
      deformation_ok = false;
      err << "warning: deformation member sigma=" << format_double(m.sigma) << " fails"
          << (m.warning.empty() ? "" : ": " + m.warning) << "\n";
    }
  }
  if (!a.barriers.empty()) {
    nlohmann::ordered_json j;
    j["admissibility"] = to_json(rep);
    j["solution"] = to_json(sol);
    j["barriers"] = to_json(suite);
    j["deformation"] = to_json(family);
    j["deformation_ok"] = deformation_ok;
    j["seed"] = cfg.seed;
    save_json(j, cfg.output(a.barriers));
  }
  for (const auto& f : suite.failures) err << "barrier check failed: " << f << "\n";
  if (!sol.grad_ok) err << "gradient exceeds its ceiling\n";
  return suite.pass && sol.grad_ok && sol.accepted ? kOk : kCheckFailed;
}

int run_end(const Args& a, const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  check_h(a.h);
  const auto curve = load_curve(a.curve);
  auto opt = cfg.end_options();
  if (a.alpha) opt.admissibility.alpha = *a.alpha;
  if (a.ns) opt.solver.n_s = *a.ns;
  if (a.ntheta) opt.solver.n_theta = *a.ntheta;
  if (a.tol) opt.solver.tol = *a.tol;
  const auto rep = solve_end(curve, a.h, a.schedule, opt);
  const auto j = to_json(rep);
  if (a.out.empty()) {
    out << j.dump(2) << "\n";
  } else {
    save_json(j, cfg.output(a.out));
  }
  if (!rep.cauchy) err << "end: differences do not decrease\n";
  if (!rep.slope_ok) err << "end: outer slope off c_h by " << format_double(rep.slope_error) << "\n";
  if (!rep.cones_ok) err << "end: cone barriers fail or c spread " << format_double(rep.c_spread) << " too large\n";
  if (!rep.growth_ok) err << "end: growth of max u off c_h\n";
  return rep.pass ? kOk : kCheckFailed;
}

}  // namespace

int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Constant mean curvature graphs over the hyperbolic plane", "cmc"};
  app.set_help_flag("--help", "Print help");  // -h would shadow --h
  app.require_subcommand(1);
  app.fallthrough();
  Args a;
  app.add_option("--config", a.config, "JSON run configuration")->check(CLI::ExistingFile);

  auto* family = app.add_subcommand("family", "rotational profile H_alpha as CSV");
  family->add_option("--h", a.h)->required();
  family->add_option("--alpha", a.alpha)->required();
  family->add_option("--rho-max", a.rho_max);
  family->add_option("--out", a.out);

  auto* mono = app.add_subcommand("monotonicity", "k_asym on an alpha grid of (0, beta_bar]");
  mono->add_option("--h", a.h)->required();
  mono->add_option("--alpha-grid", a.alpha_grid);
  mono->add_option("--out", a.out);

  auto* flow = app.add_subcommand("flow", "move a curve along its normals and track curvature");
  flow->add_option("--curve", a.curve)->required()->check(CLI::ExistingFile);
  flow->add_option("--t", a.t)->required();
  flow->add_option("--out", a.out);
  flow->add_option("--report", a.report);

  auto* adm = app.add_subcommand("admissible", "r-admissibility report");
  adm->add_option("--curve", a.curve)->required()->check(CLI::ExistingFile);
  adm->add_option("--h", a.h)->required();
  adm->add_option("--alpha", a.alpha);
  adm->add_option("--report", a.report);

  auto* solve = app.add_subcommand("solve", "Dirichlet problem on an annulus");
  solve->add_option("--curve", a.curve)->required()->check(CLI::ExistingFile);
  solve->add_option("--h", a.h)->required();
  solve->add_option("--alpha", a.alpha);
  solve->add_option("--rho2", a.rho2);
  solve->add_option("--ns", a.ns);
  solve->add_option("--ntheta", a.ntheta);
  solve->add_option("--tol", a.tol);
  solve->add_option("--out", a.out);
  solve->add_option("--barriers", a.barriers);

  auto* end = app.add_subcommand("end", "solutions on growing annuli and their limit");
  end->add_option("--curve", a.curve)->required()->check(CLI::ExistingFile);
  end->add_option("--h", a.h)->required();
  end->add_option("--alpha", a.alpha);
  end->add_option("--schedule", a.schedule)->delimiter(',');
  end->add_option("--ns", a.ns);
  end->add_option("--ntheta", a.ntheta);
  end->add_option("--tol", a.tol);
  end->add_option("--out", a.out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    const RunConfig cfg = a.config.empty() ? RunConfig{} : load_config(a.config);
    if (family->parsed()) return run_family(a, cfg, out);
    if (mono->parsed()) return run_monotonicity(a, cfg, out, err);
    if (flow->parsed()) return run_flow(a, cfg, out);
    if (adm->parsed()) return run_admissible(a, cfg, out);
    if (solve->parsed()) return run_solve(a, cfg, out, err);
    if (end->parsed()) return run_end(a, cfg, out, err);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "failed: " << e.what() << "\n";
    return kCheckFailed;
  }
  return kUsage;
}

int dispatch(int argc, const char* const* argv) { return dispatch(argc, argv, std::cout, std::cerr); }

}  // namespace cmc
