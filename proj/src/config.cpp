#include "cmc/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "cmc/error.hpp"

namespace cmc {

namespace {

using nlohmann::json;

void check_keys(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) throw ParseError("config: " + where + " must be an object");
  for (const auto& [k, v] : j.items()) {
    (void)v;
    if (!allowed.count(k)) throw ParseError("config: unknown key '" + k + "' in " + where);
  }
}

template <class T>
void get(const json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

}  // namespace

EndOptions RunConfig::end_options() const {
  EndOptions e = end;
  e.solver = solver;
  e.admissibility = admissibility;
  e.slack = barriers.slack;
  return e;
}

std::filesystem::path RunConfig::output(const std::filesystem::path& p) const {
  if (output_dir.empty() || p.is_absolute()) return p;
  return output_dir / p;
}

void validate(const RunConfig& c) {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0)) throw DomainError(std::string("config: ") + name + " must be positive");
  };
  positive(c.quadrature.rel_tol, "quadrature.rel_tol");
  positive(c.solver.tol, "solver.tol");
  positive(c.solver.damping_floor, "solver.damping_floor");
  positive(c.solver.sigma_step, "solver.sigma_step");
  positive(c.solver.sigma_step_min, "solver.sigma_step_min");
  positive(c.solver.sigma_step_max, "solver.sigma_step_max");
  positive(c.solver.grad_ceiling_factor, "solver.grad_ceiling_factor");
  positive(c.barriers.slack, "barriers.slack");
  positive(c.barriers.cone_excess, "barriers.cone_excess");
  positive(c.end.compare_margin, "end.compare_margin");
  positive(c.end.eps_fraction, "end.eps_fraction");
  if (c.end.eps_fraction > 1.0) throw DomainError("config: end.eps_fraction must not exceed 1");
  if (c.solver.n_s < 8 || c.solver.n_theta < 8) throw DomainError("config: grid sizes must be at least 8");
  if (c.solver.max_newton < 1) throw DomainError("config: solver.max_newton must be at least 1");
  if (c.family_points < 8) throw DomainError("config: family_points must be at least 8");
}

RunConfig parse_config(std::string_view text) {
  json j;
  try {
    j = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    std::ostringstream s;
    s << "config: malformed JSON near byte " << e.byte << ": " << e.what();
    throw ParseError(s.str());
  }
  RunConfig c;
  try {
    check_keys(j, {"quadrature", "solver", "barriers", "admissibility", "end", "family_points",
                   "deformation_steps", "output_dir", "seed"},
               "top level");
    if (j.contains("quadrature")) {
      const auto& q = j.at("quadrature");
      check_keys(q, {"rel_tol"}, "quadrature");
      get(q, "rel_tol", c.quadrature.rel_tol);
    }
    if (j.contains("solver")) {
      const auto& s = j.at("solver");
      check_keys(s, {"n_s", "n_theta", "tol", "damping_floor", "max_newton", "min_newton", "sigma_step",
                     "sigma_step_min", "sigma_step_max", "grad_ceiling_factor"},
                 "solver");
      get(s, "n_s", c.solver.n_s);
      get(s, "n_theta", c.solver.n_theta);
      get(s, "tol", c.solver.tol);
      get(s, "damping_floor", c.solver.damping_floor);
      get(s, "max_newton", c.solver.max_newton);
      get(s, "min_newton", c.solver.min_newton);
      get(s, "sigma_step", c.solver.sigma_step);
      get(s, "sigma_step_min", c.solver.sigma_step_min);
      get(s, "sigma_step_max", c.solver.sigma_step_max);
      get(s, "grad_ceiling_factor", c.solver.grad_ceiling_factor);
    }
    if (j.contains("barriers")) {
      const auto& b = j.at("barriers");
      check_keys(b, {"slack", "cone_excess", "eps_scan", "x_scan", "distance_factor", "tangency_rho_max"},
                 "barriers");
      get(b, "slack", c.barriers.slack);
      get(b, "cone_excess", c.barriers.cone_excess);
      get(b, "eps_scan", c.barriers.eps_scan);
      get(b, "x_scan", c.barriers.x_scan);
      get(b, "distance_factor", c.barriers.distance_factor);
      get(b, "tangency_rho_max", c.barriers.tangency.rho_max);
    }
    if (j.contains("admissibility")) {
      const auto& a = j.at("admissibility");
      check_keys(a, {"alpha_fraction", "certify_factor", "beta_bar_cap_factor", "beta_bar_grid"},
                 "admissibility");
      get(a, "alpha_fraction", c.admissibility.alpha_fraction);
      get(a, "certify_factor", c.admissibility.certify_factor);
      get(a, "beta_bar_cap_factor", c.admissibility.beta_bar.cap_factor);
      get(a, "beta_bar_grid", c.admissibility.beta_bar.grid_per_2h);
    }
    if (j.contains("end")) {
      const auto& e = j.at("end");
      check_keys(e, {"compare_margin", "slope_lo", "slope_hi", "eps_fraction", "slope_tolerance",
                     "spread_tolerance"},
                 "end");
      get(e, "compare_margin", c.end.compare_margin);
      get(e, "slope_lo", c.end.slope_lo);
      get(e, "slope_hi", c.end.slope_hi);
      get(e, "eps_fraction", c.end.eps_fraction);
      get(e, "slope_tolerance", c.end.slope_tolerance);
      get(e, "spread_tolerance", c.end.spread_tolerance);
    }
    get(j, "family_points", c.family_points);
    get(j, "deformation_steps", c.deformation_steps);
    if (j.contains("output_dir")) c.output_dir = j.at("output_dir").get<std::string>();
    get(j, "seed", c.seed);
  } catch (const json::exception& e) {
    throw ParseError(std::string("config: ") + e.what());
  }
  try {
    validate(c);
  } catch (const DomainError& e) {
    throw ParseError(e.what());
  }
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("config: cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace cmc
