#include "cmc/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "cmc/error.hpp"

namespace cmc {

using nlohmann::ordered_json;

namespace {

void write_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write " + path.string());
  out << text;
}

// JSON has no infinities; they become strings so the report stays valid.
ordered_json num(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

ordered_json array(const std::vector<double>& v) {
  ordered_json a = ordered_json::array();
  for (double x : v) a.push_back(num(x));
  return a;
}

}  // namespace

std::string format_double(double v) {
  char b[40];
  std::snprintf(b, sizeof b, "%.17g", v);
  return b;
}

CsvWriter::CsvWriter(std::vector<std::string> columns) : width_(columns.size()) {
  for (std::size_t k = 0; k < columns.size(); ++k) {
    if (k) buf_ += ',';
    buf_ += columns[k];
  }
  buf_ += '\n';
}

void CsvWriter::row(std::initializer_list<double> values) { row(std::vector<double>(values)); }

void CsvWriter::row(const std::vector<double>& values) {
  if (values.size() != width_) throw DomainError("CsvWriter: row width does not match the header");
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (k) buf_ += ',';
    buf_ += format_double(values[k]);
  }
  buf_ += '\n';
}

void CsvWriter::save(const std::filesystem::path& path) const { write_file(path, buf_); }

ordered_json to_json(const AdmissibilityReport& r) {
  ordered_json j;
  j["h"] = r.h;
  j["r"] = r.r;
  j["r_reduced"] = r.r_reduced;
  j["r_effective"] = r.r_effective;
  j["alpha"] = r.alpha;
  j["beta"] = r.beta;
  j["beta_bar"] = r.beta_bar;
  j["beta_bar_capped"] = r.beta_bar_capped;
  j["xi"] = r.xi;
  j["half_d_beta"] = r.half_d_beta;
  j["d_infinity"] = r.d_infinity;
  j["annulus_inner"] = r.annulus_inner;
  j["annulus_outer"] = r.annulus_outer;
  j["horosphere_convex"] = r.horosphere_convex;
  j["min_k"] = r.min_k;
  j["max_k"] = r.max_k;
  j["interior_sphere"] = r.interior_sphere;
  j["contained"] = r.contained;
  j["verdict"] = r.verdict;
  j["margins"] = {{"inner", r.margins.inner},
                  {"outer", r.margins.outer},
                  {"interior_sphere", r.margins.interior_sphere},
                  {"base_circle", r.margins.base_circle}};
  j["reasons"] = r.reasons;
  return j;
}

ordered_json to_json(const GraphSolution& s) {
  ordered_json j;
  j["n_s"] = s.grid.n_s();
  j["n_theta"] = s.grid.n_theta();
  j["rho2"] = s.grid.rho2();
  j["accepted"] = s.accepted;
  j["residual_norm"] = s.residual_norm;
  j["grad_max"] = s.grad_max;
  j["boundary_slope"] = s.boundary_slope;
  j["grad_ceiling"] = s.grad_ceiling;
  j["grad_ok"] = s.grad_ok;
  j["total_newton"] = s.total_newton;
  j["newton_steps"] = array(s.newton_steps);
  j["newton_constant"] = s.newton_constant;
  ordered_json path = ordered_json::array();
  for (const auto& p : s.path) {
    path.push_back({{"sigma", p.sigma},
                    {"newton_iterations", p.newton_iterations},
                    {"residual", num(p.residual)},
                    {"accepted", p.accepted}});
  }
  j["continuation"] = path;
  j["inner_normal_derivative"] = array(s.inner_normal);
  j["outer_normal_derivative"] = array(s.outer_normal);
  return j;
}

ordered_json to_json(const BarrierSuite& b) {
  ordered_json j;
  j["pass"] = b.pass;
  j["failures"] = b.failures;
  j["sandwich"] = {{"pass", b.sandwich.pass},
                   {"upper_margin", num(b.sandwich.upper_margin)},
                   {"lower_margin", num(b.sandwich.lower_margin)}};
  const auto& w = b.w_plus;
  j["w_plus"] = {{"pass", w.pass},
                 {"feasible", w.feasible},
                 {"c", w.c},
                 {"epsilon", w.epsilon},
                 {"A", w.A},
                 {"M", w.M},
                 {"psi_at_epsilon", w.psi_at_eps},
                 {"max_operator", w.max_operator},
                 {"slope_bound", w.slope_bound},
                 {"max_inner_normal", w.max_inner_normal},
                 {"margin", num(w.margin)},
                 {"nodes_checked", w.nodes_checked}};
  const auto& t = b.tangency;
  j["tangency"] = {{"pass", t.pass},
                   {"nodes", t.nodes},
                   {"passed", t.passed},
                   {"grid_margin", num(t.grid_margin)},
                   {"asymptotic_margin", num(t.asymptotic_margin)},
                   {"inside_margin", num(t.inside_margin)},
                   {"solution_margin", num(t.solution_margin)},
                   {"min_inner_normal", t.min_inner_normal}};
  const auto& o = b.outer;
  j["outer"] = {{"pass", o.pass},
                {"slice_height", o.top},
                {"slice_margin", o.slice_margin},
                {"cone_rho0", o.rho0},
                {"cone_c", o.c},
                {"cone_k", o.k},
                {"cone_equation_error", o.equation_error},
                {"cone_mean_curvature_excess", num(o.mean_curvature_excess)},
                {"cone_margin", num(o.cone_margin)},
                {"outer_slope_min", o.outer_slope_min},
                {"outer_slope_max", o.outer_slope_max}};
  return j;
}

ordered_json to_json(const EndReport& e) {
  ordered_json j;
  j["pass"] = e.pass;
  j["h"] = e.h;
  j["alpha"] = e.alpha;
  j["beta"] = e.beta;
  j["k_alpha"] = e.k_alpha;
  j["k_beta"] = e.k_beta;
  j["compare_radius"] = e.compare_radius;
  j["differences"] = array(e.differences);
  j["cauchy"] = e.cauchy;
  j["slope"] = e.slope;
  j["slope_error"] = e.slope_error;
  j["slope_ok"] = e.slope_ok;
  j["growth"] = array(e.growth);
  j["growth_ok"] = e.growth_ok;
  j["epsilon"] = e.epsilon;
  j["epsilon_bound"] = e.epsilon_bound;
  j["c_spread"] = num(e.c_spread);
  j["cones_ok"] = e.cones_ok;
  ordered_json st = ordered_json::array();
  for (const auto& s : e.stages) {
    st.push_back({{"rho_n", s.rho},
                  {"residual", s.residual},
                  {"newton", s.newton},
                  {"max_u", s.max_u},
                  {"t_n", s.t_n},
                  {"t_eps", s.t_eps},
                  {"c", s.c},
                  {"k", s.k},
                  {"cone_curvature", s.cone_curvature},
                  {"cone_margin", num(s.cone_margin)},
                  {"cone_ok", s.cone_ok}});
  }
  j["stages"] = st;
  return j;
}

ordered_json to_json(const std::vector<DeformationMember>& family) {
  ordered_json a = ordered_json::array();
  for (const auto& m : family) {
    a.push_back({{"sigma", m.sigma},
                 {"pass", m.pass},
                 {"horosphere_convex", m.horosphere_convex},
                 {"verdict", m.report.verdict},
                 {"xi", m.report.xi},
                 {"warning", m.warning}});
  }
  return a;
}

void save_json(const ordered_json& j, const std::filesystem::path& path) { write_file(path, j.dump(2) + "\n"); }

}  // namespace cmc
