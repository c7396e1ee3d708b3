#pragma once
// Run configuration shared by the command-line tool: tolerances, grid
// defaults and output location, loadable from JSON.

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "cmc/barriers.hpp"
#include "cmc/end.hpp"
#include "cmc/rotational.hpp"

namespace cmc {

struct RunConfig {
  QuadratureOptions quadrature;
  SolverOptions solver;
  BarrierOptions barriers;
  AdmissibilityOptions admissibility;  // alpha / radius overrides stay unset here
  EndOptions end;                      // solver and admissibility copied in by end_options()
  std::size_t family_points = 400;
  std::size_t deformation_steps = 8;
  std::filesystem::path output_dir;    // prefix for relative output paths; empty = cwd
  std::uint64_t seed = 0;              // recorded in reports; sampling is deterministic

  EndOptions end_options() const;
  std::filesystem::path output(const std::filesystem::path& p) const;
};

/// Unknown keys, non-positive tolerances and grids below 8 throw ParseError.
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::filesystem::path& path);
/// Throws DomainError naming the offending field.
void validate(const RunConfig& cfg);

}  // namespace cmc
