#pragma once
// CSV and JSON emission. Floats are written with 17 significant digits so
// that output files round-trip and compare byte for byte across runs.

#include <filesystem>
#include <initializer_list>
#include <string>
#include <vector>

#include <json.hpp>

#include "cmc/admissibility.hpp"
#include "cmc/barriers.hpp"
#include "cmc/end.hpp"
#include "cmc/solver.hpp"

namespace cmc {

std::string format_double(double v);

class CsvWriter {
public:
  explicit CsvWriter(std::vector<std::string> columns);
  void row(std::initializer_list<double> values);
  void row(const std::vector<double>& values);
  const std::string& str() const { return buf_; }
  void save(const std::filesystem::path& path) const;

private:
  std::size_t width_;
  std::string buf_;
};

nlohmann::ordered_json to_json(const AdmissibilityReport& r);
nlohmann::ordered_json to_json(const GraphSolution& s);
nlohmann::ordered_json to_json(const BarrierSuite& b);
nlohmann::ordered_json to_json(const EndReport& e);
nlohmann::ordered_json to_json(const std::vector<DeformationMember>& family);

/// Two-space indented JSON with a trailing newline.
void save_json(const nlohmann::ordered_json& j, const std::filesystem::path& path);

}  // namespace cmc
