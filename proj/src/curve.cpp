#include "cmc/curve.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cmc/error.hpp"

namespace cmc {

using nlohmann::json;

DiscreteCurve::DiscreteCurve(std::vector<double> g) : g_(std::move(g)) {
  if (g_.size() < 8) throw DomainError("DiscreteCurve: at least 8 samples required");
  for (double v : g_) {
    if (!std::isfinite(v) || !(v > 0.0)) {
      throw DomainError("DiscreteCurve: samples must be finite and positive");
    }
  }
}

DiscreteCurve DiscreteCurve::circle(double radius, std::size_t n) {
  return DiscreteCurve(std::vector<double>(n, radius));
}

DiscreteCurve DiscreteCurve::fourier(double a0, const std::vector<double>& a,
                                     const std::vector<double>& b, std::size_t n) {
  return sample(
      [&](double t) {
        double v = a0;
        for (std::size_t k = 0; k < a.size(); ++k) v += a[k] * std::cos(static_cast<double>(k + 1) * t);
        for (std::size_t k = 0; k < b.size(); ++k) v += b[k] * std::sin(static_cast<double>(k + 1) * t);
        return v;
      },
      n);
}

double DiscreteCurve::dg(std::size_t k) const {
  const std::size_t n = g_.size();
  const double gm2 = g_[(k + n - 2) % n], gm1 = g_[(k + n - 1) % n];
  const double gp1 = g_[(k + 1) % n], gp2 = g_[(k + 2) % n];
  return (gm2 - 8.0 * gm1 + 8.0 * gp1 - gp2) / (12.0 * dtheta());
}

double DiscreteCurve::d2g(std::size_t k) const {
  const std::size_t n = g_.size();
  const double gm2 = g_[(k + n - 2) % n], gm1 = g_[(k + n - 1) % n];
  const double gp1 = g_[(k + 1) % n], gp2 = g_[(k + 2) % n];
  const double h = dtheta();
  return (-gm2 + 16.0 * gm1 - 30.0 * g_[k] + 16.0 * gp1 - gp2) / (12.0 * h * h);
}

double DiscreteCurve::min_g() const { return *std::min_element(g_.begin(), g_.end()); }
double DiscreteCurve::max_g() const { return *std::max_element(g_.begin(), g_.end()); }

PeriodicCubicSpline DiscreteCurve::interpolant() const {
  return PeriodicCubicSpline::uniform(g_, kTwoPi);
}

DiscreteCurve DiscreteCurve::rotated(std::ptrdiff_t m) const {
  const auto n = static_cast<std::ptrdiff_t>(g_.size());
  std::vector<double> out(g_.size());
  for (std::ptrdiff_t k = 0; k < n; ++k) out[static_cast<std::size_t>(((k + m) % n + n) % n)] = g_[static_cast<std::size_t>(k)];
  return DiscreteCurve(std::move(out));
}

double radial_graph_curvature(double g, double dg, double d2g) {
  const double s = std::sinh(g), c = std::cosh(g);
  const double v = std::sqrt(dg * dg + s * s);
  return (2.0 * c * dg * dg - s * d2g + c * s * s) / (v * v * v);
}

double discrete_curvature(const DiscreteCurve& curve, std::size_t i) {
  if (i >= curve.size()) throw DomainError("discrete_curvature: node index out of range");
  return radial_graph_curvature(curve.g(i), curve.dg(i), curve.d2g(i));
}

std::vector<double> curvature_samples(const DiscreteCurve& curve) {
  std::vector<double> k(curve.size());
  for (std::size_t i = 0; i < curve.size(); ++i) k[i] = discrete_curvature(curve, i);
  return k;
}

double outward_normal_angle(const DiscreteCurve& curve, std::size_t k) {
  // Unit normal in the orthonormal frame (e_rho, e_theta / sinh g) is
  // (sinh g, -g') / v; the disk model is conformal so the angle carries over.
  return curve.theta(k) + std::atan2(-curve.dg(k), std::sinh(curve.g(k)));
}

namespace {

std::vector<double> read_array(const json& j, const char* key) {
  if (!j.contains(key)) return {};
  if (!j.at(key).is_array()) throw ParseError(std::string("curve: \"") + key + "\" must be an array");
  return j.at(key).get<std::vector<double>>();
}

}  // namespace

DiscreteCurve parse_curve_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const auto upto = std::min<std::size_t>(e.byte, text.size());
    const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(upto), '\n');
    throw ParseError("curve: malformed JSON at line " + std::to_string(line) + ": " + e.what());
  }
  try {
    if (j.contains("g")) {
      auto g = read_array(j, "g");
      if (j.contains("n") && j.at("n").get<std::size_t>() != g.size()) {
        throw ParseError("curve: \"n\" does not match the length of \"g\"");
      }
      return DiscreteCurve(std::move(g));
    }
    if (j.contains("fourier")) {
      const json& f = j.at("fourier");
      const std::size_t n = j.value("n", std::size_t{128});
      return DiscreteCurve::fourier(f.at("a0").get<double>(), read_array(f, "a"), read_array(f, "b"), n);
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("curve: ") + e.what());
  } catch (const DomainError& e) {
    throw ParseError(std::string("curve: ") + e.what());
  }
  throw ParseError("curve: expected a \"g\" array or a \"fourier\" object");
}

DiscreteCurve load_curve(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("curve: cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_curve_json(ss.str());
}

std::string curve_to_json(const DiscreteCurve& curve) {
  json j;
  j["n"] = curve.size();
  j["g"] = curve.samples();
  return j.dump(2) + "\n";
}

}  // namespace cmc
