#include <doctest.h>

#include <cmath>
#include <limits>
#include <string>

#include "cmc/config.hpp"
#include "cmc/error.hpp"
#include "cmc/io.hpp"

using namespace cmc;

TEST_CASE("config defaults and overrides") {
  const auto d = parse_config("{}");
  CHECK(d.solver.n_s == 64);
  CHECK(d.solver.tol == 1e-8);
  CHECK(d.family_points == 400);
  CHECK(d.seed == 0);

  const auto c = parse_config(R"({
    "solver": {"n_s": 32, "tol": 1e-10},
    "barriers": {"slack": 1e-7},
    "end": {"eps_fraction": 0.05},
    "admissibility": {"alpha_fraction": 0.8},
    "output_dir": "out",
    "seed": 7
  })");
  CHECK(c.solver.n_s == 32);
  CHECK(c.solver.n_theta == 128);
  CHECK(c.solver.tol == 1e-10);
  CHECK(c.admissibility.alpha_fraction == 0.8);
  CHECK(c.seed == 7);
  const auto e = c.end_options();
  CHECK(e.solver.n_s == 32);
  CHECK(e.slack == 1e-7);
  CHECK(e.eps_fraction == 0.05);
  CHECK(e.admissibility.alpha_fraction == 0.8);
  CHECK(c.output("a.csv") == std::filesystem::path("out") / "a.csv");
  CHECK(c.output("/tmp/a.csv") == std::filesystem::path("/tmp/a.csv"));
}

TEST_CASE("config rejects bad input") {
  CHECK_THROWS_AS(parse_config(R"({"solver": {"nS": 3}})"), ParseError);
  CHECK_THROWS_AS(parse_config(R"({"colour": 1})"), ParseError);
  CHECK_THROWS_AS(parse_config(R"({"solver": {"tol": 0}})"), ParseError);
  CHECK_THROWS_AS(parse_config(R"({"solver": {"n_theta": 4}})"), ParseError);
  CHECK_THROWS_AS(parse_config(R"({"solver": {"tol": "small"}})"), ParseError);
  CHECK_THROWS_AS(parse_config(R"({"end": {"eps_fraction": 2}})"), ParseError);
  try {
    parse_config("{\n  \"seed\": 1,\n  \"solver\": [\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("line 4") != std::string::npos);
  }
}

TEST_CASE("csv formatting round-trips") {
  for (double v : {0.1, 1.0 / 3.0, 6.02214076e23, -2.5e-300}) CHECK(std::stod(format_double(v)) == v);
  CHECK(format_double(std::numeric_limits<double>::infinity()) == "inf");
  CsvWriter w({"a", "b"});
  w.row({1.0, 0.1});
  CHECK(w.str() == "a,b\n1,0.10000000000000001\n");
  CHECK_THROWS_AS(w.row({1.0}), DomainError);
}

TEST_CASE("json reports stay valid with infinities") {
  BarrierSuite b;
  b.sandwich.upper_margin = std::numeric_limits<double>::infinity();
  const auto j = to_json(b);
  CHECK(j["sandwich"]["upper_margin"] == "inf");
  CHECK(nlohmann::json::parse(j.dump()).is_object());
}
