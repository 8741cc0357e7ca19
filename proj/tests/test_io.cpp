#include "doctest.h"
#include "infext/io.hpp"

#include <sstream>

using namespace infext;

namespace {

std::string error_of(const std::string& text) {
  try {
    parse_tower(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("tower files") {
  const std::string text = R"({"p": 2, "steps": [
    {"kind": "unramified", "f_factor": 2},
    {"kind": "eisenstein", "degree": 2, "poly": [["-2", 0], ["1", 2]]}]})";
  Tower t = parse_tower(text);
  CHECK(t.depth() == 3);
  CHECK(t.level(3).e == 2);
  CHECK(t.level(3).f == 2);
  Tower u = parse_tower(tower_to_json(t));
  CHECK(tower_to_json(u) == tower_to_json(t));
  CHECK(tower_hash(u) == tower_hash(t));
  CHECK(tower_hash(t).size() == 16);
  CHECK(tower_hash(t) != tower_hash(build_unramified_tower(2, {1, 2})));

  // A missing leading term means monic.
  Tower m = parse_tower(R"({"p": 3, "steps": [{"kind": "eisenstein", "degree": 2, "poly": [["3", 0]]}]})");
  CHECK(m.level(2).e == 2);

  Tower pre = parse_tower(R"({"p": 2, "preset": "unramified", "f": [1, 2, 6, 24]})");
  CHECK(pre.level(4).m == 24);
  CHECK(tower_hash(pre) == tower_hash(build_unramified_tower(2, {1, 2, 6, 24})));
  Tower cyc = parse_tower(R"({"p": 3, "preset": "cyclotomic", "depth": 2})");
  CHECK(cyc.level(2).e == cyclotomic_invariants(3, 2).e);
}

TEST_CASE("tower file errors name the place") {
  CHECK(error_of("{\"p\": 2,\n  \"steps\": [}").find("line 2") != std::string::npos);
  CHECK(error_of(R"({"p": 4, "steps": []})").find("/p") != std::string::npos);
  CHECK(error_of(R"({"p": 2, "steps": [{"kind": "cubic"}]})").find("/steps/0/kind") != std::string::npos);
  CHECK(error_of(R"({"p": 2, "steps": [{"kind": "eisenstein", "poly": [["x", 0], ["1", 2]]}]})")
            .find("/steps/0/poly/0") != std::string::npos);
  CHECK(error_of(R"({"p": 2, "steps": [{"kind": "unramified"}]})").find("/steps/0/f_factor") != std::string::npos);
  // 1 - 2x is not Eisenstein.
  CHECK_FALSE(error_of(R"({"p": 2, "steps": [{"kind": "eisenstein", "poly": [["1", 0], ["-2", 1], ["1", 2]]}]})").empty());
  CHECK(error_of(R"({"p": 2, "preset": "dyadic"})").find("/preset") != std::string::npos);
  CHECK_THROWS_AS(load_tower("/nonexistent/tower.json"), ConfigError);
  CHECK_THROWS_AS(parse_format("xml"), ConfigError);
}

TEST_CASE("function tables round trip") {
  auto F = TowerField::realize(build_unramified_tower(3, {1, 2}));
  auto S = CylinderSpace::make(F, 2, 2);
  CylFunction f = CylFunction::constant(S, 0.0);
  for (std::uint64_t z = 0; z < S->size(); ++z) f.values[z] = {0.1 * double(z), -1.0 / double(z + 3)};
  for (Format fmt : {Format::csv, Format::json}) {
    std::ostringstream out;
    write_function(out, f, fmt, {{"alpha", "1"}});
    CylFunction g = read_function(S, out.str());
    for (std::uint64_t z = 0; z < S->size(); ++z) CHECK(g.values[z] == f.values[z]);
  }
  CHECK_THROWS_AS(read_function(S, "coset,re,im\n0:0,abc,0\n"), ConfigError);
}

TEST_CASE("report tables") {
  Tower U = build_unramified_tower(2, {1, 2, 6});
  MeasureReport rep = theorem3_report(U, 1, 1.0, 1.0, 3);
  std::ostringstream a, b;
  write_measure_report(a, rep, Format::csv, {{"alpha", "1"}, {"N", "1"}});
  write_measure_report(b, rep, Format::csv, {{"N", "1"}, {"alpha", "1"}});
  CHECK(a.str() == b.str());
  CHECK(a.str().find("n,mu_exact,pi,lower_bound,log10_ratio\n") != std::string::npos);
  CHECK(a.str().find("\n3,1/64,") != std::string::npos);
  CHECK(a.str().rfind("# N=1\n# alpha=1\n", 0) == 0);

  CHECK(format_double(0.1) == "0.1");
  CHECK(format_rational(mpq_class(3, 6)) == "1/2");
  CHECK(failure_record("config", "bad \"x\"") == R"({"error":"config","message":"bad \"x\""})");
}
