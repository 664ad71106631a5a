#include <doctest.h>

#include <sstream>

#include "geolab/blochness.hpp"
#include "geolab/report_io.hpp"

using namespace geolab;

TEST_CASE("csv quoting") {
  CHECK(csv_field("plain") == "plain");
  CHECK(csv_field("a,b") == "\"a,b\"");
  CHECK(csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
  CHECK(csv_field("two\nlines") == "\"two\nlines\"");
  CHECK(csv_field("") == "");

  std::ostringstream os;
  write_csv(os, {"name", "value"}, {{"x,y", "1"}, {"z", csv_number(0.1)}});
  CHECK(os.str() == "name,value\r\n\"x,y\",1\r\nz,0.1\r\n");
}

TEST_CASE("numbers round-trip") {
  for (double x : {0.1, 1.0 / 3.0, 6.02214076e23, -2.5e-300, 0.549306144334054845}) {
    CHECK(std::stod(csv_number(x)) == x);
    CHECK(Json::parse(Json(x).dump()).get<double>() == x);
  }
  CHECK(csv_number(std::numeric_limits<double>::infinity()) == "inf");
}

TEST_CASE("radius encoding") {
  CHECK(radius_json(0.5, false) == Json(0.5));
  CHECK(radius_json(6.0, true) == Json("UNBOUNDED"));
  CHECK(to_json(cd(0.25, -1.0)) == Json::parse("[0.25, -1.0]"));
}

TEST_CASE("report envelope") {
  EstimatorConfig cfg;
  cfg.center_samples = 32;
  const BlochReport r = bloch_radius(PlanarRegion::euclid_disc(0.0, 0.5), cfg);
  const Json env = envelope("bloch", "largest inscribed hyperbolic disc", 42, to_json(cfg), to_json(r));
  std::vector<std::string> keys;
  for (const auto& [k, v] : env.items()) keys.push_back(k);
  CHECK(keys == std::vector<std::string>{"tool", "version", "command", "statement", "seed", "config", "result"});
  CHECK(env["version"] == std::string(version()));
  CHECK(env["seed"] == 42);
  CHECK(env["config"]["center_samples"] == 32);
  CHECK(env["result"]["radius_estimate"].is_number());

  // Same inputs, same bytes.
  const BlochReport again = bloch_radius(PlanarRegion::euclid_disc(0.0, 0.5), cfg);
  CHECK(dump(env) == dump(envelope("bloch", "largest inscribed hyperbolic disc", 42, to_json(cfg), to_json(again))));
}

TEST_CASE("unbounded reports") {
  EstimatorConfig cfg;
  cfg.center_samples = 32;
  const Json j = to_json(bloch_radius(PlanarRegion::whole_disc(), cfg));
  CHECK(j["radius_estimate"] == "UNBOUNDED");
  CHECK(j["radius_cap"] == 6.0);
}
