#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "geolab/report_io.hpp"

namespace fs = std::filesystem;
using geolab::Json;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

fs::path fresh_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("geolab-cli-test-" + name);
  fs::remove_all(p);
  return p;
}

Outcome run(std::vector<std::string> args) {
  args.insert(args.begin(), "geolab");
  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = geolab::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

Json load(const fs::path& p) { return Json::parse(slurp(p)); }

// First value stored under `key` anywhere in the document.
const Json* find_key(const Json& j, const std::string& key) {
  if (j.is_object()) {
    if (j.contains(key)) return &j[key];
    for (const auto& [k, v] : j.items())
      if (const Json* hit = find_key(v, key)) return hit;
  } else if (j.is_array()) {
    for (const Json& v : j)
      if (const Json* hit = find_key(v, key)) return hit;
  }
  return nullptr;
}

}  // namespace

TEST_CASE("help and usage errors") {
  CHECK(run({"--help"}).code == geolab::cli::kOk);
  CHECK(run({"--version"}).code == geolab::cli::kOk);
  CHECK(run({}).code == geolab::cli::kUsage);
  CHECK(run({"nonsense"}).code == geolab::cli::kUsage);
  CHECK(run({"bloch"}).code == geolab::cli::kUsage);
  CHECK(run({"--format", "xml", "bloch", "--region", "disc"}).code == geolab::cli::kUsage);
  const Outcome bad = run({"bloch", "--region", "euclid 0,0", "--output-dir", fresh_dir("bad").string()});
  CHECK(bad.code == geolab::cli::kUsage);
  CHECK(bad.err.rfind("error: ", 0) == 0);
}

TEST_CASE("geodesic command") {
  const fs::path dir = fresh_dir("geodesic");
  const Outcome o = run({"geodesic", "--from", "0,0", "--to", "0.5,0", "--output-dir", dir.string()});
  REQUIRE(o.code == geolab::cli::kOk);
  const Json j = load(dir / "geodesic.json");
  CHECK(j["command"] == "geodesic");
  const Json* t = find_key(j, "t_param");
  REQUIRE(t != nullptr);
  CHECK(t->get<double>() == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(fs::exists(dir / "geodesic.csv"));

  CHECK(run({"geodesic", "--from", "0.2,0.1", "--to", "0.2,0.1", "--output-dir", dir.string()}).code ==
        geolab::cli::kUsage);
  CHECK(run({"geodesic", "--at", "0,0", "--dir", "1,0", "--output-dir", dir.string()}).code == geolab::cli::kOk);
}

TEST_CASE("bloch, lipschitz and certify commands") {
  const fs::path dir = fresh_dir("bloch");
  REQUIRE(run({"bloch", "--region", "hyperball 0 0.5493", "--center-samples", "64", "--output-dir", dir.string()})
              .code == geolab::cli::kOk);
  const Json j = load(dir / "bloch.json");
  CHECK(j["result"]["radius_estimate"].get<double>() == doctest::Approx(0.5493).epsilon(2e-3));
  CHECK(fs::exists(dir / "bloch_trace.csv"));

  CHECK(run({"bloch", "--region", "disc", "--center-samples", "32", "--output-dir", dir.string()}).out.find(
            "UNBOUNDED") != std::string::npos);
  CHECK(run({"lipschitz", "--region", "annulus-like custom", "--output-dir", dir.string()}).code ==
        geolab::cli::kUnsupported);
  CHECK(run({"certify", "--region", "euclid 0,0 0.5", "--output-dir", dir.string()}).code == geolab::cli::kUsage);
  const Outcome c = run({"certify", "--region", "kball 0,0 0.5", "--devices", "3", "--points-per-region", "64",
                         "--center-samples", "32", "--output-dir", dir.string()});
  CHECK(c.code == geolab::cli::kOk);
  CHECK(fs::exists(dir / "certify.json"));
  CHECK(fs::exists(dir / "certify_devices.csv"));
}

TEST_CASE("iterated systems") {
  const fs::path dir = fresh_dir("ifs");
  REQUIRE(run({"ifs-run", "--preset", "example14", "--output-dir", dir.string()}).code == geolab::cli::kOk);
  const Json j = load(dir / "ifs-run.json");
  const Json* cls = find_key(j, "classification");
  REQUIRE(cls != nullptr);
  CHECK((*cls)["kind"] == "NonConstant");
  CHECK(run({"ifs-run", "--preset", "unknown", "--output-dir", dir.string()}).code == geolab::cli::kUsage);
  CHECK(run({"reduce", "--preset", "example14", "--from", "0.3,0", "--to", "-0.5,0.2", "--steps", "10",
             "--output-dir", dir.string()})
            .code == geolab::cli::kOk);
  CHECK(fs::exists(dir / "reduce_tracking.csv"));
}

TEST_CASE("output formats") {
  const fs::path dir = fresh_dir("format");
  REQUIRE(run({"--format", "csv", "geodesic", "--from", "0,0", "--to", "0.5,0", "--output-dir", dir.string()}).code ==
          geolab::cli::kOk);
  CHECK(fs::exists(dir / "geodesic.csv"));
  CHECK_FALSE(fs::exists(dir / "geodesic.json"));

  const fs::path json_only = fresh_dir("format-json");
  REQUIRE(run({"--format", "json", "geodesic", "--from", "0,0", "--to", "0.5,0", "--output-dir", json_only.string()})
              .code == geolab::cli::kOk);
  CHECK(fs::exists(json_only / "geodesic.json"));
  CHECK_FALSE(fs::exists(json_only / "geodesic.csv"));
}

TEST_CASE("seed precedence") {
  const fs::path dir = fresh_dir("seed");
  const std::vector<std::string> cmd = {"geodesic", "--from", "0,0", "--to", "0.5,0", "--output-dir", dir.string()};
  ::unsetenv("GEOLAB_SEED");
  REQUIRE(run(cmd).code == 0);
  CHECK(load(dir / "geodesic.json")["seed"].get<std::uint64_t>() == geolab::kDefaultSeed);
  ::setenv("GEOLAB_SEED", "99", 1);
  REQUIRE(run(cmd).code == 0);
  CHECK(load(dir / "geodesic.json")["seed"] == 99);
  std::vector<std::string> explicit_seed = cmd;
  explicit_seed.insert(explicit_seed.begin(), {"--seed", "7"});
  REQUIRE(run(explicit_seed).code == 0);
  CHECK(load(dir / "geodesic.json")["seed"] == 7);
  ::unsetenv("GEOLAB_SEED");
}

TEST_CASE("reports are byte-identical across runs") {
  const fs::path a = fresh_dir("det-a"), b = fresh_dir("det-b");
  for (const fs::path& d : {a, b})
    REQUIRE(run({"bloch", "--region", "annulus 0.3", "--center-samples", "48", "--output-dir", d.string()}).code ==
            0);
  CHECK(slurp(a / "bloch.json") == slurp(b / "bloch.json"));
  CHECK(slurp(a / "bloch_trace.csv") == slurp(b / "bloch_trace.csv"));
}

TEST_CASE("scenario failures set the exit code") {
  const fs::path dir = fresh_dir("verify");
  const Outcome o =
      run({"verify", "--only", "sandwich", "--tolerance-scale", "1e-6", "--format", "both", "--output-dir", dir.string()});
  CHECK(o.code == geolab::cli::kScenarioFailure);
  CHECK(o.out.find("sandwich") != std::string::npos);
  CHECK(o.out.find("FAIL") != std::string::npos);
  const Json summary = load(dir / "verify.json");
  CHECK(summary["result"]["pass"] == false);
  CHECK(fs::exists(dir / "scenario-sandwich.json"));
  CHECK(fs::exists(dir / "verify_summary.csv"));

  CHECK(run({"scenario", "product_counterexample", "--output-dir", dir.string()}).code == geolab::cli::kOk);
  CHECK(run({"scenario", "no_such_scenario", "--output-dir", dir.string()}).code == geolab::cli::kUsage);
}
