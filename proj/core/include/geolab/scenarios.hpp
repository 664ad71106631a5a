#pragma once

#include <string>
#include <vector>

#include "geolab/report_io.hpp"

namespace geolab {

struct Metric {
  std::string name;
  double value;
};

struct Check {
  std::string name;
  bool pass;
};

struct ScenarioResult {
  std::string scenario_id;
  std::string statement_ref;  // the statement being exercised, in words
  bool pass = false;
  std::vector<Metric> metrics;
  std::vector<Check> checks;
  Json artifacts = Json::array();
};

struct ScenarioOptions {
  std::uint64_t seed = kDefaultSeed;
  double tolerance_scale = 1.0;  // multiplies every pass tolerance
};

inline constexpr double kContractionBound = 0.54930614433405484570;  // arctanh 0.5

// Preset systems shared by the scenarios and the command-line tool.
std::vector<CVec> disc_probe();
std::vector<CVec> ball_probe();
std::vector<CVec> product_probe();
IFSSpec contraction_preset(std::uint64_t seed, std::size_t k);
ContractionRun run_contraction_preset(std::uint64_t seed, std::size_t k, std::size_t max_iter = 200);
IFSSpec kball_contraction_preset(std::uint64_t seed, std::size_t k, const BallPoint& center, double radius,
                                 double margin);

ScenarioResult scenario_sandwich(const ScenarioOptions& opts = {});
ScenarioResult scenario_contraction(const ScenarioOptions& opts = {});
ScenarioResult scenario_main_theorem(const ScenarioOptions& opts = {});
ScenarioResult scenario_product_counterexample(const ScenarioOptions& opts = {});
ScenarioResult scenario_horosphere(const ScenarioOptions& opts = {});
ScenarioResult scenario_implications(const ScenarioOptions& opts = {});

const std::vector<std::string>& scenario_ids();
ScenarioResult run_scenario(const std::string& id, const ScenarioOptions& opts = {});

Json to_json(const ScenarioResult& r);
void write_summary_csv(std::ostream& os, const std::vector<ScenarioResult>& results);

}  // namespace geolab
