#pragma once

#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "geolab/blochness.hpp"
#include "geolab/ifs_engine.hpp"

namespace geolab {

using Json = nlohmann::ordered_json;

std::string_view version();

Json to_json(cd z);           // [re, im]
Json to_json(const CVec& v);  // [[re, im], ...]
Json radius_json(double value, bool unbounded);  // number or "UNBOUNDED"

Json to_json(const EstimatorConfig& c);
Json to_json(const DeviceSampleConfig& c);
Json to_json(const BlochReport& r);
Json to_json(const LipschitzReport& r);
Json to_json(const SandwichResult& r);
Json to_json(const CertifierReport& r);
Json to_json(const LempertDevice& d);
Json to_json(const RunOptions& o);
Json to_json(const RunReport& r);
Json to_json(const SchwarzPickResult& r);
Json to_json(const ContractionRun& r);
Json to_json(const ReducedSystem& r);
Json to_json(const std::vector<StepBound>& bounds);

/// Wraps a payload with the tool version, command, statement, seed and the
/// fully resolved configuration.
Json envelope(const std::string& command, const std::string& statement, std::uint64_t seed, Json config, Json result);

std::string dump(const Json& j);

/// RFC 4180 field quoting.
std::string csv_field(const std::string& s);
std::string csv_number(double x);
void write_csv(std::ostream& os, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);
void write_diam_trace_csv(std::ostream& os, const RunReport& r);

}  // namespace geolab
