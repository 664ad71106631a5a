#include "geolab/report_io.hpp"

#include <charconv>
#include <cmath>

namespace geolab {

namespace {

Json finite_or_null(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

Json trace_json(const std::vector<std::pair<std::size_t, double>>& trace) {
  Json out = Json::array();
  for (const auto& [n, v] : trace) out.push_back({n, finite_or_null(v)});
  return out;
}

Json complex_list(const std::vector<cd>& zs) {
  Json out = Json::array();
  for (cd z : zs) out.push_back(to_json(z));
  return out;
}

}  // namespace

std::string_view version() { return GEOLAB_VERSION; }

Json to_json(cd z) { return Json::array({z.real(), z.imag()}); }

Json to_json(const CVec& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(to_json(v(i)));
  return out;
}

Json radius_json(double value, bool unbounded) {
  if (unbounded) return "UNBOUNDED";
  return finite_or_null(value);
}

Json to_json(const EstimatorConfig& c) {
  return {{"center_samples", c.center_samples},
          {"radius_tolerance", c.radius_tolerance},
          {"boundary_samples", c.boundary_samples},
          {"radius_cap", c.radius_cap},
          {"seed", c.seed}};
}

Json to_json(const DeviceSampleConfig& c) {
  Json avoid = nullptr;
  if (c.avoid) avoid = {{"boundary_point", to_json(c.avoid->point)}, {"radius", c.avoid->radius}};
  return {{"num_devices", c.num_devices},
          {"points_per_region", c.points_per_region},
          {"fattening_eps", c.fattening_eps},
          {"avoid_boundary_point", avoid},
          {"seed", c.seed},
          {"threads", c.threads}};
}

Json to_json(const BlochReport& r) {
  return {{"radius_estimate", radius_json(r.radius_estimate, r.unbounded)},
          {"radius_cap", r.radius_cap},
          {"empty", r.empty},
          {"witness_center", to_json(r.witness_center)},
          {"witness_radius", r.witness_radius},
          {"samples_used", r.samples_used},
          {"monotone_trace", trace_json(r.monotone_trace)}};
}

Json to_json(const LipschitzReport& r) {
  return {{"mu_estimate", r.mu_estimate},
          {"witness", {{"point", to_json(r.witness_point)}, {"tangent", to_json(r.witness_tangent)}}},
          {"samples_used", r.samples_used}};
}

Json to_json(const SandwichResult& r) {
  return {{"R_est", radius_json(r.r_est, r.bloch.unbounded)},
          {"mu_est", r.mu_est},
          {"lower", r.lower},
          {"upper", r.upper},
          {"tolerance", r.tolerance},
          {"verdict", std::string(to_string(r.verdict))},
          {"pass", r.pass()},
          {"bloch", to_json(r.bloch)},
          {"lipschitz", to_json(r.lipschitz)}};
}

Json to_json(const CertifierReport& r) {
  Json devices = Json::array();
  for (const DeviceResult& d : r.per_device) {
    devices.push_back({{"device",
                        {{"origin", std::string(to_string(d.origin))},
                         {"base", to_json(d.base)},
                         {"direction", to_json(d.direction)}}},
                       {"empty", d.empty},
                       {"radius", d.empty ? Json(nullptr) : radius_json(d.radius, d.report.unbounded)},
                       {"report", to_json(d.report)}});
  }
  return {{"mode", std::string(to_string(r.mode))},
          {"max_radius", radius_json(r.max_radius, r.unbounded)},
          {"certified_bound", r.certified_bound ? Json(*r.certified_bound) : Json(nullptr)},
          {"stability_flag", r.stability_flag},
          {"doubled_max_radius", radius_json(r.doubled_max_radius, r.doubled_unbounded)},
          {"empty_devices", r.empty_devices},
          {"fattening_eps", r.fattening_eps},
          {"radius_cap", r.radius_cap},
          {"per_device", devices}};
}

Json to_json(const LempertDevice& d) {
  return {{"base", to_json(d.geodesic(0.0))},
          {"direction", to_json(d.direction())},
          {"t_param", d.t_param()},
          {"to_origin", {{"a", to_json(d.to_origin().a().value())}}}};
}

Json to_json(const RunOptions& o) {
  return {{"max_iter", o.max_iter},
          {"tol_constant", o.tol_constant},
          {"tol_stable", o.tol_stable},
          {"nonconstant_floor", o.nonconstant_floor},
          {"stable_window", o.stable_window},
          {"run_to_max", o.run_to_max}};
}

Json to_json(const RunReport& r) {
  Json probes = Json::array();
  for (const CVec& p : r.probe_points) probes.push_back(to_json(p));
  Json limits = Json::array();
  for (const CVec& p : r.limit_samples) limits.push_back(to_json(p));
  Json cls = {{"kind", std::string(to_string(r.classification))}, {"decided_at", r.decided_at}};
  if (r.classification == LimitClass::constant) cls["limit_point"] = to_json(r.limit_estimate);
  if (r.classification == LimitClass::non_constant) cls["stable_diameter"] = r.diam_trace.back().second;
  return {{"ifs", r.ifs_name},
          {"probe_points", probes},
          {"classification", cls},
          {"iterations_used", r.iterations_used},
          {"max_diameter_increase", r.max_diameter_increase},
          {"limit_samples", limits},
          {"diam_trace", trace_json(r.diam_trace)}};
}

Json to_json(const SchwarzPickResult& r) {
  return {{"max_slack", r.max_slack}, {"mu", r.mu}, {"pairs", r.pairs}, {"pass", r.pass()}};
}

Json to_json(const ContractionRun& r) {
  return {{"run", to_json(r.run)},
          {"rate_fit", r.rate_fit ? Json(*r.rate_fit) : Json(nullptr)},
          {"bloch_bound", r.bloch_bound},
          {"max_target_radius", finite_or_null(r.max_target_radius)},
          {"hypothesis_holds", r.hypothesis_holds},
          {"counterexample", r.counterexample}};
}

Json to_json(const ReducedSystem& r) {
  Json devices = Json::array();
  for (const LempertDevice& d : r.devices) devices.push_back(to_json(d));
  Json maps = Json::array();
  for (const MapSpec& m : r.maps) maps.push_back(m.describe());
  return {{"steps_completed", r.steps_completed},
          {"collapsed", r.collapsed},
          {"max_tracking_residual", r.max_tracking_residual},
          {"max_anchor_residual", r.max_anchor_residual},
          {"t_params", r.t_params},
          {"tracked_zero", complex_list(r.tracked_zero)},
          {"tracked_t", complex_list(r.tracked_t)},
          {"chain_zero", complex_list(r.chain_zero)},
          {"chain_t", complex_list(r.chain_t)},
          {"maps", maps},
          {"devices", devices}};
}

Json to_json(const std::vector<StepBound>& bounds) {
  Json out = Json::array();
  for (const StepBound& b : bounds) out.push_back({{"step", b.step}, {"radius", radius_json(b.radius, b.unbounded)}});
  return out;
}

Json envelope(const std::string& command, const std::string& statement, std::uint64_t seed, Json config, Json result) {
  return {{"tool", "geolab"},
          {"version", std::string(version())},
          {"command", command},
          {"statement", statement},
          {"seed", seed},
          {"config", std::move(config)},
          {"result", std::move(result)}};
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string csv_number(double x) {
  if (!std::isfinite(x)) return std::isnan(x) ? "nan" : (x > 0 ? "inf" : "-inf");
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

void write_csv(std::ostream& os, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
  auto line = [&](const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) os << (i ? "," : "") << csv_field(fields[i]);
    os << "\r\n";
  };
  line(header);
  for (const auto& r : rows) line(r);
}

void write_diam_trace_csv(std::ostream& os, const RunReport& r) {
  std::vector<std::vector<std::string>> rows;
  for (const auto& [j, d] : r.diam_trace) rows.push_back({std::to_string(j), csv_number(d)});
  write_csv(os, {"j", "diameter"}, rows);
}

}  // namespace geolab
