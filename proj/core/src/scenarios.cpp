#include "geolab/scenarios.hpp"

#include <cmath>
#include <numbers>

namespace geolab {

namespace {

std::uint64_t scenario_seed(const ScenarioOptions& opts, std::uint64_t scenario, std::uint64_t k) {
  return substream_seed(opts.seed, scenario * 100000 + k);
}

Json metric_value(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

CVec vec2(cd a, cd b) {
  CVec v(2);
  v << a, b;
  return v;
}

CVec vec1(cd a) {
  CVec v(1);
  v(0) = a;
  return v;
}

void finish(ScenarioResult& r) {
  r.pass = !r.checks.empty();
  for (const Check& c : r.checks) r.pass = r.pass && c.pass;
}

EstimatorConfig planar_estimator(std::uint64_t seed) {
  EstimatorConfig e;
  e.center_samples = 128;
  e.boundary_samples = 64;
  e.radius_tolerance = 1e-3;
  e.seed = seed;
  return e;
}

EstimatorConfig device_estimator(std::uint64_t seed) {
  EstimatorConfig e;
  e.center_samples = 64;
  e.boundary_samples = 64;
  e.radius_tolerance = 1e-3;
  e.seed = seed;
  return e;
}

DeviceSampleConfig device_config(std::size_t devices, std::uint64_t seed) {
  DeviceSampleConfig d;
  d.num_devices = devices;
  d.points_per_region = 128;
  d.fattening_eps = 1e-3;
  d.seed = seed;
  return d;
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

}  // namespace

IFSSpec contraction_preset(std::uint64_t seed, std::size_t k) {
  const std::uint64_t sys_seed = substream_seed(seed, 2 * 100000 + k);
  return {"random-mobius-" + std::to_string(k), 1, [sys_seed](std::size_t j) {
            Rng rng = make_rng(sys_seed, j);
            const cd a = uniform_in_ball(rng, 1, 0.9)(0);
            const double theta = 2.0 * std::numbers::pi * uniform01(rng);
            const double s = 0.25 + 0.25 * uniform01(rng);
            return MapSpec::disc_mobius_scale(MobiusDisc(a, theta), s);
          }};
}

std::vector<CVec> disc_probe() {
  return {vec1(0.0), vec1(0.5), vec1(cd(0, -0.5)), vec1(cd(0.7, 0.2)), vec1(cd(-0.6, 0.3))};
}

std::vector<CVec> ball_probe() {
  return {vec2(0.0, 0.0), vec2(0.5, 0.0), vec2(0.0, cd(0, 0.5)), vec2(cd(-0.3, 0.2), 0.1), vec2(0.2, -0.6)};
}

// Distinct first coordinates, so the limit (c z_1, 0) is visibly non-constant.
std::vector<CVec> product_probe() {
  return {vec2(0.3, 0.0), vec2(-0.5, 0.2), vec2(cd(0, 0.4), 0.4), vec2(0.6, -0.3), vec2(cd(-0.2, -0.7), 0.0)};
}

ContractionRun run_contraction_preset(std::uint64_t seed, std::size_t k, std::size_t max_iter) {
  const IFSSpec ifs = contraction_preset(seed, k);
  // Each map m(sζ) lands in the hyperbolic disc of radius arctanh(s) ≤ C about m(0).
  const auto targets = [&ifs](std::size_t j) {
    const auto& f = std::get<MapSpec::DiscMobiusScale>(ifs.generator(j).kind());
    return PlanarRegion::hyper_ball(DiscPoint(f.m(0.0)), kContractionBound);
  };
  ContractionOptions copts;
  copts.run.max_iter = max_iter;
  copts.seed = substream_seed(seed, 2 * 100000 + 999);
  return uniform_contraction_run(ifs, targets, kContractionBound, disc_probe(), copts);
}

// Contractions of the ball whose images B(c_j, arctanh s_j) sit inside
// B(center, radius − margin).
IFSSpec kball_contraction_preset(std::uint64_t seed, std::size_t k, const BallPoint& center, double radius,
                                 double margin) {
  return {"ball-contraction-" + std::to_string(k), center.dim(), [=](std::size_t j) {
            Rng rng = make_rng(seed, j);
            const int n = center.dim();
            const double s = 0.2 + 0.4 * uniform01(rng);
            const double budget = radius - margin - std::atanh(s);
            const CVec y = uniform_in_ball(rng, n, std::tanh(std::max(budget, 0.0)));
            const CMat u = random_unitary(rng, n);
            return MapSpec::ball_contraction(u, s, BallPoint(ball_translate(center.value(), y)));
          }};
}

ScenarioResult scenario_sandwich(const ScenarioOptions& opts) {
  ScenarioResult r;
  r.scenario_id = "sandwich";
  r.statement_ref = "for a planar subdomain U: tanh(R(U)/2) <= mu(U) <= tanh(R(U)), with equality on the right for "
                    "centred hyperbolic discs";
  const double tol = 1e-2 * opts.tolerance_scale;
  const EstimatorConfig e = planar_estimator(scenario_seed(opts, 1, 0));
  for (double radius : {0.25, 0.5, 1.0, 2.0}) {
    const SandwichResult s = sandwich_check(PlanarRegion::hyper_ball(0.0, radius), e, tol);
    const std::string tag = "hyperball_0_" + fmt(radius);
    r.metrics.push_back({tag + ".R_est", s.r_est});
    r.metrics.push_back({tag + ".mu_est", s.mu_est});
    r.checks.push_back({tag + ".bounds", s.pass()});
    r.checks.push_back({tag + ".upper_attained", std::abs(s.mu_est - std::tanh(radius)) <= tol});
    r.artifacts.push_back({{"region", "hyperball 0,0 " + fmt(radius)}, {"sandwich", to_json(s)}});
  }
  const std::pair<cd, double> off_center[] = {{cd(0.3, 0.2), 0.7}, {cd(0.0, -0.5), 1.5}};
  for (const auto& [c, radius] : off_center) {
    const PlanarRegion u = PlanarRegion::hyper_ball(c, radius);
    const SandwichResult s = sandwich_check(u, e, tol);
    const std::string tag = u.describe();
    r.metrics.push_back({tag + ".mu_est", s.mu_est});
    r.checks.push_back({tag + ".bounds", s.pass()});
    r.artifacts.push_back({{"region", tag}, {"sandwich", to_json(s)}});
  }
  // The whole disc has no finite Bloch radius: the check must not claim a pass.
  const SandwichResult control = sandwich_check(PlanarRegion::whole_disc(), e, tol);
  r.checks.push_back({"control_disc_unbounded", control.verdict == SandwichVerdict::unbounded});
  r.artifacts.push_back({{"region", "disc"}, {"sandwich", to_json(control)}});
  finish(r);
  return r;
}

ScenarioResult scenario_contraction(const ScenarioOptions& opts) {
  ScenarioResult r;
  r.scenario_id = "contraction";
  r.statement_ref = "a disc IFS whose maps land in subdomains of uniformly bounded Bloch radius C has only constant "
                    "limits, contracting at rate at most tanh(C)";
  const double rate_bound = std::log(std::tanh(kContractionBound)) + 1e-3 * opts.tolerance_scale;
  const std::vector<CVec> probe = disc_probe();
  ContractionOptions copts;
  copts.seed = scenario_seed(opts, 2, 999);

  std::size_t constant = 0;
  std::size_t rate_ok = 0;
  double worst_rate = -std::numeric_limits<double>::infinity();
  Json runs = Json::array();
  for (std::size_t k = 0; k < 50; ++k) {
    const ContractionRun run = run_contraction_preset(opts.seed, k);
    if (run.run.classification == LimitClass::constant && run.hypothesis_holds) ++constant;
    if (run.rate_fit) {
      worst_rate = std::max(worst_rate, *run.rate_fit);
      if (*run.rate_fit <= rate_bound) ++rate_ok;
    }
    runs.push_back(to_json(run));
  }
  r.metrics.push_back({"systems", 50});
  r.metrics.push_back({"constant_systems", static_cast<double>(constant)});
  r.metrics.push_back({"rate_ok_systems", static_cast<double>(rate_ok)});
  r.metrics.push_back({"worst_rate", worst_rate});
  r.metrics.push_back({"rate_bound", rate_bound});
  r.checks.push_back({"all_constant", constant == 50});
  r.checks.push_back({"all_rates_below_log_tanh_C", rate_ok == 50});

  const IFSSpec constant_map{"constant", 1, [](std::size_t) { return MapSpec::constant(vec1(0.3)); }};
  const ContractionRun one = uniform_contraction_run(
      constant_map, [](std::size_t) { return PlanarRegion::hyper_ball(0.3, 0.1); }, kContractionBound, probe, copts);
  r.checks.push_back({"constant_map_one_step",
                      one.run.classification == LimitClass::constant && one.run.decided_at == 1});

  const IFSSpec identity{"identity", 1, [](std::size_t) { return MapSpec::disc_identity(); }};
  const ContractionRun control = uniform_contraction_run(
      identity, [](std::size_t) { return PlanarRegion::whole_disc(); }, kContractionBound, probe, copts);
  r.checks.push_back({"control_identity_nonconstant",
                      !control.hypothesis_holds && control.run.classification == LimitClass::non_constant});
  r.artifacts.push_back({{"systems", runs}, {"constant_map", to_json(one)}, {"identity_control", to_json(control)}});
  finish(r);
  return r;
}

ScenarioResult scenario_main_theorem(const ScenarioOptions& opts) {
  ScenarioResult r;
  r.scenario_id = "main_theorem";
  r.statement_ref = "a 1-Bloch subset X of the ball is degenerate: every IFS with values in X has only constant limits";
  const double tol = 1e-2 * opts.tolerance_scale;
  const double margin = 0.05;
  const std::vector<BallPoint> centers = {BallPoint{0.0, 0.0}, BallPoint{cd(0.3, 0), cd(0, 0.2)},
                                          BallPoint{cd(-0.2, 0.1), cd(0.4, 0)}};
  const EstimatorConfig e = device_estimator(scenario_seed(opts, 3, 0));

  bool bounds_ok = true;
  for (std::size_t i = 0; i < centers.size(); ++i) {
    const BallRegion x = BallRegion::kobayashi_ball(centers[i], 1.0);
    const DeviceSampleConfig d = device_config(12, scenario_seed(opts, 3, 10 + i));
    const CertifierReport cert = one_bloch_certify(x, d, e);
    const double c = cert.certified_bound.value_or(std::numeric_limits<double>::infinity());
    const bool ok = cert.certified_bound && c >= 1.0 - tol && c <= 1.0 + tol + d.fattening_eps;
    bounds_ok = bounds_ok && ok;
    r.metrics.push_back({"certified_bound." + std::to_string(i), c});
    r.artifacts.push_back({{"region", x.describe()}, {"one_bloch", to_json(cert)}});
  }
  r.checks.push_back({"one_bloch_bounds_near_1", bounds_ok});

  const std::vector<CVec> probe = ball_probe();
  RunOptions ro;
  ro.max_iter = 200;
  std::size_t constant = 0;
  double worst_tracking = 0.0;
  double worst_anchor = 0.0;
  double worst_diameter = 0.0;
  Json runs = Json::array();
  for (std::size_t k = 0; k < 20; ++k) {
    const BallPoint& c = centers[k % centers.size()];
    const IFSSpec ifs = kball_contraction_preset(scenario_seed(opts, 3, 100 + k), k, c, 1.0, margin);
    const RunReport run = compose_run(ifs, probe, ro);
    const double final_diam = run.diam_trace.back().second;
    worst_diameter = std::max(worst_diameter, final_diam);
    if (run.classification == LimitClass::constant && final_diam < 1e-8 && run.iterations_used <= 200) ++constant;
    const ReducedSystem rs = reduce_system(ifs, BallPoint(probe[1]), BallPoint(probe[2]), 50);
    worst_tracking = std::max(worst_tracking, rs.max_tracking_residual);
    worst_anchor = std::max(worst_anchor, rs.max_anchor_residual);
    runs.push_back({{"run", to_json(run)},
                    {"reduction",
                     {{"steps_completed", rs.steps_completed},
                      {"collapsed", rs.collapsed},
                      {"max_tracking_residual", rs.max_tracking_residual},
                      {"max_anchor_residual", rs.max_anchor_residual}}}});
  }
  r.metrics.push_back({"constant_runs", static_cast<double>(constant)});
  r.metrics.push_back({"worst_final_diameter", worst_diameter});
  r.metrics.push_back({"worst_tracking_residual", worst_tracking});
  r.metrics.push_back({"worst_anchor_residual", worst_anchor});
  r.checks.push_back({"all_runs_constant_by_200", constant == 20});
  r.checks.push_back({"tracking_identity", worst_tracking < 1e-9 * opts.tolerance_scale});
  r.checks.push_back({"geodesic_anchors", worst_anchor < 1e-10 * opts.tolerance_scale});

  // Uniform bound on the projected images along one concrete reduction.
  {
    const BallRegion x = BallRegion::kobayashi_ball(centers[1], 1.0);
    const IFSSpec ifs = kball_contraction_preset(scenario_seed(opts, 3, 101), 1, centers[1], 1.0, margin);
    const ReducedSystem rs = reduce_system(ifs, BallPoint(probe[1]), BallPoint(probe[2]), 3);
    const DeviceSampleConfig d = device_config(1, scenario_seed(opts, 3, 200));
    const std::vector<StepBound> bounds = reduced_image_bound(rs, x, d, e);
    bool ok = !bounds.empty();
    for (const StepBound& b : bounds) ok = ok && !b.unbounded && b.radius <= 1.0 + d.fattening_eps + tol;
    r.checks.push_back({"reduced_images_uniformly_bloch", ok});
    r.artifacts.push_back({{"reduced_image_bound", to_json(bounds)}});
  }
  r.artifacts.push_back({{"runs", runs}});
  finish(r);
  return r;
}

ScenarioResult scenario_product_counterexample(const ScenarioOptions& opts) {
  ScenarioResult r;
  r.scenario_id = "product_counterexample";
  r.statement_ref = "the product system (g_j(z_1), 0) with g_j(z) = (1 - 2^-j) z lands in a Bloch subset of the ball "
                    "yet has the non-constant limit (c z_1, 0)";
  const double c = shrink_product_constant();
  const std::vector<CVec> probe = product_probe();
  RunOptions ro;
  ro.max_iter = 60;
  ro.run_to_max = true;
  const RunReport run = compose_run(example_product_ifs(2), probe, ro);
  double err = 0.0;
  for (std::size_t i = 0; i < probe.size(); ++i)
    err = std::max(err, (run.limit_samples[i] - vec2(c * probe[i](0), 0.0)).norm());
  r.metrics.push_back({"c", c});
  r.metrics.push_back({"limit_error", err});
  r.checks.push_back({"nonconstant", run.classification == LimitClass::non_constant});
  r.checks.push_back({"limit_matches", err < 1e-6 * opts.tolerance_scale});

  const BallRegion x = BallRegion::product_slice(2, PlanarRegion::whole_disc());
  const EstimatorConfig e = device_estimator(scenario_seed(opts, 4, 0));
  const DeviceSampleConfig d = device_config(1, scenario_seed(opts, 4, 1));
  const CertifierReport cert = certify_devices(CertifyMode::one_bloch, x, {axis_device(2)}, d, e);
  r.checks.push_back({"axis_projection_unbounded", cert.unbounded});
  const BlochReport ball = bloch_radius(x, e);
  r.metrics.push_back({"ball_bloch_radius", ball.radius_estimate});
  r.checks.push_back({"ball_bloch_radius_small", !ball.unbounded && ball.radius_estimate <= d.fattening_eps});
  r.artifacts.push_back({{"run", to_json(run)}, {"one_bloch_axis", to_json(cert)}, {"ball_bloch", to_json(ball)}});
  finish(r);
  return r;
}

ScenarioResult scenario_horosphere(const ScenarioOptions& opts) {
  ScenarioResult r;
  r.scenario_id = "horosphere";
  r.statement_ref = "the horosphere difference E(e1,2) minus E(e1,1) in the 2-ball is c-Bloch but not 1-Bloch";
  const BallRegion x = BallRegion::horosphere_difference(2, 2.0, 1.0);
  const PlanarRegion crescent = PlanarRegion::difference(PlanarRegion::horodisc(2.0), PlanarRegion::horodisc(1.0));
  const SampledDevice axis = axis_device(2);

  std::size_t compared = 0;
  std::size_t disagreements = 0;
  for (int i = 0; i < 100; ++i) {
    for (int k = 0; k < 100; ++k) {
      const cd z = std::polar((i + 0.5) / 100.0, 2.0 * std::numbers::pi * k / 100.0);
      const double gap = (1.0 - std::abs(z)) * (1.0 + std::abs(z));
      const double level = std::norm(1.0 - z);
      if (std::abs(level - 2.0 * gap) <= 1e-9 || std::abs(level - gap) <= 1e-9) continue;
      ++compared;
      if (slice_contains(x, axis.device, z) != crescent.contains(z)) ++disagreements;
    }
  }
  r.metrics.push_back({"grid_points_compared", static_cast<double>(compared)});
  r.metrics.push_back({"grid_disagreements", static_cast<double>(disagreements)});
  r.checks.push_back({"axis_slice_is_crescent", disagreements == 0});

  const EstimatorConfig e = device_estimator(scenario_seed(opts, 5, 0));
  DeviceSampleConfig d = device_config(50, scenario_seed(opts, 5, 1));
  d.avoid = BoundaryExclusion{vec2(1.0, 0.0), 0.1};
  const CertifierReport cb = c_bloch_certify(x, d, e);
  r.metrics.push_back({"c_bloch_max_radius", cb.unbounded ? std::numeric_limits<double>::infinity() : cb.max_radius});
  r.metrics.push_back({"c_bloch_doubled_max_radius", cb.doubled_max_radius});
  r.metrics.push_back({"exclusion_radius", d.avoid->radius});
  r.metrics.push_back({"stability_threshold", 0.1});
  r.metrics.push_back({"devices", static_cast<double>(cb.per_device.size())});
  r.checks.push_back({"at_least_50_devices", cb.per_device.size() >= 50});
  r.checks.push_back({"c_bloch_finite_and_stable", !cb.unbounded && cb.stability_flag && cb.certified_bound});

  const CertifierReport ob = certify_devices(CertifyMode::one_bloch, x, {axis}, device_config(1, d.seed), e);
  r.checks.push_back({"one_bloch_axis_unbounded", ob.unbounded});
  r.artifacts.push_back({{"c_bloch", to_json(cb)}, {"one_bloch_axis", to_json(ob)}});
  finish(r);
  return r;
}

ScenarioResult scenario_implications(const ScenarioOptions& opts) {
  ScenarioResult r;
  r.scenario_id = "implications";
  r.statement_ref = "1-Bloch with bound C implies Lipschitz with constant at most tanh(C), and Lipschitz implies c-Bloch";
  const double tol = 1e-2 * opts.tolerance_scale;
  const EstimatorConfig e = device_estimator(scenario_seed(opts, 6, 0));
  for (double radius : {0.5, 1.0}) {
    const BallRegion x = BallRegion::kobayashi_ball(BallPoint{0.0, 0.0}, radius);
    const std::string tag = "kball_0_" + fmt(radius);
    const CertifierReport one = one_bloch_certify(x, device_config(8, scenario_seed(opts, 6, 1)), e);
    const LipschitzReport mu = lipschitz_constant(x, e);
    const CertifierReport cb = c_bloch_certify(x, device_config(8, scenario_seed(opts, 6, 2)), e);
    const double c = one.certified_bound.value_or(std::numeric_limits<double>::infinity());
    r.metrics.push_back({tag + ".one_bloch_bound", c});
    r.metrics.push_back({tag + ".mu_est", mu.mu_estimate});
    r.metrics.push_back({tag + ".c_bloch_bound", cb.certified_bound.value_or(std::numeric_limits<double>::infinity())});
    r.checks.push_back({tag + ".lipschitz_below_tanh_C", one.certified_bound && mu.mu_estimate <= std::tanh(c) + tol});
    r.checks.push_back({tag + ".c_bloch_finite", cb.certified_bound.has_value()});
    r.artifacts.push_back(
        {{"region", x.describe()}, {"one_bloch", to_json(one)}, {"lipschitz", to_json(mu)}, {"c_bloch", to_json(cb)}});
  }
  // Ambient control, reported but not part of the verdict.
  const BallRegion ball = BallRegion::whole_ball(2);
  const LipschitzReport mu = lipschitz_constant(ball, e);
  const CertifierReport one = one_bloch_certify(ball, device_config(2, scenario_seed(opts, 6, 3)), e);
  r.metrics.push_back({"control_ball.mu_est", mu.mu_estimate});
  r.metrics.push_back({"control_ball.one_bloch_unbounded", one.unbounded ? 1.0 : 0.0});
  finish(r);
  return r;
}

const std::vector<std::string>& scenario_ids() {
  static const std::vector<std::string> ids = {"sandwich",   "contraction", "main_theorem", "product_counterexample",
                                               "horosphere", "implications"};
  return ids;
}

ScenarioResult run_scenario(const std::string& id, const ScenarioOptions& opts) {
  if (id == "sandwich") return scenario_sandwich(opts);
  if (id == "contraction") return scenario_contraction(opts);
  if (id == "main_theorem") return scenario_main_theorem(opts);
  if (id == "product_counterexample") return scenario_product_counterexample(opts);
  if (id == "horosphere") return scenario_horosphere(opts);
  if (id == "implications") return scenario_implications(opts);
  fail(ErrorCode::invalid_argument, "unknown scenario '" + id + "'");
}

Json to_json(const ScenarioResult& r) {
  Json metrics = Json::object();
  for (const Metric& m : r.metrics) metrics[m.name] = metric_value(m.value);
  Json checks = Json::array();
  for (const Check& c : r.checks) checks.push_back({{"name", c.name}, {"pass", c.pass}});
  return {{"scenario_id", r.scenario_id},
          {"statement_ref", r.statement_ref},
          {"pass", r.pass},
          {"metrics", metrics},
          {"checks", checks},
          {"artifacts", r.artifacts}};
}

void write_summary_csv(std::ostream& os, const std::vector<ScenarioResult>& results) {
  std::vector<std::vector<std::string>> rows;
  for (const ScenarioResult& r : results) {
    std::string failing;
    for (const Check& c : r.checks)
      if (!c.pass) failing += (failing.empty() ? "" : ";") + c.name;
    rows.push_back({r.scenario_id, r.pass ? "PASS" : "FAIL", std::to_string(r.checks.size()), failing, r.statement_ref});
  }
  write_csv(os, {"scenario_id", "verdict", "checks", "failing_checks", "statement"}, rows);
}

}  // namespace geolab
