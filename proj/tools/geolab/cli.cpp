#include "cli.hpp"

#include <map>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <numbers>
#include <sstream>

#include <CLI11.hpp>

#include "geolab/parse.hpp"
#include "geolab/report_io.hpp"
#include "geolab/scenarios.hpp"

namespace geolab::cli {

namespace {

struct Globals {
  std::uint64_t seed = kDefaultSeed;
  std::string output_dir = "geolab-out";
  std::string format = "both";
};

struct EstimatorArgs {
  std::size_t center_samples = EstimatorConfig{}.center_samples;
  double radius_tolerance = EstimatorConfig{}.radius_tolerance;
  std::size_t boundary_samples = EstimatorConfig{}.boundary_samples;
  double radius_cap = EstimatorConfig{}.radius_cap;

  void attach(CLI::App* app) {
    app->add_option("--center-samples", center_samples, "Candidate centers for the Bloch radius search")
        ->capture_default_str();
    app->add_option("--radius-tolerance", radius_tolerance, "Bisection tolerance on radii")->capture_default_str();
    app->add_option("--boundary-samples", boundary_samples, "Rays per candidate center")->capture_default_str();
    app->add_option("--radius-cap", radius_cap, "Radius reported as UNBOUNDED")->capture_default_str();
  }

  EstimatorConfig resolve(std::uint64_t seed) const {
    EstimatorConfig c;
    c.center_samples = center_samples;
    c.radius_tolerance = radius_tolerance;
    c.boundary_samples = boundary_samples;
    c.radius_cap = radius_cap;
    c.seed = seed;
    c.validate();
    return c;
  }
};

class Writer {
 public:
  Writer(const Globals& g, std::ostream& out) : g_(g), out_(out) {}

  bool json() const { return g_.format != "csv"; }
  bool csv() const { return g_.format != "json"; }

  void write(const std::string& name, const std::function<void(std::ostream&)>& body) const {
    std::filesystem::create_directories(g_.output_dir);
    const std::filesystem::path path = std::filesystem::path(g_.output_dir) / name;
    std::ofstream f(path, std::ios::binary);
    if (!f) fail(ErrorCode::invalid_argument, "cannot write " + path.string());
    body(f);
    out_ << "wrote " << path.string() << "\n";
  }

  void json_file(const std::string& stem, const Json& j) const {
    if (json()) write(stem + ".json", [&](std::ostream& os) { os << dump(j); });
  }

  void csv_file(const std::string& name, const std::vector<std::string>& header,
                const std::vector<std::vector<std::string>>& rows) const {
    if (csv()) write(name + ".csv", [&](std::ostream& os) { write_csv(os, header, rows); });
  }

 private:
  const Globals& g_;
  std::ostream& out_;
};

std::string num(double x) { return csv_number(x); }

std::string radius_text(double r, bool unbounded) {
  if (unbounded) return "UNBOUNDED";
  std::ostringstream os;
  os << std::setprecision(6) << r;
  return os.str();
}

// ---------------------------------------------------------------------------

struct GeodesicArgs {
  std::string from, to, at, dir;
};

int cmd_geodesic(const GeodesicArgs& a, const Globals& g, const Writer& w, std::ostream& out) {
  const bool through = !a.from.empty() || !a.to.empty();
  const bool tangent = !a.at.empty() || !a.dir.empty();
  if (through == tangent || (through && (a.from.empty() || a.to.empty())) ||
      (tangent && (a.at.empty() || a.dir.empty())))
    fail(ErrorCode::invalid_argument, "give either --from and --to, or --at and --dir");

  Json config;
  std::optional<LempertDevice> device;
  CVec anchor0, anchor_t;
  if (through) {
    anchor0 = parse_ball_point(a.from);
    anchor_t = parse_ball_point(a.to);
    if (anchor0.size() != anchor_t.size()) fail(ErrorCode::dimension_mismatch, "--from and --to differ in dimension");
    device = geodesic_through(BallPoint(anchor0), BallPoint(anchor_t));
    config = {{"from", to_json(anchor0)}, {"to", to_json(anchor_t)}};
  } else {
    anchor0 = parse_ball_point(a.at);
    const CVec v = parse_complex_vector(a.dir);
    if (v.size() != anchor0.size()) fail(ErrorCode::dimension_mismatch, "--at and --dir differ in dimension");
    device = geodesic_tangent(BallTangent{BallPoint(anchor0), v});
    config = {{"at", to_json(anchor0)}, {"dir", to_json(v)}};
  }

  const LempertDevice& d = *device;
  Json samples = Json::array();
  std::vector<std::vector<std::string>> rows;
  double left_inverse_residual = 0.0;
  double retraction_residual = 0.0;
  std::vector<cd> zetas;
  for (int k = 0; k < 8; ++k) zetas.push_back(std::polar(0.5, 2.0 * std::numbers::pi * k / 8.0));
  zetas.push_back(0.0);
  zetas.push_back(d.t_param());
  for (cd zeta : zetas) {
    const CVec x = d.geodesic(zeta);
    left_inverse_residual = std::max(left_inverse_residual, std::abs(d.left_inverse(x) - zeta));
    retraction_residual = std::max(retraction_residual, (d.project(x) - x).norm());
    samples.push_back({{"zeta", to_json(zeta)}, {"phi", to_json(x)}});
    std::vector<std::string> row = {num(zeta.real()), num(zeta.imag())};
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      row.push_back(num(x(i).real()));
      row.push_back(num(x(i).imag()));
    }
    rows.push_back(row);
  }
  double anchor_residual = (d.geodesic(0.0) - anchor0).norm();
  if (through) anchor_residual = std::max(anchor_residual, (d.geodesic(d.t_param()) - anchor_t).norm());

  const Json result = {{"device", to_json(d)},
                       {"t_param", d.t_param()},
                       {"samples", samples},
                       {"residuals",
                        {{"left_inverse", left_inverse_residual},
                         {"retraction", retraction_residual},
                         {"anchors", anchor_residual}}}};
  w.json_file("geodesic", envelope("geodesic", "complex geodesic of the ball and its Lempert projection", g.seed,
                                   config, result));
  std::vector<std::string> header = {"zeta_re", "zeta_im"};
  for (int i = 0; i < d.dim(); ++i) {
    header.push_back("phi" + std::to_string(i + 1) + "_re");
    header.push_back("phi" + std::to_string(i + 1) + "_im");
  }
  w.csv_file("geodesic", header, rows);
  out << "t_param " << std::setprecision(17) << d.t_param() << "\n"
      << "max residual " << std::setprecision(3)
      << std::max({left_inverse_residual, retraction_residual, anchor_residual}) << "\n";
  return kOk;
}

// ---------------------------------------------------------------------------

struct RegionArgs {
  std::string region;
  int dim = 2;
  EstimatorArgs est;
};

Json region_config(const RegionArgs& a, const EstimatorConfig& e) {
  return {{"region", a.region}, {"ball_dim", a.dim}, {"estimator", to_json(e)}};
}

int cmd_bloch(const RegionArgs& a, const Globals& g, const Writer& w, std::ostream& out) {
  const Region region = parse_region(a.region, a.dim);
  const EstimatorConfig e = a.est.resolve(g.seed);
  const BlochReport r = std::visit([&](const auto& x) { return bloch_radius(x, e); }, region);
  w.json_file("bloch", envelope("bloch", "Bloch radius: supremum of radii of Kobayashi balls inside the region",
                                g.seed, region_config(a, e), to_json(r)));
  std::vector<std::vector<std::string>> rows;
  for (const auto& [n, v] : r.monotone_trace) rows.push_back({std::to_string(n), num(v)});
  w.csv_file("bloch_trace", {"samples_used", "radius"}, rows);
  out << "bloch radius " << (r.empty ? "EMPTY" : radius_text(r.radius_estimate, r.unbounded)) << "\n";
  return kOk;
}

int cmd_lipschitz(const RegionArgs& a, const Globals& g, const Writer& w, std::ostream& out) {
  const Region region = parse_region(a.region, a.dim);
  const EstimatorConfig e = a.est.resolve(g.seed);
  const LipschitzReport r = std::visit([&](const auto& x) { return lipschitz_constant(x, e); }, region);
  w.json_file("lipschitz", envelope("lipschitz", "hyperbolic Lipschitz constant of the inclusion of the region",
                                    g.seed, region_config(a, e), to_json(r)));
  w.csv_file("lipschitz", {"mu_estimate", "samples_used"}, {{num(r.mu_estimate), std::to_string(r.samples_used)}});
  out << "lipschitz constant " << std::setprecision(6) << r.mu_estimate << "\n";
  return kOk;
}

// ---------------------------------------------------------------------------

struct CertifyArgs {
  RegionArgs region;
  std::string mode = "one-bloch";
  std::size_t devices = DeviceSampleConfig{}.num_devices;
  std::size_t points_per_region = DeviceSampleConfig{}.points_per_region;
  double fattening = DeviceSampleConfig{}.fattening_eps;
  std::string avoid;
  double avoid_radius = 0.1;
  unsigned threads = 1;
};

int cmd_certify(const CertifyArgs& a, const Globals& g, const Writer& w, std::ostream& out) {
  const Region region = parse_region(a.region.region, a.region.dim);
  const auto* x = std::get_if<BallRegion>(&region);
  if (!x) fail(ErrorCode::invalid_argument, "certify needs a region of the ball, got '" + a.region.region + "'");
  const EstimatorConfig e = a.region.est.resolve(g.seed);
  DeviceSampleConfig d;
  d.num_devices = a.devices;
  d.points_per_region = a.points_per_region;
  d.fattening_eps = a.fattening;
  d.seed = g.seed;
  d.threads = a.threads;
  if (!a.avoid.empty()) {
    const CVec p = parse_complex_vector(a.avoid);
    if (p.size() != x->dim()) fail(ErrorCode::dimension_mismatch, "--avoid must have the region's dimension");
    d.avoid = BoundaryExclusion{p, a.avoid_radius};
  }
  d.validate(x->dim());
  const bool one = a.mode == "one-bloch";
  const CertifierReport r = one ? one_bloch_certify(*x, d, e) : c_bloch_certify(*x, d, e);

  Json config = region_config(a.region, e);
  config["mode"] = a.mode;
  config["devices"] = to_json(d);
  const std::string statement =
      one ? "1-Bloch: every Lempert projection of the set lies in a Bloch subdomain of uniformly bounded radius"
          : "c-Bloch: every geodesic slice of the set lies in a Bloch subdomain of uniformly bounded radius";
  w.json_file("certify", envelope("certify", statement, g.seed, config, to_json(r)));
  std::vector<std::vector<std::string>> rows;
  for (std::size_t i = 0; i < r.per_device.size(); ++i) {
    const DeviceResult& dr = r.per_device[i];
    rows.push_back({std::to_string(i), std::string(to_string(dr.origin)), dr.empty ? "true" : "false",
                    dr.empty ? "" : (dr.report.unbounded ? "UNBOUNDED" : num(dr.radius))});
  }
  w.csv_file("certify_devices", {"device", "origin", "empty", "radius"}, rows);
  out << a.mode << " max radius " << radius_text(r.max_radius, r.unbounded) << ", stable "
      << (r.stability_flag ? "yes" : "no") << ", certified bound "
      << (r.certified_bound ? radius_text(*r.certified_bound, false) : "none") << "\n";
  return kOk;
}

// ---------------------------------------------------------------------------

struct IfsArgs {
  std::string preset;
  std::size_t iters = 0;
  std::size_t seeds = 50;
  int dim = 2;
};

void diam_rows(std::vector<std::vector<std::string>>& rows, const std::string& run, const RunReport& r) {
  for (const auto& [j, d] : r.diam_trace) rows.push_back({run, std::to_string(j), num(d)});
}

int cmd_ifs_run(const IfsArgs& a, const Globals& g, const Writer& w, std::ostream& out) {
  std::vector<std::vector<std::string>> rows;
  if (a.preset == "product-shrink") {
    RunOptions ro;
    ro.max_iter = a.iters ? a.iters : 60;
    ro.run_to_max = true;
    const std::vector<CVec> probe = a.dim == 2 ? product_probe() : [&] {
      std::vector<CVec> p;
      for (const CVec& q : product_probe()) {
        CVec v = CVec::Zero(a.dim);
        v(0) = q(0);
        p.push_back(v);
      }
      return p;
    }();
    const RunReport run = compose_run(example_product_ifs(a.dim), probe, ro);
    cd scale = 0.0;
    for (std::size_t i = 0; i < probe.size(); ++i) scale += run.limit_samples[i](0) / probe[i](0);
    scale /= static_cast<double>(probe.size());
    Json result = to_json(run);
    result["limit_scale"] = to_json(scale);
    const Json config = {{"preset", a.preset}, {"dim", a.dim}, {"run", to_json(ro)}};
    w.json_file("ifs-run", envelope("ifs-run",
                                    "the shrinking product system converges to the non-constant map (c z_1, 0)",
                                    g.seed, config, result));
    diam_rows(rows, run.ifs_name, run);
    w.csv_file("ifs-run_diam_trace", {"run", "j", "diameter"}, rows);
    out << to_string(run.classification) << ", limit scale " << std::setprecision(10) << scale.real() << "\n";
    return kOk;
  }
  if (a.preset == "contraction-C0.5493") {
    const std::size_t iters = a.iters ? a.iters : 200;
    Json runs = Json::array();
    std::size_t constant = 0;
    for (std::size_t k = 0; k < a.seeds; ++k) {
      const ContractionRun run = run_contraction_preset(g.seed, k, iters);
      if (run.run.classification == LimitClass::constant) ++constant;
      runs.push_back(to_json(run));
      diam_rows(rows, run.run.ifs_name, run.run);
    }
    const Json config = {{"preset", a.preset}, {"iters", iters}, {"systems", a.seeds},
                         {"bloch_bound", kContractionBound}};
    w.json_file("ifs-run",
                envelope("ifs-run", "disc systems landing in discs of Bloch radius at most C have constant limits",
                         g.seed, config, {{"systems", runs}, {"constant", constant}}));
    w.csv_file("ifs-run_diam_trace", {"run", "j", "diameter"}, rows);
    out << constant << "/" << a.seeds << " systems constant\n";
    return kOk;
  }
  fail(ErrorCode::invalid_argument, "unknown preset '" + a.preset + "'");
}

struct ReduceArgs {
  std::string preset;
  std::string from, to;
  std::size_t steps = 50;
};

int cmd_reduce(const ReduceArgs& a, const Globals& g, const Writer& w, std::ostream& out) {
  const CVec z = parse_ball_point(a.from);
  const CVec zw = parse_ball_point(a.to);
  if (z.size() != zw.size()) fail(ErrorCode::dimension_mismatch, "--from and --to differ in dimension");
  IFSSpec ifs;
  if (a.preset == "product-shrink") {
    ifs = example_product_ifs(static_cast<int>(z.size()));
  } else if (a.preset == "kball-contraction") {
    ifs = kball_contraction_preset(g.seed, 0, BallPoint(CVec::Zero(z.size())), 1.0, 0.05);
  } else {
    fail(ErrorCode::invalid_argument, "unknown preset '" + a.preset + "'");
  }
  const ReducedSystem rs = reduce_system(ifs, BallPoint(z), BallPoint(zw), a.steps);
  const Json config = {{"preset", a.preset}, {"from", to_json(z)}, {"to", to_json(zw)}, {"steps", a.steps}};
  w.json_file("reduce", envelope("reduce",
                                 "geodesic reduction: the reduced disc maps g_j = rho_{j+1} f_j phi_j track the "
                                 "orbits of two points",
                                 g.seed, config, to_json(rs)));
  std::vector<std::vector<std::string>> rows;
  for (std::size_t j = 0; j < rs.tracked_zero.size(); ++j) {
    rows.push_back({std::to_string(j + 1), num(rs.tracked_zero[j].real()), num(rs.tracked_zero[j].imag()),
                    num(rs.tracked_t[j].real()), num(rs.tracked_t[j].imag()), num(rs.chain_zero[j].real()),
                    num(rs.chain_zero[j].imag()), num(rs.chain_t[j].real()), num(rs.chain_t[j].imag())});
  }
  w.csv_file("reduce_tracking",
             {"j", "tracked_zero_re", "tracked_zero_im", "tracked_t_re", "tracked_t_im", "chain_zero_re",
              "chain_zero_im", "chain_t_re", "chain_t_im"},
             rows);
  out << rs.steps_completed << " steps" << (rs.collapsed ? " (orbits merged)" : "") << ", tracking residual "
      << std::setprecision(3) << rs.max_tracking_residual << ", anchor residual " << rs.max_anchor_residual << "\n";
  return kOk;
}

// ---------------------------------------------------------------------------

struct VerifyArgs {
  std::vector<std::string> only;
  double tolerance_scale = 1.0;
};

void print_table(std::ostream& out, const std::vector<ScenarioResult>& results) {
  out << std::left << std::setw(26) << "scenario" << std::setw(8) << "verdict" << "failing checks\n";
  for (const ScenarioResult& r : results) {
    std::string failing;
    for (const Check& c : r.checks)
      if (!c.pass) failing += (failing.empty() ? "" : ", ") + c.name;
    out << std::left << std::setw(26) << r.scenario_id << std::setw(8) << (r.pass ? "PASS" : "FAIL") << failing
        << "\n";
  }
}

int run_scenarios(const std::string& command, const std::vector<std::string>& ids, double tolerance_scale,
                  const Globals& g, const Writer& w, std::ostream& out) {
  if (!(tolerance_scale > 0.0)) fail(ErrorCode::invalid_argument, "--tolerance-scale must be > 0");
  ScenarioOptions opts;
  opts.seed = g.seed;
  opts.tolerance_scale = tolerance_scale;
  std::vector<ScenarioResult> results;
  Json summary = Json::array();
  bool pass = true;
  for (const std::string& id : ids) {
    results.push_back(run_scenario(id, opts));
    const ScenarioResult& r = results.back();
    pass = pass && r.pass;
    Json failing = Json::array();
    for (const Check& c : r.checks)
      if (!c.pass) failing.push_back(c.name);
    summary.push_back({{"scenario_id", r.scenario_id}, {"pass", r.pass}, {"failing_checks", failing}});
    const Json config = {{"scenario", id}, {"tolerance_scale", tolerance_scale}};
    w.json_file("scenario-" + id, envelope("scenario", r.statement_ref, g.seed, config, to_json(r)));
  }
  if (command == "verify") {
    const Json config = {{"scenarios", ids}, {"tolerance_scale", tolerance_scale}};
    w.json_file("verify", envelope("verify", "every scenario of the suite passes", g.seed, config,
                                   {{"pass", pass}, {"scenarios", summary}}));
  }
  const std::string stem = command == "scenario" ? "scenario-" + ids.front() : "verify";
  if (w.csv()) w.write(stem + "_summary.csv", [&](std::ostream& os) { write_summary_csv(os, results); });
  print_table(out, results);
  return pass ? kOk : kScenarioFailure;
}

CLI::Transformer preset_aliases() {
  return CLI::Transformer(std::map<std::string, std::string>{{"example14", "product-shrink"}});
}

int exit_for(ErrorCode c) {
  switch (c) {
    case ErrorCode::unsupported_region:
      return kUnsupported;
    case ErrorCode::invalid_argument:
    case ErrorCode::dimension_mismatch:
    case ErrorCode::degenerate_geodesic:
    case ErrorCode::containment_violation:
    case ErrorCode::hypothesis_violation:
    case ErrorCode::empty_region:
      return kUsage;
  }
  return kInternal;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"geolab: hyperbolic geometry of the disc and ball, Bloch radii and holomorphic iterated function "
               "systems"};
  app.set_version_flag("--version", std::string(version()));
  app.require_subcommand(1);
  app.fallthrough();
  app.footer(region_grammar_help());

  Globals g;
  app.add_option("--seed", g.seed, "Seed for every random choice")->envname("GEOLAB_SEED")->capture_default_str();
  app.add_option("--output-dir", g.output_dir, "Directory for report files")->capture_default_str();
  app.add_option("--format", g.format, "Report format")
      ->check(CLI::IsMember({"json", "csv", "both"}))
      ->capture_default_str();

  GeodesicArgs geo;
  auto* geodesic = app.add_subcommand("geodesic", "Complex geodesic through two points or with a given tangent");
  geodesic->add_option("--from", geo.from, "First point, e.g. 0,0");
  geodesic->add_option("--to", geo.to, "Second point");
  geodesic->add_option("--at", geo.at, "Base point");
  geodesic->add_option("--dir", geo.dir, "Tangent direction");

  RegionArgs bl;
  auto* bloch = app.add_subcommand("bloch", "Estimate the Bloch radius of a region");
  bloch->add_option("--region", bl.region, "Region description")->required();
  bloch->add_option("--dim", bl.dim, "Dimension for ball regions")->capture_default_str();
  bl.est.attach(bloch);

  RegionArgs li;
  auto* lipschitz = app.add_subcommand("lipschitz", "Estimate the hyperbolic Lipschitz constant of a region");
  lipschitz->add_option("--region", li.region, "Region description")->required();
  lipschitz->add_option("--dim", li.dim, "Dimension for ball regions")->capture_default_str();
  li.est.attach(lipschitz);

  CertifyArgs ce;
  auto* certify = app.add_subcommand("certify", "Certify the 1-Bloch or c-Bloch condition over sampled devices");
  certify->add_option("--region", ce.region.region, "Ball region description")->required();
  certify->add_option("--dim", ce.region.dim, "Ball dimension")->capture_default_str();
  certify->add_option("--mode", ce.mode, "Condition to certify")
      ->check(CLI::IsMember({"one-bloch", "c-bloch"}))
      ->capture_default_str();
  certify->add_option("--devices", ce.devices, "Number of devices")->capture_default_str();
  certify->add_option("--points-per-region", ce.points_per_region, "Grid points per projected set")
      ->capture_default_str();
  certify->add_option("--fattening", ce.fattening, "Added to every per-device radius")->capture_default_str();
  certify->add_option("--avoid", ce.avoid, "Boundary point the devices must stay away from, e.g. 1,0");
  certify->add_option("--avoid-radius", ce.avoid_radius, "Exclusion radius around --avoid")->capture_default_str();
  certify->add_option("--threads", ce.threads, "Worker threads")->capture_default_str();
  ce.region.est.attach(certify);

  IfsArgs ifs;
  auto* ifs_run = app.add_subcommand("ifs-run", "Run a preset iterated function system");
  ifs_run->add_option("--preset", ifs.preset, "product-shrink (alias example14) or contraction-C0.5493")
      ->required()
      ->transform(preset_aliases());
  ifs_run->add_option("--iters", ifs.iters, "Iterations (preset default when omitted)");
  ifs_run->add_option("--seeds", ifs.seeds, "Number of seeded systems (contraction preset)")->capture_default_str();
  ifs_run->add_option("--dim", ifs.dim, "Ball dimension (product-shrink)")->capture_default_str();

  ReduceArgs red;
  auto* reduce = app.add_subcommand("reduce", "Reduce a ball system to disc maps along complex geodesics");
  reduce->add_option("--preset", red.preset, "product-shrink (alias example14) or kball-contraction")
      ->required()
      ->transform(preset_aliases());
  reduce->add_option("--from", red.from, "First orbit point")->required();
  reduce->add_option("--to", red.to, "Second orbit point")->required();
  reduce->add_option("--steps", red.steps, "Number of steps")->capture_default_str();

  std::string scenario_id;
  double scenario_scale = 1.0;
  auto* scenario = app.add_subcommand("scenario", "Run one scenario");
  scenario->add_option("id", scenario_id, "Scenario id")->required()->check(CLI::IsMember(scenario_ids()));
  scenario->add_option("--tolerance-scale", scenario_scale, "Multiplies every pass tolerance")
      ->capture_default_str();

  VerifyArgs ver;
  auto* verify = app.add_subcommand("verify", "Run the scenario suite and print the summary table");
  verify->add_option("--only", ver.only, "Run only these scenarios")->check(CLI::IsMember(scenario_ids()));
  verify->add_option("--tolerance-scale", ver.tolerance_scale, "Multiplies every pass tolerance")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  const Writer w(g, out);
  try {
    if (geodesic->parsed()) return cmd_geodesic(geo, g, w, out);
    if (bloch->parsed()) return cmd_bloch(bl, g, w, out);
    if (lipschitz->parsed()) return cmd_lipschitz(li, g, w, out);
    if (certify->parsed()) return cmd_certify(ce, g, w, out);
    if (ifs_run->parsed()) return cmd_ifs_run(ifs, g, w, out);
    if (reduce->parsed()) return cmd_reduce(red, g, w, out);
    if (scenario->parsed()) return run_scenarios("scenario", {scenario_id}, scenario_scale, g, w, out);
    if (verify->parsed())
      return run_scenarios("verify", ver.only.empty() ? scenario_ids() : ver.only, ver.tolerance_scale, g, w, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_for(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInternal;
  }
  return kUsage;
}

}  // namespace geolab::cli
