#include "geolab/blochness.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <thread>

#include <Eigen/QR>

namespace geolab {

namespace {

constexpr std::uint64_t kCandidateStream = 0xc0de'0000'0000'0001ULL;
constexpr std::uint64_t kDeviceStream = 0xde71'ce00'0000'0000ULL;
constexpr std::uint64_t kDeviceWorkStream = 0x5107'0000'0000'0000ULL;
constexpr std::uint64_t kLipschitzStream = 0x1195'0000'0000'0001ULL;
constexpr std::uint64_t kFiberStream = 0xf1be'0000'0000'0001ULL;
constexpr int kAvoidChecks = 256;
constexpr int kFiberSamples = 64;

CVec as_vec(cd z) {
  CVec v(1);
  v(0) = z;
  return v;
}

CVec unit(int n, int k) {
  CVec v = CVec::Zero(n);
  v(k) = 1.0;
  return v;
}

// Points of the fiber plane inside the ball, for regions whose hit test has no
// closed form.
bool sampled_fiber_hit(const BallRegion& x, const Hyperplane& plane) {
  const int n = x.dim();
  const double bn2 = plane.normal.squaredNorm();
  const CVec p0 = (plane.offset / bn2) * plane.normal;
  const double rad2 = 1.0 - p0.squaredNorm();
  if (rad2 <= 0.0) return false;
  if (n == 1) return x.contains(p0);
  CMat b(n, 1);
  b.col(0) = plane.normal;
  const CMat q = Eigen::HouseholderQR<CMat>(b).householderQ();
  Rng rng = make_rng(kFiberStream, static_cast<std::uint64_t>(n));
  if (x.contains(p0)) return true;
  for (int i = 0; i < kFiberSamples; ++i) {
    const CVec c = uniform_in_ball(rng, n - 1, std::sqrt(rad2));
    const CVec p = p0 + q.rightCols(n - 1) * c;
    if (x.contains(p)) return true;
  }
  return false;
}

std::vector<cd> disc_grid(std::size_t count, double depth) {
  const std::size_t nr = std::max<std::size_t>(4, static_cast<std::size_t>(std::sqrt(static_cast<double>(count))));
  const std::size_t nt = std::max<std::size_t>(4, (count + nr - 1) / nr);
  std::vector<cd> out{0.0};
  for (std::size_t i = 0; i < nr; ++i) {
    const double r = std::tanh(depth * (static_cast<double>(i) + 0.5) / static_cast<double>(nr));
    for (std::size_t j = 0; j < nt; ++j)
      out.push_back(std::polar(r, 2.0 * std::numbers::pi * (static_cast<double>(j) + 0.5 * (i % 2)) /
                                      static_cast<double>(nt)));
  }
  return out;
}

bool avoids(const LempertDevice& d, const std::optional<BoundaryExclusion>& avoid) {
  if (!avoid) return true;
  for (int k = 0; k < kAvoidChecks; ++k) {
    const double theta = 2.0 * std::numbers::pi * k / kAvoidChecks;
    if ((d.boundary_point(theta) - avoid->point).norm() < avoid->radius) return false;
  }
  return true;
}

DeviceResult estimate_device(CertifyMode mode, const BallRegion& x, const SampledDevice& sd, std::size_t index,
                             const DeviceSampleConfig& dcfg, const EstimatorConfig& ecfg) {
  const LempertDevice& d = sd.device;
  const double cap = ecfg.radius_cap;
  Rng rng = make_rng(dcfg.seed ^ kDeviceWorkStream, index);
  const std::vector<CVec> points = x.sample(rng, dcfg.points_per_region);
  std::vector<CVec> projected;
  for (const CVec& h : x.center_hints(cap)) projected.push_back(as_vec(d.left_inverse(h)));
  for (const CVec& p : points) projected.push_back(as_vec(d.left_inverse(p)));
  const std::vector<CVec> extra = random_depth_points(rng, 1, ecfg.center_samples, cap + 2.0);

  DeviceResult out;
  out.origin = sd.origin;
  out.base = d.geodesic(0.0);
  out.direction = d.direction();

  std::vector<CVec> slice_candidates;
  for (cd z : disc_grid(dcfg.points_per_region, cap + 1.0)) slice_candidates.push_back(as_vec(z));
  slice_candidates.insert(slice_candidates.end(), projected.begin(), projected.end());
  slice_candidates.insert(slice_candidates.end(), extra.begin(), extra.end());
  const Membership in_slice = [&](const CVec& z) { return slice_contains(x, d, z(0)); };
  BlochReport slice = estimate_inscribed_radius(1, in_slice, slice_candidates, ecfg);

  if (mode == CertifyMode::c_bloch) {
    out.report = std::move(slice);
  } else {
    // The slice witness goes first so the projection estimate dominates the
    // slice estimate for the same device.
    std::vector<CVec> candidates;
    if (!slice.empty) candidates.push_back(slice.witness_center);
    candidates.insert(candidates.end(), projected.begin(), projected.end());
    candidates.insert(candidates.end(), extra.begin(), extra.end());
    const Membership in_projection = [&](const CVec& z) { return projection_contains(x, d, z(0)); };
    out.report = estimate_inscribed_radius(1, in_projection, candidates, ecfg);
  }
  out.empty = out.report.empty;
  out.radius = out.report.unbounded ? cap : out.report.radius_estimate + dcfg.fattening_eps;
  if (out.empty) out.radius = 0.0;
  return out;
}

std::vector<DeviceResult> run_devices(CertifyMode mode, const BallRegion& x, const std::vector<SampledDevice>& devices,
                                      const DeviceSampleConfig& dcfg, const EstimatorConfig& ecfg) {
  std::vector<DeviceResult> results(devices.size());
  const unsigned threads = std::max(1u, std::min<unsigned>(dcfg.threads, static_cast<unsigned>(devices.size())));
  if (threads <= 1) {
    for (std::size_t i = 0; i < devices.size(); ++i) results[i] = estimate_device(mode, x, devices[i], i, dcfg, ecfg);
    return results;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(threads);
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (std::size_t i = t; i < devices.size(); i += threads)
          results[i] = estimate_device(mode, x, devices[i], i, dcfg, ecfg);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return results;
}

struct Aggregate {
  double max_radius = 0.0;
  bool unbounded = false;
  std::size_t empty = 0;
};

Aggregate aggregate(const std::vector<DeviceResult>& results) {
  Aggregate a;
  for (const DeviceResult& r : results) {
    if (r.empty) {
      ++a.empty;
      continue;
    }
    a.max_radius = std::max(a.max_radius, r.radius);
    a.unbounded = a.unbounded || r.report.unbounded;
  }
  return a;
}

void check_nonempty(const BallRegion& x, const DeviceSampleConfig& dcfg, double depth) {
  if (!x.center_hints(depth).empty()) return;
  Rng rng = make_rng(dcfg.seed ^ kDeviceWorkStream, 0);
  if (x.sample(rng, std::max<std::size_t>(dcfg.points_per_region, 1)).empty())
    fail(ErrorCode::empty_region, "no point of region '" + x.describe() + "' could be sampled");
}

}  // namespace

BlochReport bloch_radius(const PlanarRegion& x, const EstimatorConfig& cfg) {
  cfg.validate();
  std::vector<CVec> candidates;
  for (cd h : x.center_hints(cfg.radius_cap)) candidates.push_back(as_vec(h));
  Rng rng = make_rng(cfg.seed, kCandidateStream);
  const auto extra = random_depth_points(rng, 1, cfg.center_samples, cfg.radius_cap + 2.0);
  candidates.insert(candidates.end(), extra.begin(), extra.end());
  return estimate_inscribed_radius(1, [&](const CVec& z) { return x.contains(z(0)); }, candidates, cfg);
}

BlochReport bloch_radius(const BallRegion& x, const EstimatorConfig& cfg) {
  cfg.validate();
  const int n = x.dim();
  std::vector<CVec> candidates = x.center_hints(cfg.radius_cap);
  Rng rng = make_rng(cfg.seed, kCandidateStream);
  const auto samples = x.sample(rng, cfg.center_samples);
  candidates.insert(candidates.end(), samples.begin(), samples.end());
  const auto extra = random_depth_points(rng, n, cfg.center_samples, cfg.radius_cap + 2.0);
  candidates.insert(candidates.end(), extra.begin(), extra.end());
  return estimate_inscribed_radius(n, [&](const CVec& z) { return x.contains(z); }, candidates, cfg);
}

LipschitzReport lipschitz_constant(const PlanarRegion& z, const EstimatorConfig& cfg) {
  cfg.validate();
  if (!z.has_closed_form_density())
    fail(ErrorCode::unsupported_region,
         "no closed-form hyperbolic density for region kind '" + z.kind_name() + "'");
  std::vector<cd> points = z.center_hints(cfg.radius_cap);
  Rng rng = make_rng(cfg.seed, kLipschitzStream);
  if (const auto* a = std::get_if<PlanarRegion::Annulus>(&z.kind())) {
    for (std::size_t i = 0; i < cfg.center_samples; ++i) {
      const double r = std::pow(a->inner_radius, uniform01(rng));
      points.push_back(std::polar(r, 2.0 * std::numbers::pi * uniform01(rng)));
    }
  } else {
    const EuclideanDisc disc = *z.euclidean_realization();
    for (std::size_t i = 0; i < cfg.center_samples; ++i)
      points.push_back(disc.center + disc.radius * uniform_in_ball(rng, 1, 1.0)(0));
  }
  LipschitzReport out;
  out.witness_point = CVec::Zero(1);
  out.witness_tangent = as_vec(1.0);
  for (cd p : points) {
    if (std::abs(p) >= 1.0 - kBoundaryGuard || !z.contains(p)) continue;
    ++out.samples_used;
    const DiscTangent t{DiscPoint(p), 1.0};
    const double ratio = poincare_metric(t) / region_hyperbolic_density(z, t);
    if (ratio > out.mu_estimate) {
      out.mu_estimate = ratio;
      out.witness_point = as_vec(p);
    }
  }
  return out;
}

LipschitzReport lipschitz_constant(const BallRegion& z, const EstimatorConfig& cfg) {
  cfg.validate();
  const int n = z.dim();
  LipschitzReport out;
  if (std::holds_alternative<BallRegion::WholeBall>(z.kind())) {
    out.mu_estimate = 1.0;
    out.witness_point = CVec::Zero(n);
    out.witness_tangent = unit(n, 0);
    out.samples_used = 1;
    return out;
  }
  const auto* k = std::get_if<BallRegion::KobayashiBall>(&z.kind());
  if (!k)
    fail(ErrorCode::unsupported_region,
         "no closed-form Kobayashi density for region kind '" + z.kind_name() + "'");
  // B(c, r) = T_c(t𝔹) and κ_{t𝔹}(y; w) = κ_𝔹(y/t; w/t).
  const double t = std::tanh(k->radius);
  const BallMobius transport = ball_mobius(k->center);
  Rng rng = make_rng(cfg.seed, kLipschitzStream);
  for (std::size_t i = 0; i <= cfg.center_samples; ++i) {
    const CVec y = i == 0 ? CVec(CVec::Zero(n)) : uniform_in_ball(rng, n, t);
    const CVec w = i == 0 ? unit(n, 0) : uniform_unit_vector(rng, n);
    ++out.samples_used;
    const double ratio = kobayashi_metric({BallPoint(y), w}) / kobayashi_metric({BallPoint(CVec(y / t)), CVec(w / t)});
    if (ratio > out.mu_estimate) {
      out.mu_estimate = ratio;
      out.witness_point = transport(y);
      out.witness_tangent = transport.differential(y, w);
    }
  }
  return out;
}

std::string_view to_string(SandwichVerdict v) {
  switch (v) {
    case SandwichVerdict::pass: return "PASS";
    case SandwichVerdict::fail: return "FAIL";
    case SandwichVerdict::unbounded: return "UNBOUNDED";
  }
  return "FAIL";
}

SandwichResult sandwich_check(const PlanarRegion& u, const EstimatorConfig& cfg, double tolerance) {
  SandwichResult s;
  s.tolerance = tolerance;
  s.bloch = bloch_radius(u, cfg);
  s.lipschitz = lipschitz_constant(u, cfg);
  s.r_est = s.bloch.radius_estimate;
  s.mu_est = s.lipschitz.mu_estimate;
  s.lower = std::tanh(0.5 * s.r_est);
  s.upper = std::tanh(s.r_est);
  if (s.bloch.unbounded) {
    s.verdict = SandwichVerdict::unbounded;
  } else {
    const bool ok = s.lower - tolerance <= s.mu_est && s.mu_est <= s.upper + tolerance;
    s.verdict = ok ? SandwichVerdict::pass : SandwichVerdict::fail;
  }
  return s;
}

void DeviceSampleConfig::validate(int dim) const {
  if (num_devices < 1) fail(ErrorCode::invalid_argument, "num_devices must be >= 1");
  if (points_per_region < 1) fail(ErrorCode::invalid_argument, "points_per_region must be >= 1");
  if (!(fattening_eps > 0.0)) fail(ErrorCode::invalid_argument, "fattening_eps must be > 0");
  if (avoid) {
    if (avoid->point.size() != dim) fail(ErrorCode::dimension_mismatch, "excluded boundary point has wrong dimension");
    if (std::abs(avoid->point.norm() - 1.0) > 1e-12)
      fail(ErrorCode::invalid_argument, "excluded boundary point must lie on the unit sphere");
    if (!(avoid->radius > 0.0)) fail(ErrorCode::invalid_argument, "exclusion radius must be > 0");
  }
}

std::string_view to_string(DeviceOrigin o) {
  switch (o) {
    case DeviceOrigin::axis: return "axis";
    case DeviceOrigin::centered_axis: return "centered_axis";
    case DeviceOrigin::random_pair: return "random_pair";
    case DeviceOrigin::supplied: return "supplied";
  }
  return "random_pair";
}

std::string_view to_string(CertifyMode m) { return m == CertifyMode::one_bloch ? "one-bloch" : "c-bloch"; }

SampledDevice axis_device(int dim) {
  return {geodesic_tangent({BallPoint(dim), unit(dim, 0)}), DeviceOrigin::axis};
}

std::vector<SampledDevice> sample_devices(const BallRegion& x, const DeviceSampleConfig& cfg) {
  const int n = x.dim();
  cfg.validate(n);
  std::vector<SampledDevice> out;
  auto offer = [&](LempertDevice d, DeviceOrigin o) {
    if (out.size() < cfg.num_devices && avoids(d, cfg.avoid)) out.push_back({std::move(d), o});
  };
  for (int k = 0; k < n; ++k) offer(geodesic_tangent({BallPoint(n), unit(n, k)}), DeviceOrigin::axis);
  const std::vector<CVec> hints = x.center_hints(1.0);
  if (!hints.empty() && hints.front().norm() > 1e-12)
    for (int k = 0; k < n; ++k) offer(geodesic_tangent({BallPoint(hints.front()), unit(n, k)}), DeviceOrigin::centered_axis);
  const std::size_t max_attempts = 1000 * cfg.num_devices;
  for (std::size_t i = 0; out.size() < cfg.num_devices && i < max_attempts; ++i) {
    Rng rng = make_rng(cfg.seed ^ kDeviceStream, i);
    const BallPoint z(uniform_in_ball(rng, n, 1.0));
    const BallPoint w(uniform_in_ball(rng, n, 1.0));
    if ((z.value() - w.value()).norm() < 1e-6) continue;
    offer(geodesic_through(z, w), DeviceOrigin::random_pair);
  }
  if (out.size() < cfg.num_devices)
    fail(ErrorCode::invalid_argument, "could not sample enough devices outside the excluded boundary region");
  return out;
}

bool projection_contains(const BallRegion& x, const LempertDevice& d, cd zeta) {
  if (std::abs(zeta) >= 1.0) return false;
  if (x.contains(d.geodesic(zeta))) return true;
  const Hyperplane plane = d.fiber(zeta);
  if (auto hit = x.meets(plane)) return *hit;
  return sampled_fiber_hit(x, plane);
}

bool slice_contains(const BallRegion& x, const LempertDevice& d, cd zeta) {
  if (std::abs(zeta) >= 1.0) return false;
  return x.contains(d.geodesic(zeta));
}

CertifierReport certify_devices(CertifyMode mode, const BallRegion& x, const std::vector<SampledDevice>& devices,
                                const DeviceSampleConfig& dcfg, const EstimatorConfig& ecfg) {
  ecfg.validate();
  dcfg.validate(x.dim());
  if (devices.empty()) fail(ErrorCode::invalid_argument, "no devices to certify with");
  check_nonempty(x, dcfg, ecfg.radius_cap);

  CertifierReport rep;
  rep.mode = mode;
  rep.fattening_eps = dcfg.fattening_eps;
  rep.radius_cap = ecfg.radius_cap;
  rep.per_device = run_devices(mode, x, devices, dcfg, ecfg);
  const Aggregate base = aggregate(rep.per_device);
  rep.max_radius = base.max_radius;
  rep.unbounded = base.unbounded;
  rep.empty_devices = base.empty;

  DeviceSampleConfig dd = dcfg;
  dd.points_per_region *= 2;
  EstimatorConfig de = ecfg;
  de.center_samples *= 2;
  const Aggregate doubled = aggregate(run_devices(mode, x, devices, dd, de));
  rep.doubled_max_radius = doubled.max_radius;
  rep.doubled_unbounded = doubled.unbounded;

  if (base.unbounded || doubled.unbounded) {
    rep.stability_flag = base.unbounded && doubled.unbounded;
  } else {
    const double hi = std::max(base.max_radius, doubled.max_radius);
    rep.stability_flag = std::abs(base.max_radius - doubled.max_radius) <= 0.1 * hi;
    if (rep.stability_flag) rep.certified_bound = hi;
  }
  return rep;
}

CertifierReport one_bloch_certify(const BallRegion& x, const DeviceSampleConfig& dcfg, const EstimatorConfig& ecfg) {
  return certify_devices(CertifyMode::one_bloch, x, sample_devices(x, dcfg), dcfg, ecfg);
}

CertifierReport c_bloch_certify(const BallRegion& x, const DeviceSampleConfig& dcfg, const EstimatorConfig& ecfg) {
  return certify_devices(CertifyMode::c_bloch, x, sample_devices(x, dcfg), dcfg, ecfg);
}

ConsistencyResult bloch_subset_consistency(const BallRegion& x, const DeviceSampleConfig& dcfg,
                                           const EstimatorConfig& ecfg) {
  ConsistencyResult out;
  const CertifierReport cert = one_bloch_certify(x, dcfg, ecfg);
  if (!cert.certified_bound) {
    out.vacuous = true;
    out.holds = true;
    return out;
  }
  out.bound = *cert.certified_bound + dcfg.fattening_eps + ecfg.radius_tolerance;
  const BlochReport r = bloch_radius(x, ecfg);
  out.bloch_radius = r.radius_estimate;
  out.holds = !r.unbounded && r.radius_estimate <= out.bound;
  return out;
}

}  // namespace geolab
