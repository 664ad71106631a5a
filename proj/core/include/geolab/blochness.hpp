#pragma once

#include <optional>
#include <string>
#include <vector>

#include "geolab/ball_geometry.hpp"
#include "geolab/ball_region.hpp"
#include "geolab/bloch_estimator.hpp"
#include "geolab/planar_region.hpp"

namespace geolab {

BlochReport bloch_radius(const PlanarRegion& x, const EstimatorConfig& cfg);
BlochReport bloch_radius(const BallRegion& x, const EstimatorConfig& cfg);

struct LipschitzReport {
  double mu_estimate = 0.0;
  CVec witness_point;
  CVec witness_tangent;
  std::size_t samples_used = 0;
};

/// sup κ_ambient/κ_Z over sampled tangent vectors. Planar: any region with a
/// closed-form density. Ball: whole_ball and kobayashi_ball.
LipschitzReport lipschitz_constant(const PlanarRegion& z, const EstimatorConfig& cfg);
LipschitzReport lipschitz_constant(const BallRegion& z, const EstimatorConfig& cfg);

enum class SandwichVerdict { pass, fail, unbounded };
std::string_view to_string(SandwichVerdict v);

struct SandwichResult {
  BlochReport bloch;
  LipschitzReport lipschitz;
  double r_est = 0.0;
  double mu_est = 0.0;
  double lower = 0.0;  // tanh(R/2)
  double upper = 0.0;  // tanh(R)
  double tolerance = 1e-2;
  SandwichVerdict verdict = SandwichVerdict::fail;
  bool pass() const { return verdict == SandwichVerdict::pass; }
};

SandwichResult sandwich_check(const PlanarRegion& u, const EstimatorConfig& cfg, double tolerance = 1e-2);

struct BoundaryExclusion {
  CVec point;  // on the unit sphere
  double radius = 0.1;
};

struct DeviceSampleConfig {
  std::size_t num_devices = 16;
  std::size_t points_per_region = 256;
  double fattening_eps = 1e-3;
  std::optional<BoundaryExclusion> avoid;
  std::uint64_t seed = kDefaultSeed;
  unsigned threads = 1;

  void validate(int dim) const;
};

enum class DeviceOrigin { axis, centered_axis, random_pair, supplied };
std::string_view to_string(DeviceOrigin o);

struct SampledDevice {
  LempertDevice device;
  DeviceOrigin origin;
};

/// Deterministic axis devices through 0 and through the region's first hint,
/// then random devices through pairs of uniform ball points, all filtered by
/// the boundary exclusion. Exactly num_devices are returned.
std::vector<SampledDevice> sample_devices(const BallRegion& x, const DeviceSampleConfig& cfg);

/// The axis device ζ ↦ (ζ, 0, …, 0).
SampledDevice axis_device(int dim);

struct DeviceResult {
  DeviceOrigin origin;
  CVec base;       // φ(0)
  CVec direction;  // u
  bool empty = false;
  BlochReport report;
  double radius = 0.0;  // estimate plus fattening; radius_cap when unbounded
};

enum class CertifyMode { one_bloch, c_bloch };
std::string_view to_string(CertifyMode m);

struct CertifierReport {
  CertifyMode mode = CertifyMode::one_bloch;
  std::vector<DeviceResult> per_device;
  double max_radius = 0.0;
  bool unbounded = false;
  std::optional<double> certified_bound;
  bool stability_flag = false;
  double doubled_max_radius = 0.0;
  bool doubled_unbounded = false;
  std::size_t empty_devices = 0;
  double fattening_eps = 0.0;
  double radius_cap = 0.0;
};

/// Membership of the projected set ρ̃(X) for one device: ζ such that the fiber
/// ρ̃⁻¹(ζ) meets X.
bool projection_contains(const BallRegion& x, const LempertDevice& d, cd zeta);
/// Membership of the slice set {ζ : φ(ζ) ∈ X}.
bool slice_contains(const BallRegion& x, const LempertDevice& d, cd zeta);

CertifierReport one_bloch_certify(const BallRegion& x, const DeviceSampleConfig& dcfg, const EstimatorConfig& ecfg);
CertifierReport c_bloch_certify(const BallRegion& x, const DeviceSampleConfig& dcfg, const EstimatorConfig& ecfg);
CertifierReport certify_devices(CertifyMode mode, const BallRegion& x, const std::vector<SampledDevice>& devices,
                                const DeviceSampleConfig& dcfg, const EstimatorConfig& ecfg);

struct ConsistencyResult {
  bool holds = false;
  bool vacuous = false;  // no certified bound to compare with
  double bloch_radius = 0.0;
  double bound = 0.0;
};

/// R(X) ≤ C + fattening + tolerance whenever a 1-Bloch bound C was certified.
ConsistencyResult bloch_subset_consistency(const BallRegion& x, const DeviceSampleConfig& dcfg,
                                           const EstimatorConfig& ecfg);

}  // namespace geolab
