#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "geolab/ball_geometry.hpp"
#include "geolab/ball_region.hpp"
#include "geolab/blochness.hpp"
#include "geolab/disc_geometry.hpp"
#include "geolab/planar_region.hpp"

namespace geolab {

// Disc points are carried as vectors of length one so disc and ball systems
// share one code path.

class MapSpec {
 public:
  struct DiscMobiusScale {  // ζ ↦ m(sζ)
    MobiusDisc m;
    double s;
  };
  struct DiscAffineShrink {  // ζ ↦ (1 − 2^{−j})ζ
    int j;
  };
  struct BallContraction {  // z ↦ T_c(s U z), image B(c, arctanh s)
    CMat unitary;
    double s;
    BallPoint center;
  };
  struct ProductEmbed {  // (z₁, …, z_n) ↦ (g(z₁), 0, …, 0)
    int dim;
    std::shared_ptr<const MapSpec> inner;
  };
  struct Composite {  // first element applied first
    std::vector<MapSpec> maps;
  };
  struct Constant {
    CVec value;
  };
  using Kind = std::variant<DiscMobiusScale, DiscAffineShrink, BallContraction, ProductEmbed, Composite, Constant>;

  static MapSpec disc_mobius_scale(MobiusDisc m, double s);
  static MapSpec disc_identity() { return disc_mobius_scale(MobiusDisc::identity(), 1.0); }
  static MapSpec disc_affine_shrink(int j);
  static MapSpec ball_contraction(CMat unitary, double s, BallPoint center);
  static MapSpec ball_identity(int n);
  static MapSpec product_embed(int n, MapSpec inner);
  static MapSpec composite(std::vector<MapSpec> maps);
  static MapSpec constant(CVec value);

  const Kind& kind() const noexcept { return kind_; }
  int domain_dim() const;
  std::string describe() const;

  /// Exact image when the catalogue provides one.
  std::optional<PlanarRegion> planar_image() const;
  std::optional<BallRegion> ball_image() const;

 private:
  explicit MapSpec(Kind kind) : kind_(std::move(kind)) {}
  Kind kind_;
};

CVec apply_map(const MapSpec& m, const CVec& z);
cd apply_map(const MapSpec& m, cd z);

struct IFSSpec {
  std::string name;
  int dim = 1;
  std::function<MapSpec(std::size_t)> generator;  // j ≥ 1
};

enum class LimitClass { constant, non_constant, undecided };
std::string_view to_string(LimitClass c);

struct RunOptions {
  std::size_t max_iter = 200;
  double tol_constant = 1e-8;
  double tol_stable = 1e-6;
  double nonconstant_floor = 1e-3;
  std::size_t stable_window = 20;
  bool run_to_max = false;  // keep iterating after the classification is decided
};

struct RunReport {
  std::string ifs_name;
  std::vector<CVec> probe_points;
  std::vector<std::pair<std::size_t, double>> diam_trace;
  LimitClass classification = LimitClass::undecided;
  std::size_t decided_at = 0;
  CVec limit_estimate;
  std::vector<CVec> limit_samples;  // F_j of the probes at the last iteration
  std::size_t iterations_used = 0;
  double max_diameter_increase = 0.0;  // Schwarz–Pick monotonicity check
};

double hyperbolic_diameter(const std::vector<CVec>& points);

RunReport compose_run(const IFSSpec& ifs, const std::vector<CVec>& probe, const RunOptions& opts = {});

struct SchwarzPickResult {
  double max_slack = 0.0;
  double mu = 0.0;
  std::size_t pairs = 0;
  bool pass() const { return max_slack <= 1e-9; }
};

/// max k(gζ, gη) − μ(U) k(ζ, η) over random pairs; throws when a sampled image
/// leaves U.
SchwarzPickResult schwarz_pick_check(const MapSpec& g, const PlanarRegion& u, std::size_t pairs, std::uint64_t seed,
                                     const EstimatorConfig& cfg = {});

struct ContractionRun {
  RunReport run;
  std::optional<double> rate_fit;  // slope of log diameter after burn-in
  double bloch_bound = 0.0;        // C
  double max_target_radius = 0.0;  // sup R(W_j) over the run
  bool hypothesis_holds = true;    // every R(W_j) ≤ C
  bool counterexample = false;     // hypothesis held but the limit is not constant
};

struct ContractionOptions {
  RunOptions run;
  std::size_t burn_in = 10;
  std::size_t containment_samples = 64;
  double rate_floor = 1e-13;  // diameters below this are rounding noise
  std::uint64_t seed = kDefaultSeed;
};

ContractionRun uniform_contraction_run(const IFSSpec& ifs, const std::function<PlanarRegion(std::size_t)>& targets,
                                       double bloch_bound, const std::vector<CVec>& probe,
                                       const ContractionOptions& opts = {});

struct ReducedSystem {
  std::vector<LempertDevice> devices;  // φ_1, …, φ_{steps+1}
  std::vector<double> t_params;
  std::vector<MapSpec> maps;  // f_j, so that g_j = ρ̃_{j+1} ∘ f_j ∘ φ_j
  std::vector<cd> tracked_zero;  // ρ̃_{j+1}(F_j z)
  std::vector<cd> tracked_t;     // ρ̃_{j+1}(F_j w)
  std::vector<cd> chain_zero;    // g_j ∘ … ∘ g_1(0)
  std::vector<cd> chain_t;       // g_j ∘ … ∘ g_1(t_1)
  std::vector<CVec> orbit_z;     // F_j z, j ≥ 0
  std::vector<CVec> orbit_w;
  double max_tracking_residual = 0.0;
  double max_anchor_residual = 0.0;  // |φ_j(0) − F_{j−1}z|, |φ_j(t_j) − F_{j−1}w|
  bool collapsed = false;
  std::size_t steps_completed = 0;

  cd apply_reduced(std::size_t j, cd zeta) const;  // g_j, 1-based
};

ReducedSystem reduce_system(const IFSSpec& ifs, const BallPoint& z, const BallPoint& w, std::size_t steps);

struct StepBound {
  std::size_t step;
  double radius;
  bool unbounded;
};

/// Bloch radius of ρ̃_{φ_{j+1}}(X) for every completed step.
std::vector<StepBound> reduced_image_bound(const ReducedSystem& rs, const BallRegion& x, const DeviceSampleConfig& dcfg,
                                           const EstimatorConfig& ecfg);

/// Π_{k ≥ 1}(1 − 2^{−k}), the limit scale of the shrinking product system.
double shrink_product_constant(std::size_t terms = 80);

IFSSpec example_product_ifs(int n);

}  // namespace geolab
