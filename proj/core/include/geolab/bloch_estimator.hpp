#pragma once

#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

#include "geolab/common.hpp"

namespace geolab {

struct EstimatorConfig {
  std::size_t center_samples = 256;
  double radius_tolerance = 1e-3;
  std::size_t boundary_samples = 64;
  double radius_cap = 6.0;
  std::uint64_t seed = kDefaultSeed;

  void validate() const;
};

struct BlochReport {
  double radius_estimate = 0.0;  // capped at radius_cap when unbounded
  bool unbounded = false;
  bool empty = false;
  CVec witness_center;
  double witness_radius = 0.0;
  std::size_t samples_used = 0;
  std::vector<std::pair<std::size_t, double>> monotone_trace;
  double radius_cap = 6.0;
};

using Membership = std::function<bool(const CVec&)>;

/// Largest inscribed Kobayashi ball of a set given by membership, over the
/// candidate centres (in order) refined by local ascent. Works in 𝔻 (n = 1)
/// and 𝔹ⁿ alike: balls are swept along the geodesic rays s ↦ T_c(tanh(s) v).
BlochReport estimate_inscribed_radius(int dim, const Membership& contains,
                                      const std::vector<CVec>& candidates, const EstimatorConfig& cfg);

/// Largest r ≤ limit such that every sampled ray from c stays inside up to r.
double inscribed_radius_at(int dim, const Membership& contains, const CVec& c, double limit,
                           const EstimatorConfig& cfg);

/// Random points at hyperbolic distance uniform in [0, max_depth] from 0.
std::vector<CVec> random_depth_points(Rng& rng, int dim, std::size_t count, double max_depth);

}  // namespace geolab
