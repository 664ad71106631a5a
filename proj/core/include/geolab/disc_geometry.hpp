#pragma once

// Hyperbolic geometry of the unit disc, normalized to curvature -4 so that the
// infinitesimal metric at the origin is |v| and d(0, r) = arctanh r.

#include "geolab/common.hpp"

namespace geolab {

/// A point of the open unit disc. Values with |z| > 1 - kBoundaryGuard are
/// clamped radially and the clamp is recorded.
class DiscPoint {
 public:
  DiscPoint() = default;
  DiscPoint(cd z);  // NOLINT(google-explicit-constructor): points are values
  DiscPoint(double re, double im = 0.0) : DiscPoint(cd(re, im)) {}

  cd value() const noexcept { return z_; }
  bool clamped() const noexcept { return clamped_; }

 private:
  cd z_{0.0, 0.0};
  bool clamped_ = false;
};

cd clamp_to_disc(cd z);

struct DiscTangent {
  DiscPoint base;
  cd vector;
};

/// z ↦ e^{iθ}(z − a)/(1 − ā z).
class MobiusDisc {
 public:
  MobiusDisc() = default;
  MobiusDisc(DiscPoint a, double theta) : a_(a), theta_(theta) {}

  static MobiusDisc identity() { return {}; }

  DiscPoint a() const noexcept { return a_; }
  double theta() const noexcept { return theta_; }

  cd operator()(cd z) const;

 private:
  DiscPoint a_;
  double theta_ = 0.0;
};

DiscPoint mobius_apply(const MobiusDisc& m, DiscPoint z);
/// Returns outer ∘ inner.
MobiusDisc mobius_compose(const MobiusDisc& outer, const MobiusDisc& inner);
MobiusDisc mobius_invert(const MobiusDisc& m);

/// Disc automorphism sending 0 to c: w ↦ (w + c)/(1 + c̄ w).
cd disc_translate(cd c, cd w);

double poincare_distance(DiscPoint z, DiscPoint w);
double poincare_metric(const DiscTangent& t);

struct EuclideanDisc {
  cd center;
  double radius = 0.0;
};

/// Euclidean disc equal to {w : d(center, w) < r}.
EuclideanDisc hyperball_euclidean(DiscPoint center, double r);

/// |p − z|² < R(1 − |z|²) for a boundary point p.
bool horodisc_membership(cd boundary_point, double size, DiscPoint z);

/// The horodisc as the Euclidean disc tangent to the circle at p.
EuclideanDisc horodisc_euclidean(cd boundary_point, double size);

/// Hyperbolic centre and radius of a Euclidean disc compactly inside the unit
/// disc. Radius is +inf when the disc touches the unit circle.
struct HyperbolicDisc {
  cd center;
  double radius = 0.0;
};
HyperbolicDisc euclidean_to_hyperbolic(const EuclideanDisc& disc);

}  // namespace geolab
