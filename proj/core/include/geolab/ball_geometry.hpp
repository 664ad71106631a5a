#pragma once

// Kobayashi geometry of the unit ball of C^n, same normalization as the disc:
// k(0, z) = arctanh |z| and the metric at the origin is the Euclidean norm.

#include <initializer_list>
#include <utility>

#include "geolab/common.hpp"
#include "geolab/disc_geometry.hpp"

namespace geolab {

class BallPoint {
 public:
  BallPoint() : BallPoint(1) {}
  explicit BallPoint(int n);  // origin of C^n
  explicit BallPoint(CVec v);
  BallPoint(std::initializer_list<cd> coords);

  static BallPoint origin(int n) { return BallPoint(n); }

  int dim() const noexcept { return static_cast<int>(v_.size()); }
  const CVec& value() const noexcept { return v_; }
  bool clamped() const noexcept { return clamped_; }

 private:
  CVec v_;
  bool clamped_ = false;
};

CVec clamp_to_ball(const CVec& v);

struct BallTangent {
  BallPoint base;
  CVec vector;
};

/// z ↦ U φ_a(z) where φ_a is the involutive automorphism exchanging a and 0,
/// φ_a(z) = (a − P_a z − s_a Q_a z)/(1 − ⟨z, a⟩). For a = 0 the map is U itself.
class BallMobius {
 public:
  BallMobius(BallPoint a, CMat unitary);

  const BallPoint& a() const noexcept { return a_; }
  const CMat& unitary() const noexcept { return unitary_; }
  int dim() const noexcept { return a_.dim(); }

  CVec operator()(const CVec& z) const;
  /// d/dt m(z + t v) at t = 0.
  CVec differential(const CVec& z, const CVec& v) const;

 private:
  BallPoint a_;
  CMat unitary_;
};

BallMobius ball_mobius(const BallPoint& a);
BallPoint ball_mobius_apply(const BallMobius& m, const BallPoint& z);
BallMobius ball_mobius_invert(const BallMobius& m);

/// Isometry of the ball sending 0 to c (the involution φ_c, identity at c = 0).
CVec ball_translate(const CVec& c, const CVec& w);

double kobayashi_distance(const BallPoint& z, const BallPoint& w);
double kobayashi_distance(const CVec& z, const CVec& w);
double kobayashi_metric(const BallTangent& t);

/// The complex affine hyperplane {x : ⟨x, normal⟩ = offset}.
struct Hyperplane {
  CVec normal;
  cd offset;
};

/// A complex geodesic φ(ζ) = to_origin⁻¹(ζ u) together with its Lempert
/// projection ρ = φ ∘ ρ̃ and left inverse ρ̃(x) = ⟨to_origin(x), u⟩.
class LempertDevice {
 public:
  LempertDevice(BallMobius to_origin, CVec direction, double t_param);

  const BallMobius& to_origin() const noexcept { return to_origin_; }
  const CVec& direction() const noexcept { return direction_; }
  double t_param() const noexcept { return t_param_; }
  int dim() const noexcept { return to_origin_.dim(); }

  CVec geodesic(cd zeta) const;
  CVec geodesic_derivative(cd zeta) const;
  cd left_inverse(const CVec& x) const;
  CVec project(const CVec& x) const;
  /// The affine fiber ρ̃⁻¹(ζ), before intersecting with the ball.
  Hyperplane fiber(cd zeta) const;
  /// Point of the closed disc boundary, φ(e^{iθ}) extended continuously.
  CVec boundary_point(double theta) const;

 private:
  BallMobius to_origin_;
  BallMobius from_origin_;
  CVec direction_;
  double t_param_;
};

/// φ(0) = z and φ(t) = w with t = tanh k(z, w).
LempertDevice geodesic_through(const BallPoint& z, const BallPoint& w);
/// φ(0) = base and φ'(0) a positive multiple of vector.
LempertDevice geodesic_tangent(const BallTangent& t);

DiscPoint device_left_inverse(const LempertDevice& d, const BallPoint& x);
BallPoint device_project(const LempertDevice& d, const BallPoint& x);

/// |1 − z₁|² < R(1 − ‖z‖²): horosphere at e₁ with pole at the origin.
bool horosphere_membership(double size, const BallPoint& z);
bool horosphere_membership(double size, const CVec& z);

/// Two retractions of the bidisc onto the diagonal ζ ↦ (ζ, ζ).
struct BidiscProjections {
  std::pair<cd, cd> first;   // (z, z)
  std::pair<cd, cd> second;  // ((z + w)/2, (z + w)/2)
};
BidiscProjections bidisc_projections_demo(cd z, cd w);

}  // namespace geolab
