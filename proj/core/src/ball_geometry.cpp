#include "geolab/ball_geometry.hpp"

#include <cmath>

namespace geolab {

namespace {

double one_minus_sq(double r) { return (1.0 - r) * (1.0 + r); }

bool is_zero(const CVec& v) { return v.squaredNorm() == 0.0; }

// A_a y = s y + (1 − s) ⟨y, a⟩ a / |a|², so that φ_a(z) = −A_a(z − a)/(1 − ⟨z, a⟩).
CVec apply_a(const CVec& a, const CVec& y) {
  const double a2 = a.squaredNorm();
  const double s = std::sqrt(one_minus_sq(std::sqrt(a2)));
  return s * y + ((1.0 - s) * inner(y, a) / a2) * a;
}

CVec involution(const CVec& a, const CVec& z) {
  if (is_zero(a)) return z;
  return -apply_a(a, z - a) / (1.0 - inner(z, a));
}

void check_dims(int n, int m) {
  if (n != m)
    fail(ErrorCode::dimension_mismatch,
         "dimension " + std::to_string(n) + " does not match " + std::to_string(m));
}

}  // namespace

CVec clamp_to_ball(const CVec& v) {
  const double r = v.norm();
  const double limit = 1.0 - kBoundaryGuard;
  if (r > limit) return v * (limit / r);
  return v;
}

BallPoint::BallPoint(int n) : v_(CVec::Zero(n)) {
  if (n < 1 || n > kMaxDim)
    fail(ErrorCode::invalid_argument, "ball dimension must be in [1, " + std::to_string(kMaxDim) + "]");
}

BallPoint::BallPoint(CVec v) {
  if (v.size() < 1 || v.size() > kMaxDim)
    fail(ErrorCode::invalid_argument, "ball dimension must be in [1, " + std::to_string(kMaxDim) + "]");
  if (!v.allFinite()) fail(ErrorCode::invalid_argument, "non-finite ball point");
  v_ = clamp_to_ball(v);
  clamped_ = v_ != v;
}

BallPoint::BallPoint(std::initializer_list<cd> coords)
    : BallPoint(CVec(Eigen::Map<const CVec>(coords.begin(), static_cast<Eigen::Index>(coords.size())))) {}

BallMobius::BallMobius(BallPoint a, CMat unitary) : a_(std::move(a)), unitary_(std::move(unitary)) {
  check_dims(a_.dim(), static_cast<int>(unitary_.rows()));
  check_dims(a_.dim(), static_cast<int>(unitary_.cols()));
  const CMat defect = unitary_.adjoint() * unitary_ - CMat::Identity(dim(), dim());
  if (defect.norm() > 1e-10) fail(ErrorCode::invalid_argument, "BallMobius matrix is not unitary");
}

CVec BallMobius::operator()(const CVec& z) const {
  check_dims(dim(), static_cast<int>(z.size()));
  return unitary_ * involution(a_.value(), z);
}

CVec BallMobius::differential(const CVec& z, const CVec& v) const {
  check_dims(dim(), static_cast<int>(z.size()));
  const CVec& a = a_.value();
  if (is_zero(a)) return unitary_ * v;
  const cd den = 1.0 - inner(z, a);
  const CVec num = -apply_a(a, z - a);
  return unitary_ * (-apply_a(a, v) / den + num * (inner(v, a) / (den * den)));
}

BallMobius ball_mobius(const BallPoint& a) {
  return BallMobius(a, CMat::Identity(a.dim(), a.dim()));
}

BallPoint ball_mobius_apply(const BallMobius& m, const BallPoint& z) { return BallPoint(m(z.value())); }

BallMobius ball_mobius_invert(const BallMobius& m) {
  // (U φ_a)⁻¹ = φ_a U* = U* φ_{Ua}
  return BallMobius(BallPoint(CVec(m.unitary() * m.a().value())), m.unitary().adjoint());
}

CVec ball_translate(const CVec& c, const CVec& w) { return involution(c, w); }

double kobayashi_distance(const CVec& z, const CVec& w) {
  check_dims(static_cast<int>(z.size()), static_cast<int>(w.size()));
  const double rho = involution(z, w).norm();
  const double den = std::abs(1.0 - inner(w, z));
  const double gap = one_minus_sq(z.norm()) * one_minus_sq(w.norm()) / (den * den);
  return stable_atanh(rho, gap);
}

double kobayashi_distance(const BallPoint& z, const BallPoint& w) {
  return kobayashi_distance(z.value(), w.value());
}

double kobayashi_metric(const BallTangent& t) {
  const CVec& z = t.base.value();
  check_dims(static_cast<int>(z.size()), static_cast<int>(t.vector.size()));
  const double q = one_minus_sq(z.norm());
  return std::sqrt(t.vector.squaredNorm() / q + std::norm(inner(t.vector, z)) / (q * q));
}

LempertDevice::LempertDevice(BallMobius to_origin, CVec direction, double t_param)
    : to_origin_(std::move(to_origin)),
      from_origin_(ball_mobius_invert(to_origin_)),
      direction_(std::move(direction)),
      t_param_(t_param) {
  check_dims(to_origin_.dim(), static_cast<int>(direction_.size()));
  const double norm = direction_.norm();
  if (std::abs(norm - 1.0) > 1e-10) fail(ErrorCode::invalid_argument, "device direction must be a unit vector");
  direction_ /= norm;
}

CVec LempertDevice::geodesic(cd zeta) const { return from_origin_(zeta * direction_); }

CVec LempertDevice::geodesic_derivative(cd zeta) const {
  return from_origin_.differential(zeta * direction_, direction_);
}

cd LempertDevice::left_inverse(const CVec& x) const { return inner(to_origin_(x), direction_); }

CVec LempertDevice::project(const CVec& x) const { return geodesic(left_inverse(x)); }

CVec LempertDevice::boundary_point(double theta) const {
  // The automorphism extends to the closed ball; evaluate just inside the circle.
  return from_origin_(std::polar(1.0 - 1e-15, theta) * direction_);
}

Hyperplane LempertDevice::fiber(cd zeta) const {
  // ⟨U φ_a(x), u⟩ = ζ with φ_a(x) = (a − A_a x)/(1 − ⟨x, a⟩) rearranges to
  // ⟨x, A_a ũ − ζ̄ a⟩ = ⟨a, ũ⟩ − ζ where ũ = U* u.
  const CVec& a = to_origin_.a().value();
  const CVec u_tilde = to_origin_.unitary().adjoint() * direction_;
  if (is_zero(a)) return {u_tilde, zeta};
  return {CVec(apply_a(a, u_tilde) - std::conj(zeta) * a), inner(a, u_tilde) - zeta};
}

LempertDevice geodesic_through(const BallPoint& z, const BallPoint& w) {
  check_dims(z.dim(), w.dim());
  BallMobius m = ball_mobius(z);
  const CVec y = m(w.value());
  const double rho = y.norm();
  if (rho <= 1e-14) fail(ErrorCode::degenerate_geodesic, "points coincide; no geodesic through them");
  return LempertDevice(std::move(m), y / rho, rho);
}

LempertDevice geodesic_tangent(const BallTangent& t) {
  const CVec& a = t.base.value();
  const CVec& v = t.vector;
  check_dims(static_cast<int>(a.size()), static_cast<int>(v.size()));
  if (is_zero(v)) fail(ErrorCode::invalid_argument, "tangent vector must be nonzero");
  BallMobius m = ball_mobius(t.base);
  CVec u;
  if (is_zero(a)) {
    u = v;
  } else {
    // dφ_a(0) = −((1 − |a|²) P_a + s_a Q_a); invert it on v.
    const double a2 = a.squaredNorm();
    const double q = one_minus_sq(std::sqrt(a2));
    const CVec pv = (inner(v, a) / a2) * a;
    u = -(pv / q + (v - pv) / std::sqrt(q));
  }
  u.normalize();
  return LempertDevice(std::move(m), u, 0.0);
}

DiscPoint device_left_inverse(const LempertDevice& d, const BallPoint& x) {
  return DiscPoint(d.left_inverse(x.value()));
}

BallPoint device_project(const LempertDevice& d, const BallPoint& x) {
  return BallPoint(d.project(x.value()));
}

bool horosphere_membership(double size, const CVec& z) {
  if (!(size > 0.0)) fail(ErrorCode::invalid_argument, "horosphere size must be positive");
  return std::norm(1.0 - z(0)) < size * one_minus_sq(z.norm());
}

bool horosphere_membership(double size, const BallPoint& z) {
  return horosphere_membership(size, z.value());
}

BidiscProjections bidisc_projections_demo(cd z, cd w) {
  if (std::abs(z) >= 1.0 || std::abs(w) >= 1.0)
    fail(ErrorCode::invalid_argument, "bidisc point must have both coordinates in the unit disc");
  const cd mid = 0.5 * (z + w);
  return {{z, z}, {mid, mid}};
}

}  // namespace geolab
