#include "geolab/disc_geometry.hpp"

#include <cmath>
#include <limits>

namespace geolab {

namespace {

double one_minus_sq(double r) { return (1.0 - r) * (1.0 + r); }

struct Su11 {
  cd a, b, c, d;
};

Su11 to_matrix(const MobiusDisc& m) {
  const cd rot = std::polar(1.0, m.theta());
  const cd a = m.a().value();
  return {rot, -rot * a, -std::conj(a), cd(1.0, 0.0)};
}

MobiusDisc from_matrix(const Su11& m) {
  cd rot = m.a / m.d;
  rot /= std::abs(rot);
  const cd a = -m.b / m.a;
  return MobiusDisc(DiscPoint(a), std::arg(rot));
}

}  // namespace

cd clamp_to_disc(cd z) {
  const double r = std::abs(z);
  const double limit = 1.0 - kBoundaryGuard;
  if (r > limit) return z * (limit / r);
  return z;
}

DiscPoint::DiscPoint(cd z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
    fail(ErrorCode::invalid_argument, "non-finite disc point");
  z_ = clamp_to_disc(z);
  clamped_ = z_ != z;
}

cd MobiusDisc::operator()(cd z) const {
  const cd a = a_.value();
  return std::polar(1.0, theta_) * (z - a) / (1.0 - std::conj(a) * z);
}

DiscPoint mobius_apply(const MobiusDisc& m, DiscPoint z) { return DiscPoint(m(z.value())); }

MobiusDisc mobius_compose(const MobiusDisc& outer, const MobiusDisc& inner) {
  const Su11 p = to_matrix(outer);
  const Su11 q = to_matrix(inner);
  return from_matrix({p.a * q.a + p.b * q.c, p.a * q.b + p.b * q.d,
                      p.c * q.a + p.d * q.c, p.c * q.b + p.d * q.d});
}

MobiusDisc mobius_invert(const MobiusDisc& m) {
  const cd rot = std::polar(1.0, m.theta());
  return MobiusDisc(DiscPoint(-rot * m.a().value()), -m.theta());
}

cd disc_translate(cd c, cd w) { return (w + c) / (1.0 + std::conj(c) * w); }

double poincare_distance(DiscPoint z, DiscPoint w) {
  const cd zv = z.value();
  const cd wv = w.value();
  const cd den = 1.0 - std::conj(wv) * zv;
  const double den_abs = std::abs(den);
  const double rho = std::abs(zv - wv) / den_abs;
  const double gap =
      one_minus_sq(std::abs(zv)) * one_minus_sq(std::abs(wv)) / (den_abs * den_abs);
  return stable_atanh(rho, gap);
}

double poincare_metric(const DiscTangent& t) {
  return std::abs(t.vector) / one_minus_sq(std::abs(t.base.value()));
}

EuclideanDisc hyperball_euclidean(DiscPoint center, double r) {
  if (!(r >= 0.0) || !std::isfinite(r))
    fail(ErrorCode::invalid_argument, "hyperbolic radius must be finite and >= 0");
  const cd c = center.value();
  const double t = std::tanh(r);
  const double c2 = std::norm(c);
  const double denom = 1.0 - t * t * c2;
  return {c * (1.0 - t * t) / denom, t * (1.0 - c2) / denom};
}

bool horodisc_membership(cd boundary_point, double size, DiscPoint z) {
  if (std::abs(std::abs(boundary_point) - 1.0) > 1e-12)
    fail(ErrorCode::invalid_argument, "horodisc boundary point must lie on the unit circle");
  if (!(size > 0.0)) fail(ErrorCode::invalid_argument, "horodisc size must be positive");
  const cd zv = z.value();
  return std::norm(boundary_point - zv) < size * one_minus_sq(std::abs(zv));
}

EuclideanDisc horodisc_euclidean(cd boundary_point, double size) {
  return {boundary_point / (1.0 + size), size / (1.0 + size)};
}

HyperbolicDisc euclidean_to_hyperbolic(const EuclideanDisc& disc) {
  const double s = std::abs(disc.center);
  if (disc.radius <= 0.0) return {disc.center, 0.0};
  if (s + disc.radius >= 1.0 - 1e-15)
    return {disc.center, std::numeric_limits<double>::infinity()};
  const cd dir = s > 0.0 ? disc.center / s : cd(1.0, 0.0);
  const double lo = std::atanh(s - disc.radius);
  const double hi = std::atanh(s + disc.radius);
  return {std::tanh(0.5 * (lo + hi)) * dir, 0.5 * (hi - lo)};
}

}  // namespace geolab
