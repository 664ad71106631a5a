#include "geolab/ball_region.hpp"

#include <cmath>
#include <sstream>

namespace geolab {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::string fmt_real(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

std::string fmt_point(const CVec& v) {
  std::ostringstream os;
  os.precision(17);
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i) os << ',';
    os << v(i).real() << (v(i).imag() < 0 ? "" : "+") << v(i).imag() << 'i';
  }
  return os.str();
}

void check_dim(int n) {
  if (n < 1 || n > kMaxDim)
    fail(ErrorCode::invalid_argument, "ball dimension must be in [1, " + std::to_string(kMaxDim) + "]");
}

CVec e1(int n) {
  CVec v = CVec::Zero(n);
  v(0) = 1.0;
  return v;
}

ConvexQuadratic horosphere_quadratic(int n, double size) {
  CMat h = size * CMat::Identity(n, n);
  h(0, 0) += 1.0;
  return ConvexQuadratic(h, e1(n), 1.0 - size);
}

ConvexQuadratic kobayashi_ball_quadratic(const BallPoint& center, double radius) {
  // (1 − t²)|1 − ⟨x, c⟩|² < (1 − ‖c‖²)(1 − ‖x‖²) with t = tanh r.
  const CVec& c = center.value();
  const int n = static_cast<int>(c.size());
  const double t = std::tanh(radius);
  const double q = 1.0 - t * t;
  const double c2 = c.squaredNorm();
  CMat h = q * (c * c.adjoint()) + (1.0 - c2) * CMat::Identity(n, n);
  return ConvexQuadratic(h, q * c, c2 - t * t);
}

// Uniform point of the horosphere, which is the Euclidean ellipsoid
// (1 + R)|x₁ − 1/(1 + R)|² + R‖x'‖² < R²/(1 + R).
CVec sample_horosphere(Rng& rng, int n, double size) {
  CVec y = uniform_in_ball(rng, n, 1.0);
  y(0) = 1.0 / (1.0 + size) + y(0) * (size / (1.0 + size));
  if (n > 1) y.tail(n - 1) *= std::sqrt(size / (1.0 + size));
  return y;
}

void axis_hints(int n, double depth, std::vector<CVec>& out) {
  for (double d = -depth; d <= depth + 1e-12; d += 0.5) {
    CVec x = CVec::Zero(n);
    x(0) = std::tanh(d);
    out.push_back(x);
  }
}

}  // namespace

ConvexQuadratic::ConvexQuadratic(CMat h, CVec g, double kappa)
    : h_(std::move(h)), g_(std::move(g)), kappa_(kappa), llt_(h_) {
  if (llt_.info() != Eigen::Success) fail(ErrorCode::invalid_argument, "quadratic form is not positive definite");
  h_inv_g_ = llt_.solve(g_);
}

double ConvexQuadratic::operator()(const CVec& x) const {
  return (x.dot(h_ * x)).real() - 2.0 * inner(x, g_).real() + kappa_;
}

double ConvexQuadratic::min_on(const Hyperplane& plane) const {
  const CVec& b = plane.normal;
  const CVec h_inv_b = llt_.solve(b);
  const double bhb = b.dot(h_inv_b).real();
  if (!(bhb > 0.0)) fail(ErrorCode::invalid_argument, "degenerate hyperplane normal");
  const cd lambda = (plane.offset - b.dot(h_inv_g_)) / bhb;
  return (*this)(h_inv_g_ + lambda * h_inv_b);
}

BallRegion BallRegion::whole_ball(int n) {
  check_dim(n);
  return BallRegion(WholeBall{n});
}

BallRegion BallRegion::kobayashi_ball(BallPoint center, double radius) {
  if (!(radius > 0.0) || !std::isfinite(radius))
    fail(ErrorCode::invalid_argument, "kobayashi_ball radius must be finite and positive");
  return BallRegion(KobayashiBall{std::move(center), radius});
}

BallRegion BallRegion::horosphere(int n, double size) {
  check_dim(n);
  if (!(size > 0.0)) fail(ErrorCode::invalid_argument, "horosphere size must be positive");
  return BallRegion(Horosphere{n, size});
}

BallRegion BallRegion::horosphere_difference(int n, double outer, double inner) {
  check_dim(n);
  if (!(inner > 0.0 && outer > inner))
    fail(ErrorCode::invalid_argument, "horosphere difference needs 0 < inner < outer");
  return BallRegion(HorosphereDifference{n, outer, inner});
}

BallRegion BallRegion::product_slice(int n, PlanarRegion planar) {
  check_dim(n);
  return BallRegion(ProductSlice{n, std::move(planar)});
}

BallRegion BallRegion::predicate(int n, std::string name, std::function<bool(const CVec&)> test,
                                 std::vector<CVec> hints) {
  check_dim(n);
  if (!test) fail(ErrorCode::invalid_argument, "predicate region needs a membership test");
  return BallRegion(Predicate{n, std::move(name), std::move(test), std::move(hints)});
}

int BallRegion::dim() const {
  return std::visit(overloaded{
                        [](const KobayashiBall& k) { return k.center.dim(); },
                        [](const auto& k) { return k.dim; },
                    },
                    kind_);
}

bool BallRegion::contains(const CVec& x) const {
  if (x.size() != dim()) fail(ErrorCode::dimension_mismatch, "point dimension does not match region");
  if (x.norm() >= 1.0) return false;
  return std::visit(
      overloaded{
          [](const WholeBall&) { return true; },
          [&](const KobayashiBall& k) { return kobayashi_distance(k.center.value(), x) < k.radius; },
          [&](const Horosphere& k) { return horosphere_membership(k.size, x); },
          [&](const HorosphereDifference& k) {
            return horosphere_membership(k.outer, x) && !horosphere_membership(k.inner, x);
          },
          [&](const ProductSlice& k) {
            return (k.dim == 1 || x.tail(k.dim - 1).squaredNorm() == 0.0) && k.planar.contains(x(0));
          },
          [&](const Predicate& k) { return k.test(x); },
      },
      kind_);
}

std::string BallRegion::kind_name() const {
  return std::visit(overloaded{
                        [](const WholeBall&) { return std::string("whole_ball"); },
                        [](const KobayashiBall&) { return std::string("kobayashi_ball"); },
                        [](const Horosphere&) { return std::string("horosphere"); },
                        [](const HorosphereDifference&) { return std::string("horosphere_difference"); },
                        [](const ProductSlice&) { return std::string("product_slice"); },
                        [](const Predicate&) { return std::string("predicate"); },
                    },
                    kind_);
}

std::string BallRegion::describe() const {
  return std::visit(
      overloaded{
          [](const WholeBall&) { return std::string("ball"); },
          [](const KobayashiBall& k) { return "kball " + fmt_point(k.center.value()) + " " + fmt_real(k.radius); },
          [](const Horosphere& k) { return "horosphere " + fmt_real(k.size); },
          [](const HorosphereDifference& k) { return "horodiff " + fmt_real(k.outer) + " " + fmt_real(k.inner); },
          [](const ProductSlice& k) { return "product " + k.planar.describe(); },
          [](const Predicate& k) { return "custom " + k.name; },
      },
      kind_);
}

std::vector<CVec> BallRegion::center_hints(double depth) const {
  const int n = dim();
  std::vector<CVec> out;
  std::visit(
      overloaded{
          [&](const WholeBall&) { out.push_back(CVec::Zero(n)); },
          [&](const KobayashiBall& k) { out.push_back(k.center.value()); },
          [&](const Horosphere&) { axis_hints(n, depth, out); },
          [&](const HorosphereDifference& k) {
            // Points of the level set halfway between the two horospheres, in
            // the real (x₁, x₂) plane.
            const double s = std::sqrt(k.outer * k.inner);
            for (double d = -depth; d <= depth + 1e-12; d += 0.25) {
              const double x1 = std::tanh(d);
              const double rest = 1.0 - x1 * x1 - (1.0 - x1) * (1.0 - x1) / s;
              if (rest < 0.0) continue;
              CVec x = CVec::Zero(n);
              x(0) = x1;
              if (n == 1) {
                if (rest < 1e-12) out.push_back(x);
                continue;
              }
              x(1) = std::sqrt(rest);
              out.push_back(x);
              x(1) = -x(1);
              out.push_back(x);
            }
            axis_hints(n, depth, out);
          },
          [&](const ProductSlice& k) {
            for (cd h : k.planar.center_hints(depth)) {
              CVec x = CVec::Zero(n);
              x(0) = h;
              out.push_back(x);
            }
          },
          [&](const Predicate& k) { out = k.hints; },
      },
      kind_);
  std::vector<CVec> inside;
  for (const CVec& h : out)
    if (h.size() == n && h.norm() < 1.0 - kBoundaryGuard && contains(h)) inside.push_back(h);
  return inside;
}

std::vector<CVec> BallRegion::sample(Rng& rng, std::size_t count) const {
  const int n = dim();
  std::vector<CVec> out;
  out.reserve(count);
  const std::size_t max_attempts = 200 * count + 1000;
  auto rejection = [&](auto&& propose) {
    for (std::size_t attempt = 0; attempt < max_attempts && out.size() < count; ++attempt) {
      CVec x = propose();
      if (contains(x)) out.push_back(std::move(x));
    }
  };
  std::visit(
      overloaded{
          [&](const WholeBall&) {
            for (std::size_t i = 0; i < count; ++i) out.push_back(clamp_to_ball(uniform_in_ball(rng, n, 1.0)));
          },
          [&](const KobayashiBall& k) {
            const double t = std::tanh(k.radius);
            while (out.size() < count) {
              CVec x = ball_translate(k.center.value(), uniform_in_ball(rng, n, t));
              if (contains(x)) out.push_back(std::move(x));
            }
          },
          [&](const Horosphere& k) { rejection([&] { return sample_horosphere(rng, n, k.size); }); },
          [&](const HorosphereDifference& k) { rejection([&] { return sample_horosphere(rng, n, k.outer); }); },
          [&](const ProductSlice&) {
            rejection([&] {
              CVec x = CVec::Zero(n);
              x(0) = uniform_in_ball(rng, 1, 1.0)(0);
              return x;
            });
          },
          [&](const Predicate&) { rejection([&] { return uniform_in_ball(rng, n, 1.0); }); },
      },
      kind_);
  return out;
}

std::optional<bool> BallRegion::meets(const Hyperplane& plane) const {
  const int n = dim();
  const CVec& b = plane.normal;
  const double bn = b.norm();
  if (b.size() != n) fail(ErrorCode::dimension_mismatch, "hyperplane dimension does not match region");
  if (!(bn > 0.0)) fail(ErrorCode::invalid_argument, "hyperplane normal must be nonzero");
  if (std::abs(plane.offset) >= bn) return false;  // misses the ball
  if (n == 1) {
    if (std::holds_alternative<Predicate>(kind_)) return std::nullopt;
    CVec x(1);
    x(0) = plane.offset / std::conj(b(0));
    return contains(x);
  }
  return std::visit(
      overloaded{
          [](const WholeBall&) -> std::optional<bool> { return true; },
          [&](const KobayashiBall& k) -> std::optional<bool> {
            return kobayashi_ball_quadratic(k.center, k.radius).min_on(plane) < 0.0;
          },
          [&](const Horosphere& k) -> std::optional<bool> {
            return horosphere_quadratic(n, k.size).min_on(plane) < 0.0;
          },
          [&](const HorosphereDifference& k) -> std::optional<bool> {
            // A slice of the outer horosphere is open, convex and of positive
            // dimension, so its relative boundary lies on the outer level set,
            // which is disjoint from the closed inner horosphere inside the ball.
            return horosphere_quadratic(n, k.outer).min_on(plane) < 0.0;
          },
          [&](const ProductSlice& k) -> std::optional<bool> {
            // The plane meets the axis 𝔻 × {0} at ζ with ζ b̄₁ = β.
            if (std::abs(b(0)) <= 1e-14 * bn) return std::abs(plane.offset) <= 1e-14 * bn;
            return k.planar.contains(plane.offset / std::conj(b(0)));
          },
          [](const Predicate&) -> std::optional<bool> { return std::nullopt; },
      },
      kind_);
}

}  // namespace geolab
