#include "geolab/planar_region.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace geolab {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::string fmt_complex(cd z) {
  std::ostringstream os;
  os.precision(17);
  os << z.real() << ',' << z.imag();
  return os.str();
}

std::string fmt_real(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

// Horodiscs sharing a boundary point, as (outer size, inner size, point).
struct Crescent {
  double outer;
  double inner;
  cd point;
};

std::optional<Crescent> as_crescent(const PlanarRegion::Difference& d) {
  const auto* o = std::get_if<PlanarRegion::Horodisc>(&d.outer->kind());
  const auto* i = std::get_if<PlanarRegion::Horodisc>(&d.inner->kind());
  if (!o || !i) return std::nullopt;
  if (std::abs(o->boundary_point - i->boundary_point) > 1e-15) return std::nullopt;
  if (!(i->size < o->size)) return std::nullopt;
  return Crescent{o->size, i->size, o->boundary_point};
}

void radial_hints(cd direction, double depth, std::vector<cd>& out) {
  for (double d = 0.5; d <= depth + 1e-12; d += 0.5) out.push_back(std::tanh(d) * direction);
}

}  // namespace

PlanarRegion PlanarRegion::euclid_disc(cd center, double radius) {
  if (!(radius > 0.0)) fail(ErrorCode::invalid_argument, "euclid_disc radius must be positive");
  if (std::abs(center) + radius > 1.0 + 1e-12)
    fail(ErrorCode::invalid_argument, "euclid_disc must lie inside the unit disc");
  return PlanarRegion(EuclidDisc{center, radius});
}

PlanarRegion PlanarRegion::hyper_ball(DiscPoint center, double radius) {
  if (!(radius > 0.0) || !std::isfinite(radius))
    fail(ErrorCode::invalid_argument, "hyper_ball radius must be finite and positive");
  return PlanarRegion(HyperBall{center, radius});
}

PlanarRegion PlanarRegion::horodisc(double size, cd boundary_point) {
  if (!(size > 0.0)) fail(ErrorCode::invalid_argument, "horodisc size must be positive");
  if (std::abs(std::abs(boundary_point) - 1.0) > 1e-12)
    fail(ErrorCode::invalid_argument, "horodisc boundary point must lie on the unit circle");
  return PlanarRegion(Horodisc{boundary_point / std::abs(boundary_point), size});
}

PlanarRegion PlanarRegion::annulus(double inner_radius) {
  if (!(inner_radius > 0.0 && inner_radius < 1.0))
    fail(ErrorCode::invalid_argument, "annulus inner radius must lie in (0, 1)");
  return PlanarRegion(Annulus{inner_radius});
}

PlanarRegion PlanarRegion::difference(PlanarRegion outer, PlanarRegion inner) {
  return PlanarRegion(Difference{std::make_shared<const PlanarRegion>(std::move(outer)),
                                 std::make_shared<const PlanarRegion>(std::move(inner))});
}

PlanarRegion PlanarRegion::predicate(std::string name, std::function<bool(cd)> test,
                                     std::vector<cd> hints) {
  if (!test) fail(ErrorCode::invalid_argument, "predicate region needs a membership test");
  return PlanarRegion(Predicate{std::move(name), std::move(test), std::move(hints)});
}

bool PlanarRegion::contains(cd z) const {
  if (std::abs(z) >= 1.0) return false;
  return std::visit(
      overloaded{
          [&](const EuclidDisc& k) { return std::abs(z - k.center) < k.radius; },
          [&](const HyperBall& k) { return poincare_distance(k.center, z) < k.radius; },
          [&](const Horodisc& k) { return horodisc_membership(k.boundary_point, k.size, z); },
          [&](const Annulus& k) { return std::abs(z) > k.inner_radius; },
          [&](const Difference& k) { return k.outer->contains(z) && !k.inner->contains(z); },
          [&](const Predicate& k) { return k.test(z); },
      },
      kind_);
}

std::string PlanarRegion::kind_name() const {
  return std::visit(overloaded{
                        [](const EuclidDisc&) { return std::string("euclid_disc"); },
                        [](const HyperBall&) { return std::string("hyper_ball"); },
                        [](const Horodisc&) { return std::string("horodisc"); },
                        [](const Annulus&) { return std::string("annulus"); },
                        [](const Difference&) { return std::string("difference"); },
                        [](const Predicate&) { return std::string("predicate"); },
                    },
                    kind_);
}

std::string PlanarRegion::describe() const {
  return std::visit(
      overloaded{
          [](const EuclidDisc& k) {
            return "euclid " + fmt_complex(k.center) + " " + fmt_real(k.radius);
          },
          [](const HyperBall& k) {
            return "hyperball " + fmt_complex(k.center.value()) + " " + fmt_real(k.radius);
          },
          [](const Horodisc& k) {
            std::string s = "horodisc " + fmt_real(k.size);
            if (k.boundary_point != cd(1.0, 0.0)) s += " " + fmt_complex(k.boundary_point);
            return s;
          },
          [](const Annulus& k) { return "annulus " + fmt_real(k.inner_radius); },
          [](const Difference& k) {
            if (auto c = as_crescent(k); c && c->point == cd(1.0, 0.0))
              return "crescent " + fmt_real(c->outer) + " " + fmt_real(c->inner);
            return "diff (" + k.outer->describe() + ") (" + k.inner->describe() + ")";
          },
          [](const Predicate& k) { return "custom " + k.name; },
      },
      kind_);
}

bool PlanarRegion::has_closed_form_density() const {
  return std::holds_alternative<EuclidDisc>(kind_) || std::holds_alternative<HyperBall>(kind_) ||
         std::holds_alternative<Horodisc>(kind_) || std::holds_alternative<Annulus>(kind_);
}

std::optional<EuclideanDisc> PlanarRegion::euclidean_realization() const {
  if (const auto* k = std::get_if<EuclidDisc>(&kind_)) return EuclideanDisc{k->center, k->radius};
  if (const auto* k = std::get_if<HyperBall>(&kind_)) return hyperball_euclidean(k->center, k->radius);
  if (const auto* k = std::get_if<Horodisc>(&kind_))
    return horodisc_euclidean(k->boundary_point, k->size);
  return std::nullopt;
}

std::optional<double> PlanarRegion::closed_form_bloch_radius() const {
  constexpr double inf = std::numeric_limits<double>::infinity();
  return std::visit(
      overloaded{
          [](const EuclidDisc& k) -> std::optional<double> {
            return euclidean_to_hyperbolic({k.center, k.radius}).radius;
          },
          [](const HyperBall& k) -> std::optional<double> { return k.radius; },
          [](const Horodisc&) -> std::optional<double> { return inf; },
          [](const Annulus&) -> std::optional<double> { return inf; },
          [](const Difference& k) -> std::optional<double> {
            // Horocycles with a common centre are equidistant: the band between
            // them has width log(R_out / R_in) / 2.
            if (auto c = as_crescent(k)) return 0.25 * std::log(c->outer / c->inner);
            return std::nullopt;
          },
          [](const Predicate&) -> std::optional<double> { return std::nullopt; },
      },
      kind_);
}

std::vector<cd> PlanarRegion::center_hints(double depth) const {
  std::vector<cd> out;
  std::visit(
      overloaded{
          [&](const EuclidDisc& k) {
            const HyperbolicDisc h = euclidean_to_hyperbolic({k.center, k.radius});
            out.push_back(std::isfinite(h.radius) ? h.center : k.center);
            if (!std::isfinite(h.radius) && std::abs(k.center) > 0.0)
              radial_hints(k.center / std::abs(k.center), depth, out);
          },
          [&](const HyperBall& k) { out.push_back(k.center.value()); },
          [&](const Horodisc& k) { radial_hints(k.boundary_point, depth, out); },
          [&](const Annulus& k) {
            const double mid = std::sqrt(k.inner_radius);
            for (int i = 0; i < 4; ++i)
              out.push_back(std::polar(mid, 0.5 * std::numbers::pi * i));
            radial_hints(1.0, depth, out);
          },
          [&](const Difference& k) {
            if (auto c = as_crescent(k)) {
              // Points on the horocycle halfway (in Busemann level) between the two.
              const double s = std::sqrt(c->outer * c->inner);
              const cd centre = c->point / (1.0 + s);
              const double radius = s / (1.0 + s);
              for (int i = 0; i < 8; ++i)
                out.push_back(centre - c->point * std::polar(radius, 0.25 * std::numbers::pi * i));
            }
            for (cd h : k.outer->center_hints(depth)) out.push_back(h);
          },
          [&](const Predicate& k) { out = k.hints; },
      },
      kind_);
  std::vector<cd> inside;
  for (cd h : out)
    if (std::abs(h) < 1.0 - kBoundaryGuard && contains(h)) inside.push_back(h);
  return inside;
}

double region_hyperbolic_density(const PlanarRegion& region, const DiscTangent& t) {
  const cd z = t.base.value();
  if (!region.has_closed_form_density())
    fail(ErrorCode::unsupported_region,
         "no closed-form hyperbolic density for region kind '" + region.kind_name() + "'");
  if (!region.contains(z)) fail(ErrorCode::invalid_argument, "tangent base lies outside the region");
  const double v = std::abs(t.vector);
  if (const auto* a = std::get_if<PlanarRegion::Annulus>(&region.kind())) {
    // Covering of the annulus by the strip 0 < Im < π through exp.
    const double log_r = std::log(a->inner_radius);
    const double r = std::abs(z);
    const double angle = std::numbers::pi * std::log(r) / log_r;
    return std::numbers::pi * v / (2.0 * r * (-log_r) * std::sin(angle));
  }
  const EuclideanDisc disc = *region.euclidean_realization();
  const double rho = disc.radius;
  return rho * v / ((rho - std::abs(z - disc.center)) * (rho + std::abs(z - disc.center)));
}

}  // namespace geolab
