#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "geolab/disc_geometry.hpp"

namespace geolab {

/// A catalogued subset of the unit disc. Every kind has a total membership
/// test; euclid_disc, hyper_ball, horodisc and annulus also carry a closed-form
/// hyperbolic density.
class PlanarRegion {
 public:
  struct EuclidDisc {
    cd center;
    double radius;
  };
  struct HyperBall {
    DiscPoint center;
    double radius;
  };
  struct Horodisc {
    cd boundary_point;
    double size;
  };
  struct Annulus {
    double inner_radius;  // the set r < |z| < 1
  };
  struct Difference {
    std::shared_ptr<const PlanarRegion> outer;
    std::shared_ptr<const PlanarRegion> inner;
  };
  struct Predicate {
    std::string name;
    std::function<bool(cd)> test;
    std::vector<cd> hints;
  };
  using Kind = std::variant<EuclidDisc, HyperBall, Horodisc, Annulus, Difference, Predicate>;

  static PlanarRegion euclid_disc(cd center, double radius);
  static PlanarRegion whole_disc() { return euclid_disc(0.0, 1.0); }
  static PlanarRegion hyper_ball(DiscPoint center, double radius);
  static PlanarRegion horodisc(double size, cd boundary_point = 1.0);
  static PlanarRegion annulus(double inner_radius);
  static PlanarRegion difference(PlanarRegion outer, PlanarRegion inner);
  static PlanarRegion predicate(std::string name, std::function<bool(cd)> test,
                                std::vector<cd> hints = {});

  bool contains(cd z) const;
  bool contains(DiscPoint z) const { return contains(z.value()); }

  const Kind& kind() const noexcept { return kind_; }
  std::string kind_name() const;
  /// Text in the CLI region grammar (predicates print their name).
  std::string describe() const;

  bool has_closed_form_density() const;
  /// Bloch radius when a closed form is known; +inf for non-Bloch regions.
  std::optional<double> closed_form_bloch_radius() const;
  /// Euclidean disc realization of euclid_disc, hyper_ball and horodisc.
  std::optional<EuclideanDisc> euclidean_realization() const;

  /// Deterministic candidate centres for estimators: hyperbolic centres, points
  /// along geodesics towards tangency points up to `depth` from the origin.
  std::vector<cd> center_hints(double depth) const;

 private:
  explicit PlanarRegion(Kind kind) : kind_(std::move(kind)) {}
  Kind kind_;
};

/// κ_U(z; v) for catalogued U. Errors: base outside U, unsupported kind.
double region_hyperbolic_density(const PlanarRegion& region, const DiscTangent& t);

}  // namespace geolab
