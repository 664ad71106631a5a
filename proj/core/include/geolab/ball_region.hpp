#pragma once

#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Cholesky>

#include "geolab/ball_geometry.hpp"
#include "geolab/planar_region.hpp"

namespace geolab {

/// Real quadratic q(x) = x*Hx − 2 Re⟨x, g⟩ + κ with H positive definite. The
/// convex catalogued regions are exactly {q < 0} ∩ 𝔹ⁿ.
class ConvexQuadratic {
 public:
  ConvexQuadratic(CMat h, CVec g, double kappa);

  double operator()(const CVec& x) const;
  /// Minimum of q over the affine hyperplane.
  double min_on(const Hyperplane& plane) const;

 private:
  CMat h_;
  CVec g_;
  double kappa_;
  Eigen::LLT<CMat> llt_;
  CVec h_inv_g_;
};

class BallRegion {
 public:
  struct WholeBall {
    int dim;
  };
  struct KobayashiBall {
    BallPoint center;
    double radius;
  };
  struct Horosphere {
    int dim;
    double size;
  };
  struct HorosphereDifference {
    int dim;
    double outer;
    double inner;
  };
  struct ProductSlice {
    int dim;
    PlanarRegion planar;  // X' × {0}
  };
  struct Predicate {
    int dim;
    std::string name;
    std::function<bool(const CVec&)> test;
    std::vector<CVec> hints;
  };
  using Kind =
      std::variant<WholeBall, KobayashiBall, Horosphere, HorosphereDifference, ProductSlice, Predicate>;

  static BallRegion whole_ball(int n);
  static BallRegion kobayashi_ball(BallPoint center, double radius);
  static BallRegion horosphere(int n, double size);
  static BallRegion horosphere_difference(int n, double outer, double inner);
  static BallRegion product_slice(int n, PlanarRegion planar);
  static BallRegion predicate(int n, std::string name, std::function<bool(const CVec&)> test,
                              std::vector<CVec> hints = {});

  int dim() const;
  bool contains(const CVec& x) const;
  bool contains(const BallPoint& x) const { return contains(x.value()); }

  const Kind& kind() const noexcept { return kind_; }
  std::string kind_name() const;
  std::string describe() const;

  /// Deterministic points of the region, including points at hyperbolic depth
  /// up to `depth` towards boundary contact.
  std::vector<CVec> center_hints(double depth) const;

  /// Up to `count` points of the region. Exact for kobayashi_ball and the
  /// whole ball, rejection sampling otherwise; may return fewer points.
  std::vector<CVec> sample(Rng& rng, std::size_t count) const;

  /// Whether the region meets the hyperplane, when this is decidable in closed
  /// form (every kind except predicate).
  std::optional<bool> meets(const Hyperplane& plane) const;

 private:
  explicit BallRegion(Kind kind) : kind_(std::move(kind)) {}
  Kind kind_;
};

}  // namespace geolab
