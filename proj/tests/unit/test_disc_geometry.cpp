#include <doctest.h>

#include "geolab/disc_geometry.hpp"
#include "geolab/planar_region.hpp"
#include "oracles.hpp"

using namespace geolab;

namespace {

cd random_disc_point(Rng& rng, double radius = 0.95) { return uniform_in_ball(rng, 1, radius)(0); }

MobiusDisc random_mobius(Rng& rng) {
  return MobiusDisc(random_disc_point(rng, 0.9), 2.0 * std::numbers::pi * uniform01(rng));
}

}  // namespace

TEST_CASE("poincare distance") {
  CHECK(poincare_distance(0.0, 0.0) == 0.0);
  CHECK(poincare_distance(0.0, 0.5) == doctest::Approx(oracle::radial_distance(0.5)).epsilon(1e-12));
  CHECK(poincare_distance(0.0, 0.9) == doctest::Approx(oracle::radial_distance(0.9)).epsilon(1e-10));
  CHECK(poincare_distance(cd(0.2, 0.3), cd(-0.4, 0.1)) == poincare_distance(cd(-0.4, 0.1), cd(0.2, 0.3)));

  SUBCASE("near the boundary stays finite and monotone") {
    const double a = poincare_distance(0.0, 1.0 - 1e-9);
    const double b = poincare_distance(0.0, 1.0 - 1e-10);
    CHECK(std::isfinite(b));
    CHECK(b > a);
  }
}

TEST_CASE("mobius maps are isometries and form a group") {
  Rng rng = make_rng(11, 0);
  double worst_iso = 0.0;
  double worst_group = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const MobiusDisc m = random_mobius(rng);
    const MobiusDisc m2 = random_mobius(rng);
    const cd z = random_disc_point(rng);
    const cd w = random_disc_point(rng);
    worst_iso = std::max(worst_iso, std::abs(poincare_distance(m(z), m(w)) - poincare_distance(z, w)));
    worst_group = std::max(worst_group, std::abs(mobius_apply(mobius_compose(m, m2), z).value() - m(m2(z))));
    worst_group = std::max(worst_group, std::abs(mobius_apply(mobius_invert(m), m(z)).value() - z));
  }
  CHECK(worst_iso < 1e-12);
  CHECK(worst_group < 1e-12);

  CHECK(std::abs(MobiusDisc::identity()(cd(0.3, -0.2)) - cd(0.3, -0.2)) == 0.0);
  CHECK(std::abs(MobiusDisc(0.5, 0.0)(0.5)) < 1e-16);
}

TEST_CASE("triangle inequality") {
  Rng rng = make_rng(11, 1);
  double slack = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const cd a = random_disc_point(rng), b = random_disc_point(rng), c = random_disc_point(rng);
    slack = std::min(slack, poincare_distance(a, b) + poincare_distance(b, c) - poincare_distance(a, c));
  }
  CHECK(slack >= -1e-12);
}

TEST_CASE("poincare metric") {
  CHECK(poincare_metric({0.0, 1.0}) == 1.0);
  CHECK(poincare_metric({0.5, 1.0}) == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
  CHECK(poincare_metric({0.5, 0.0}) == 0.0);
  const double d = oracle::central_difference(
      [](double h) { return h >= 0 ? poincare_distance(0.5, 0.5 + h) : -poincare_distance(0.5, 0.5 + h); }, 1e-6);
  CHECK(d == doctest::Approx(4.0 / 3.0).epsilon(1e-5));

  Rng rng = make_rng(11, 2);
  double worst = 0.0;
  for (int i = 0; i < 500; ++i) {
    const cd z = random_disc_point(rng, 0.9);
    const cd v = std::polar(1.0, 2.0 * std::numbers::pi * uniform01(rng));
    const double h = 1e-6;
    // Central difference: the chord through z has length about 2h|v|.
    worst = std::max(worst, std::abs(poincare_distance(z - h * v, z + h * v) / (2.0 * h) - poincare_metric({z, v})));
    CHECK(poincare_metric({z, 2.0 * v}) == doctest::Approx(2.0 * poincare_metric({z, v})).epsilon(1e-14));
  }
  CHECK(worst < 1e-5);
}

TEST_CASE("euclidean realization of hyperbolic balls") {
  const EuclideanDisc e = hyperball_euclidean(0.0, std::atanh(0.5));
  CHECK(std::abs(e.center) < 1e-15);
  CHECK(e.radius == doctest::Approx(0.5).epsilon(1e-15));

  const EuclideanDisc degenerate = hyperball_euclidean(0.0, 0.0);
  CHECK(degenerate.radius == 0.0);

  for (const auto& [c, r] : {std::pair<cd, double>{0.0, std::atanh(0.5)}, {0.3, 1.0}, {cd(-0.4, 0.5), 0.7}}) {
    const EuclideanDisc ball = hyperball_euclidean(c, r);
    int disagreements = 0;
    int compared = 0;
    for (cd z : oracle::square_grid(100)) {
      const double margin = poincare_distance(c, z) - r;
      if (std::abs(margin) <= 1e-9) continue;
      ++compared;
      if ((std::abs(z - ball.center) < ball.radius) != (margin < 0)) ++disagreements;
    }
    CHECK(compared > 7000);
    CHECK(disagreements == 0);
  }

  const HyperbolicDisc back = euclidean_to_hyperbolic(hyperball_euclidean(cd(0.2, -0.3), 0.8));
  CHECK(std::abs(back.center - cd(0.2, -0.3)) < 1e-12);
  CHECK(back.radius == doctest::Approx(0.8).epsilon(1e-12));
}

TEST_CASE("horodisc membership") {
  CHECK(horodisc_membership(1.0, 2.0, 0.0));
  CHECK_FALSE(horodisc_membership(1.0, 1.0, 0.0));
  CHECK_FALSE(horodisc_membership(1.0, 2.0, -0.9));
  CHECK_THROWS_AS(horodisc_membership(0.5, 2.0, 0.0), Error);

  // The horodisc is the Euclidean disc tangent at p with centre p/(1+R).
  for (double size : {0.5, 1.0, 2.0}) {
    int disagreements = 0;
    for (cd z : oracle::square_grid(100)) {
      const double lhs = std::norm(1.0 - z);
      const double rhs = size * (1.0 - std::norm(z));
      if (std::abs(lhs - rhs) <= 1e-9) continue;
      const bool inside = std::abs(z - 1.0 / (1.0 + size)) < size / (1.0 + size);
      if (inside != horodisc_membership(1.0, size, z)) ++disagreements;
    }
    CHECK(disagreements == 0);
    const EuclideanDisc e = horodisc_euclidean(1.0, size);
    CHECK(std::abs(e.center - 1.0 / (1.0 + size)) < 1e-15);
    CHECK(e.radius == doctest::Approx(size / (1.0 + size)));
  }

  // Other boundary points by rotation.
  const cd p = std::polar(1.0, 2.0);
  CHECK(horodisc_membership(p, 2.0, 0.5 * p) == horodisc_membership(1.0, 2.0, 0.5));
}

TEST_CASE("boundary guard clamps points") {
  const DiscPoint inside(0.5);
  CHECK_FALSE(inside.clamped());
  const DiscPoint outside(cd(3.0, 4.0));
  CHECK(outside.clamped());
  CHECK(std::abs(outside.value()) <= 1.0 - kBoundaryGuard + 1e-16);
  CHECK(std::arg(outside.value()) == doctest::Approx(std::arg(cd(3.0, 4.0))));
}

TEST_CASE("hyperbolic densities of catalogued regions") {
  CHECK(region_hyperbolic_density(PlanarRegion::euclid_disc(0.0, 0.5), {0.0, 1.0}) == doctest::Approx(2.0));
  CHECK(region_hyperbolic_density(PlanarRegion::whole_disc(), {0.5, 1.0}) == doctest::Approx(4.0 / 3.0));
  CHECK(region_hyperbolic_density(PlanarRegion::annulus(0.25), {0.5, 1.0}) ==
        doctest::Approx(oracle::annulus_density(0.25, 0.5, 1.0)).epsilon(1e-9));
  CHECK(region_hyperbolic_density(PlanarRegion::annulus(0.25), {0.5, 1.0}) ==
        doctest::Approx(std::numbers::pi / std::log(4.0)).epsilon(1e-12));

  SUBCASE("annulus density matches the covering-map oracle everywhere") {
    Rng rng = make_rng(11, 3);
    for (int i = 0; i < 200; ++i) {
      const double r = 0.05 + 0.8 * uniform01(rng);
      const double rho = r + (1.0 - r) * (0.05 + 0.9 * uniform01(rng));
      const cd z = std::polar(rho, 2.0 * std::numbers::pi * uniform01(rng));
      const cd v = std::polar(1.0 + uniform01(rng), 2.0 * std::numbers::pi * uniform01(rng));
      CHECK(region_hyperbolic_density(PlanarRegion::annulus(r), {z, v}) ==
            doctest::Approx(oracle::annulus_density(r, z, v)).epsilon(1e-7));
    }
  }

  SUBCASE("disc density matches the pulled-back distance") {
    // U = euclid_disc(c, t): ζ ↦ (ζ − c)/t maps U onto 𝔻.
    const cd c(0.1, 0.2);
    const double t = 0.6;
    const cd z(0.3, 0.1);
    const double h = 1e-6;
    const double fd = poincare_distance((z - c) / t, (z + h - c) / t) / h;
    CHECK(region_hyperbolic_density(PlanarRegion::euclid_disc(c, t), {z, 1.0}) == doctest::Approx(fd).epsilon(1e-5));
  }

  SUBCASE("smaller regions have larger densities") {
    Rng rng = make_rng(11, 4);
    for (int i = 0; i < 200; ++i) {
      const cd z = random_disc_point(rng, 0.39);
      const DiscTangent tv{z, std::polar(1.0, uniform01(rng) * 6.0)};
      CHECK(region_hyperbolic_density(PlanarRegion::euclid_disc(0.0, 0.4), tv) >=
            region_hyperbolic_density(PlanarRegion::euclid_disc(0.0, 0.6), tv) - 1e-12);
      // horodisc(1) is the disc of radius 1/2 about 1/2.
      const DiscTangent th{0.5 + 0.49 * random_disc_point(rng, 1.0), tv.vector};
      CHECK(region_hyperbolic_density(PlanarRegion::horodisc(1.0), th) >=
            region_hyperbolic_density(PlanarRegion::horodisc(2.0), th) - 1e-12);
    }
  }

  CHECK_THROWS_AS(region_hyperbolic_density(PlanarRegion::euclid_disc(0.0, 0.5), {0.7, 1.0}), Error);
  const PlanarRegion custom = PlanarRegion::predicate("half", [](cd z) { return z.real() > 0; });
  try {
    region_hyperbolic_density(custom, {0.5, 1.0});
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::unsupported_region);
  }
}
