#include <doctest.h>

#include "geolab/ball_geometry.hpp"
#include "geolab/disc_geometry.hpp"
#include "geolab/ifs_engine.hpp"
#include "oracles.hpp"

using namespace geolab;

namespace {

CVec vec(std::initializer_list<cd> xs) {
  CVec v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (cd x : xs) v(i++) = x;
  return v;
}

// 1 − tanh² k(z, w) = (1 − ‖z‖²)(1 − ‖w‖²)/|1 − ⟨z, w⟩|².
double distance_oracle(const CVec& z, const CVec& w) {
  const double q = (1.0 - z.squaredNorm()) * (1.0 - w.squaredNorm()) / std::norm(1.0 - w.dot(z));
  return std::atanh(std::sqrt(std::max(0.0, 1.0 - q)));
}

double metric_oracle(const CVec& z, const CVec& v) {
  const double g = 1.0 - z.squaredNorm();
  return std::sqrt(v.squaredNorm() / g + std::norm(z.dot(v)) / (g * g));
}

CVec random_point(Rng& rng, int n, double radius = 0.95) { return uniform_in_ball(rng, n, radius); }

LempertDevice random_device(Rng& rng, int n) {
  const CVec z = random_point(rng, n);
  CVec w = random_point(rng, n);
  while ((w - z).norm() < 1e-3) w = random_point(rng, n);
  return geodesic_through(BallPoint(z), BallPoint(w));
}

cd random_zeta(Rng& rng, double radius = 0.95) { return uniform_in_ball(rng, 1, radius)(0); }

}  // namespace

TEST_CASE("ball mobius maps") {
  const CVec z = vec({cd(0.1, 0.2), cd(-0.3, 0.1)});
  CHECK((ball_mobius(BallPoint(2))(z) - z).norm() == 0.0);

  Rng rng = make_rng(21, 0);
  double at_a = 0.0, at_zero = 0.0, involution = 0.0, round_trip = 0.0;
  for (int n : {1, 2, 3}) {
    for (int i = 0; i < 100; ++i) {
      const CVec a = random_point(rng, n);
      const BallMobius m = ball_mobius(BallPoint(a));
      at_a = std::max(at_a, m(a).norm());
      at_zero = std::max(at_zero, (m(CVec::Zero(n)) - a).norm());
      const CVec x = random_point(rng, n);
      involution = std::max(involution, (m(m(x)) - x).norm());
    }
  }
  for (int i = 0; i < 1000; ++i) {
    const int n = 1 + i % 3;
    const BallMobius m(BallPoint(random_point(rng, n)), random_unitary(rng, n));
    const CVec x = random_point(rng, n);
    round_trip = std::max(round_trip, (ball_mobius_invert(m)(m(x)) - x).norm());
    round_trip = std::max(round_trip, (ball_mobius_apply(ball_mobius_invert(m), ball_mobius_apply(m, BallPoint(x)))
                                           .value() -
                                       x)
                                          .norm());
  }
  CHECK(at_a < 1e-13);
  CHECK(at_zero < 1e-13);
  CHECK(involution < 1e-12);
  CHECK(round_trip < 1e-12);
}

TEST_CASE("kobayashi distance") {
  CHECK(kobayashi_distance(vec({0, 0}), vec({0.5, 0})) == doctest::Approx(poincare_distance(0.0, 0.5)).epsilon(1e-15));
  CHECK(kobayashi_distance(vec({0.3, cd(0, 0.2)}), vec({0.3, cd(0, 0.2)})) == 0.0);
  CHECK_THROWS_AS(kobayashi_distance(vec({0, 0}), vec({0.5})), Error);

  Rng rng = make_rng(21, 1);
  double vs_oracle = 0.0, unitary = 0.0, mobius = 0.0, one_dim = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const int n = 2 + i % 2;
    const CVec z = random_point(rng, n), w = random_point(rng, n);
    const double d = kobayashi_distance(z, w);
    vs_oracle = std::max(vs_oracle, std::abs(d - distance_oracle(z, w)) / std::max(1.0, d));
    const CMat u = random_unitary(rng, n);
    unitary = std::max(unitary, std::abs(kobayashi_distance(CVec(u * z), CVec(u * w)) - d));
    if (i < 200) {
      const BallMobius m(BallPoint(random_point(rng, n, 0.9)), u);
      mobius = std::max(mobius, std::abs(kobayashi_distance(m(z), m(w)) - d));
    }
    const cd a = random_zeta(rng), b = random_zeta(rng);
    one_dim = std::max(one_dim, std::abs(kobayashi_distance(vec({a}), vec({b})) - poincare_distance(a, b)));
  }
  CHECK(vs_oracle < 1e-9);
  CHECK(unitary < 1e-12);
  CHECK(mobius < 1e-11);
  CHECK(one_dim < 1e-12);

  SUBCASE("slices carry the disc distance") {
    double worst = 0.0;
    const std::vector<cd> grid = oracle::polar_grid(50, 0.98);
    for (std::size_t i = 0; i < grid.size(); i += 7)
      for (std::size_t k = 0; k < grid.size(); k += 3)
        worst = std::max(worst, std::abs(kobayashi_distance(vec({grid[i], 0, 0}), vec({grid[k], 0, 0})) -
                                         poincare_distance(grid[i], grid[k])));
    CHECK(worst < 1e-12);
  }
}

TEST_CASE("kobayashi metric") {
  CHECK(kobayashi_metric({BallPoint{0.0, 0.0}, vec({1, 0})}) == 1.0);
  CHECK(kobayashi_metric({BallPoint{0.5, 0.0}, vec({1, 0})}) == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
  CHECK(kobayashi_metric({BallPoint{0.5, 0.0}, vec({0, 1})}) ==
        doctest::Approx(1.0 / std::sqrt(0.75)).epsilon(1e-15));

  Rng rng = make_rng(21, 2);
  double fd = 0.0, closed = 0.0, one_dim = 0.0;
  for (int i = 0; i < 500; ++i) {
    const int n = 2 + i % 2;
    const CVec z = random_point(rng, n, 0.9);
    const CVec v = uniform_unit_vector(rng, n);
    const double h = 1e-6;
    const double m = kobayashi_metric({BallPoint(z), v});
    fd = std::max(fd, std::abs(kobayashi_distance(CVec(z - h * v), CVec(z + h * v)) / (2.0 * h) - m));
    closed = std::max(closed, std::abs(m - metric_oracle(z, v)));
    const cd a = random_zeta(rng, 0.9);
    one_dim = std::max(one_dim, std::abs(kobayashi_metric({BallPoint{a}, vec({1.0})}) - poincare_metric({a, 1.0})));
  }
  CHECK(fd < 1e-5);
  CHECK(closed < 1e-12);
  CHECK(one_dim < 1e-12);
}

TEST_CASE("geodesic through two points") {
  const LempertDevice d = geodesic_through(BallPoint{0.0, 0.0}, BallPoint{0.5, 0.0});
  CHECK(d.t_param() == doctest::Approx(0.5).epsilon(1e-15));
  Rng rng = make_rng(21, 3);
  for (int i = 0; i < 100; ++i) {
    const cd zeta = random_zeta(rng);
    CHECK((d.geodesic(zeta) - vec({zeta, 0})).norm() < 1e-15);
    const CVec x = random_point(rng, 2);
    CHECK(std::abs(d.left_inverse(x) - x(0)) < 1e-15);
  }
  CHECK(std::abs(d.left_inverse(vec({0.3, 0.4})) - 0.3) < 1e-15);
  CHECK((d.project(vec({0.3, 0.4})) - vec({0.3, 0.0})).norm() < 1e-15);

  try {
    geodesic_through(BallPoint{0.2, 0.1}, BallPoint{0.2, 0.1});
    FAIL("expected a degenerate-geodesic error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::degenerate_geodesic);
  }

  double endpoint = 0.0, isometry = 0.0;
  for (int i = 0; i < 500; ++i) {
    const int n = 2 + i % 2;
    const CVec z = random_point(rng, n), w = random_point(rng, n);
    const LempertDevice g = geodesic_through(BallPoint(z), BallPoint(w));
    endpoint = std::max(endpoint, (g.geodesic(0.0) - z).norm());
    endpoint = std::max(endpoint, (g.geodesic(g.t_param()) - w).norm());
    CHECK(g.t_param() == doctest::Approx(std::tanh(kobayashi_distance(z, w))).epsilon(1e-12));
    const cd a = random_zeta(rng), b = random_zeta(rng);
    isometry = std::max(isometry, std::abs(kobayashi_distance(g.geodesic(a), g.geodesic(b)) - poincare_distance(a, b)));
  }
  CHECK(endpoint < 1e-12);
  CHECK(isometry < 1e-11);
}

TEST_CASE("geodesic with prescribed tangent") {
  const LempertDevice d = geodesic_tangent({BallPoint{0.0, 0.0, 0.0}, vec({1, 0, 0})});
  CHECK((d.geodesic(cd(0.3, 0.2)) - vec({cd(0.3, 0.2), 0, 0})).norm() < 1e-15);
  CHECK_THROWS_AS(geodesic_tangent({BallPoint{0.1, 0.0}, vec({0, 0})}), Error);

  Rng rng = make_rng(21, 4);
  double angle = 0.0;
  double gap = 0.0;
  for (int i = 0; i < 200; ++i) {
    const int n = 2 + i % 2;
    const CVec z = random_point(rng, n, 0.9);
    const CVec v = uniform_unit_vector(rng, n);
    const LempertDevice g = geodesic_tangent({BallPoint(z), v});
    const double h = 1e-7;
    const CVec deriv = (g.geodesic(h) - g.geodesic(-h)) / (2.0 * h);
    // Positive real multiple of v: compare the normalized vectors.
    angle = std::max(angle, (deriv.normalized() - v).norm());

    if (i < 20) {
      // Same image set as the geodesic through z and φ(0.5): the sample of one
      // lies on the other.
      const LempertDevice through = geodesic_through(BallPoint(z), BallPoint(g.geodesic(0.5)));
      for (int k = 0; k < 100; ++k) {
        const CVec p = g.geodesic(std::polar(0.9 * k / 100.0, 0.37 * k));
        gap = std::max(gap, (through.project(p) - p).norm());
      }
    }
  }
  CHECK(angle < 1e-6);
  CHECK(gap < 1e-9);
}

TEST_CASE("device identities") {
  Rng rng = make_rng(21, 5);
  double left = 0.0, idem = 0.0, fixes = 0.0, slack = 0.0, fiber = 0.0;
  for (int i = 0; i < 200; ++i) {
    const int n = 2 + i % 2;
    const LempertDevice d = random_device(rng, n);
    for (int k = 0; k < 5; ++k) {
      const cd zeta = random_zeta(rng);
      const CVec p = d.geodesic(zeta);
      left = std::max(left, std::abs(d.left_inverse(p) - zeta));
      fixes = std::max(fixes, (d.project(p) - p).norm());
      const CVec x = random_point(rng, n), y = random_point(rng, n);
      idem = std::max(idem, (d.project(d.project(x)) - d.project(x)).norm());
      slack = std::min(slack, kobayashi_distance(x, y) -
                                  poincare_distance(d.left_inverse(x), d.left_inverse(y)));
      // Fibers are affine: moving x inside its fiber hyperplane keeps ρ̃(x).
      const Hyperplane h = d.fiber(d.left_inverse(x));
      fiber = std::max(fiber, std::abs(inner(x, h.normal) - h.offset));
      CVec t = uniform_unit_vector(rng, n);
      t -= inner(t, h.normal) / h.normal.squaredNorm() * h.normal;
      const CVec moved = x + 0.01 * (1.0 - x.norm()) * t;
      fiber = std::max(fiber, std::abs(d.left_inverse(moved) - d.left_inverse(x)));
    }
  }
  CHECK(left < 1e-12);
  CHECK(fixes < 1e-12);
  CHECK(idem < 1e-12);
  CHECK(slack >= -1e-11);
  CHECK(fiber < 1e-12);
}

TEST_CASE("horosphere membership") {
  CHECK(horosphere_membership(2.0, BallPoint{0.0, 0.0}));
  CHECK_FALSE(horosphere_membership(1.0, BallPoint{0.0, 0.0}));
  CHECK(horosphere_membership(2.0, BallPoint{0.9, 0.0}));
  CHECK_THROWS_AS(horosphere_membership(0.0, BallPoint{0.0, 0.0}), Error);
  CHECK_THROWS_AS(horosphere_membership(-1.0, BallPoint{0.0, 0.0}), Error);
  // Slice through the first axis is the horodisc.
  for (cd z : oracle::polar_grid(40))
    CHECK(horosphere_membership(2.0, vec({z, 0})) == horodisc_membership(1.0, 2.0, z));
}

TEST_CASE("two retractions of the bidisc onto the diagonal") {
  const BidiscProjections same = bidisc_projections_demo(0.2, 0.2);
  CHECK(same.first == std::pair<cd, cd>{0.2, 0.2});
  CHECK(same.second == std::pair<cd, cd>{0.2, 0.2});
  const BidiscProjections p = bidisc_projections_demo(0.4, 0.0);
  CHECK(p.first == std::pair<cd, cd>{0.4, 0.4});
  CHECK(p.second == std::pair<cd, cd>{0.2, 0.2});
  CHECK(p.first != p.second);

  Rng rng = make_rng(21, 6);
  for (int i = 0; i < 1000; ++i) {
    const cd z = random_zeta(rng), w = random_zeta(rng);
    const BidiscProjections once = bidisc_projections_demo(z, w);
    const BidiscProjections first_again = bidisc_projections_demo(once.first.first, once.first.second);
    const BidiscProjections second_again = bidisc_projections_demo(once.second.first, once.second.second);
    CHECK(first_again.first == once.first);
    CHECK(second_again.second == once.second);
  }
}

TEST_CASE("catalogue self-maps of the ball do not expand distances") {
  Rng rng = make_rng(21, 7);
  double slack = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const int n = 2 + i % 2;
    const MapSpec f = i % 3 == 0 ? MapSpec::ball_contraction(random_unitary(rng, n), 0.1 + 0.8 * uniform01(rng),
                                                             BallPoint(random_point(rng, n, 0.8)))
                      : i % 3 == 1 ? MapSpec::product_embed(n, MapSpec::disc_affine_shrink(1 + i % 7))
                                   : MapSpec::ball_identity(n);
    const CVec z = random_point(rng, n), w = random_point(rng, n);
    slack = std::min(slack, kobayashi_distance(z, w) - kobayashi_distance(apply_map(f, z), apply_map(f, w)));
  }
  CHECK(slack >= -1e-11);
}
