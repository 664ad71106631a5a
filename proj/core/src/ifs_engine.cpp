#include "geolab/ifs_engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace geolab {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

constexpr std::uint64_t kPairStream = 0x5c4a'0000'0000'0001ULL;
constexpr std::uint64_t kContainmentStream = 0xc047'0000'0000'0001ULL;
constexpr double kCollapse = 1e-14;

CVec as_vec(cd z) {
  CVec v(1);
  v(0) = z;
  return v;
}

void check_unitary(const CMat& u) {
  if (u.rows() != u.cols()) fail(ErrorCode::invalid_argument, "unitary must be square");
  if ((u.adjoint() * u - CMat::Identity(u.rows(), u.cols())).norm() > 1e-10)
    fail(ErrorCode::invalid_argument, "matrix is not unitary");
}

}  // namespace

MapSpec MapSpec::disc_mobius_scale(MobiusDisc m, double s) {
  if (!(s > 0.0 && s <= 1.0)) fail(ErrorCode::invalid_argument, "disc_mobius_scale needs s in (0, 1]");
  return MapSpec(DiscMobiusScale{m, s});
}

MapSpec MapSpec::disc_affine_shrink(int j) {
  if (j < 1) fail(ErrorCode::invalid_argument, "disc_affine_shrink index must be >= 1");
  return MapSpec(DiscAffineShrink{j});
}

MapSpec MapSpec::ball_contraction(CMat unitary, double s, BallPoint center) {
  check_unitary(unitary);
  if (unitary.rows() != center.dim()) fail(ErrorCode::dimension_mismatch, "unitary and center dimensions differ");
  if (!(s > 0.0 && s <= 1.0)) fail(ErrorCode::invalid_argument, "ball_contraction needs s in (0, 1]");
  return MapSpec(BallContraction{std::move(unitary), s, std::move(center)});
}

MapSpec MapSpec::ball_identity(int n) { return ball_contraction(CMat::Identity(n, n), 1.0, BallPoint(n)); }

MapSpec MapSpec::product_embed(int n, MapSpec inner) {
  if (n < 1 || n > kMaxDim) fail(ErrorCode::invalid_argument, "product_embed dimension out of range");
  if (inner.domain_dim() != 1) fail(ErrorCode::dimension_mismatch, "product_embed needs a disc map");
  return MapSpec(ProductEmbed{n, std::make_shared<const MapSpec>(std::move(inner))});
}

MapSpec MapSpec::composite(std::vector<MapSpec> maps) {
  if (maps.empty()) fail(ErrorCode::invalid_argument, "composite needs at least one map");
  const int n = maps.front().domain_dim();
  for (const MapSpec& m : maps)
    if (m.domain_dim() != n) fail(ErrorCode::dimension_mismatch, "composite maps must share a domain");
  return MapSpec(Composite{std::move(maps)});
}

MapSpec MapSpec::constant(CVec value) {
  BallPoint checked(value);
  return MapSpec(Constant{checked.value()});
}

int MapSpec::domain_dim() const {
  return std::visit(overloaded{
                        [](const DiscMobiusScale&) { return 1; },
                        [](const DiscAffineShrink&) { return 1; },
                        [](const BallContraction& k) { return k.center.dim(); },
                        [](const ProductEmbed& k) { return k.dim; },
                        [](const Composite& k) { return k.maps.front().domain_dim(); },
                        [](const Constant& k) { return static_cast<int>(k.value.size()); },
                    },
                    kind_);
}

std::string MapSpec::describe() const {
  std::ostringstream os;
  os.precision(17);
  std::visit(overloaded{
                 [&](const DiscMobiusScale& k) {
                   os << "disc_mobius_scale(a=" << k.m.a().value().real() << ',' << k.m.a().value().imag()
                      << ", theta=" << k.m.theta() << ", s=" << k.s << ')';
                 },
                 [&](const DiscAffineShrink& k) { os << "disc_affine_shrink(j=" << k.j << ')'; },
                 [&](const BallContraction& k) {
                   os << "ball_contraction(n=" << k.center.dim() << ", s=" << k.s << ')';
                 },
                 [&](const ProductEmbed& k) { os << "product_embed(n=" << k.dim << ", " << k.inner->describe() << ')'; },
                 [&](const Composite& k) {
                   os << "composite(";
                   for (std::size_t i = 0; i < k.maps.size(); ++i) os << (i ? ", " : "") << k.maps[i].describe();
                   os << ')';
                 },
                 [&](const Constant& k) { os << "constant(n=" << k.value.size() << ')'; },
             },
             kind_);
  return os.str();
}

std::optional<PlanarRegion> MapSpec::planar_image() const {
  if (const auto* k = std::get_if<DiscMobiusScale>(&kind_); k && k->s < 1.0)
    return PlanarRegion::hyper_ball(DiscPoint(k->m(0.0)), std::atanh(k->s));
  if (const auto* k = std::get_if<DiscAffineShrink>(&kind_))
    return PlanarRegion::euclid_disc(0.0, 1.0 - std::ldexp(1.0, -k->j));
  return std::nullopt;
}

std::optional<BallRegion> MapSpec::ball_image() const {
  if (const auto* k = std::get_if<BallContraction>(&kind_); k && k->s < 1.0)
    return BallRegion::kobayashi_ball(k->center, std::atanh(k->s));
  return std::nullopt;
}

CVec apply_map(const MapSpec& m, const CVec& z) {
  if (z.size() != m.domain_dim()) fail(ErrorCode::dimension_mismatch, "point does not lie in the map's domain");
  if (z.norm() >= 1.0) fail(ErrorCode::invalid_argument, "point lies outside the unit ball");
  return std::visit(
      overloaded{
          [&](const MapSpec::DiscMobiusScale& k) { return as_vec(k.m(k.s * z(0))); },
          [&](const MapSpec::DiscAffineShrink& k) { return CVec((1.0 - std::ldexp(1.0, -k.j)) * z); },
          [&](const MapSpec::BallContraction& k) {
            return clamp_to_ball(ball_translate(k.center.value(), k.s * (k.unitary * z)));
          },
          [&](const MapSpec::ProductEmbed& k) {
            CVec out = CVec::Zero(k.dim);
            out(0) = apply_map(*k.inner, z(0));
            return out;
          },
          [&](const MapSpec::Composite& k) {
            CVec x = z;
            for (const MapSpec& f : k.maps) x = apply_map(f, x);
            return x;
          },
          [&](const MapSpec::Constant& k) { return k.value; },
      },
      m.kind());
}

cd apply_map(const MapSpec& m, cd z) { return apply_map(m, as_vec(z))(0); }

std::string_view to_string(LimitClass c) {
  switch (c) {
    case LimitClass::constant: return "Constant";
    case LimitClass::non_constant: return "NonConstant";
    case LimitClass::undecided: return "Undecided";
  }
  return "Undecided";
}

double hyperbolic_diameter(const std::vector<CVec>& points) {
  double d = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t k = i + 1; k < points.size(); ++k) d = std::max(d, kobayashi_distance(points[i], points[k]));
  return d;
}

RunReport compose_run(const IFSSpec& ifs, const std::vector<CVec>& probe, const RunOptions& opts) {
  if (!ifs.generator) fail(ErrorCode::invalid_argument, "IFS has no generator");
  if (probe.size() < 2) fail(ErrorCode::invalid_argument, "probe set needs at least two points");
  for (const CVec& p : probe)
    if (p.size() != ifs.dim) fail(ErrorCode::dimension_mismatch, "probe point dimension does not match the IFS");
  for (std::size_t i = 0; i < probe.size(); ++i)
    for (std::size_t k = i + 1; k < probe.size(); ++k)
      if (probe[i] == probe[k]) fail(ErrorCode::invalid_argument, "probe points must be pairwise distinct");

  RunReport rep;
  rep.ifs_name = ifs.name;
  rep.probe_points = probe;
  std::vector<CVec> images = probe;
  double prev = hyperbolic_diameter(images);
  rep.diam_trace.emplace_back(0, prev);
  std::size_t stable = 0;
  for (std::size_t j = 1; j <= opts.max_iter; ++j) {
    const MapSpec f = ifs.generator(j);
    for (CVec& x : images) x = apply_map(f, x);
    const double d = hyperbolic_diameter(images);
    rep.diam_trace.emplace_back(j, d);
    rep.max_diameter_increase = std::max(rep.max_diameter_increase, d - prev);
    rep.iterations_used = j;
    if (rep.classification == LimitClass::undecided) {
      if (d < opts.tol_constant) {
        rep.classification = LimitClass::constant;
        rep.decided_at = j;
      } else {
        const bool steady = d > opts.nonconstant_floor && prev > 0.0 && std::abs(d - prev) / prev < opts.tol_stable;
        stable = steady ? stable + 1 : 0;
        if (stable >= opts.stable_window) {
          rep.classification = LimitClass::non_constant;
          rep.decided_at = j;
        }
      }
      if (rep.classification != LimitClass::undecided && !opts.run_to_max) {
        prev = d;
        break;
      }
    }
    prev = d;
  }
  rep.limit_samples = images;
  rep.limit_estimate = images.front();
  return rep;
}

SchwarzPickResult schwarz_pick_check(const MapSpec& g, const PlanarRegion& u, std::size_t pairs, std::uint64_t seed,
                                     const EstimatorConfig& cfg) {
  if (g.domain_dim() != 1) fail(ErrorCode::dimension_mismatch, "schwarz_pick_check needs a disc map");
  SchwarzPickResult out;
  out.mu = lipschitz_constant(u, cfg).mu_estimate;
  out.pairs = pairs;
  Rng rng = make_rng(seed, kPairStream);
  out.max_slack = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < pairs; ++i) {
    const cd zeta = uniform_in_ball(rng, 1, 0.999)(0);
    const cd eta = uniform_in_ball(rng, 1, 0.999)(0);
    const cd gz = apply_map(g, zeta);
    const cd gw = apply_map(g, eta);
    if (!u.contains(gz) || !u.contains(gw))
      fail(ErrorCode::containment_violation, "sampled image of " + g.describe() + " leaves " + u.describe());
    const double slack = poincare_distance(gz, gw) - out.mu * poincare_distance(zeta, eta);
    out.max_slack = std::max(out.max_slack, slack);
  }
  if (pairs == 0) out.max_slack = 0.0;
  return out;
}

ContractionRun uniform_contraction_run(const IFSSpec& ifs, const std::function<PlanarRegion(std::size_t)>& targets,
                                       double bloch_bound, const std::vector<CVec>& probe,
                                       const ContractionOptions& opts) {
  if (ifs.dim != 1) fail(ErrorCode::dimension_mismatch, "uniform_contraction_run works on disc systems");
  ContractionRun out;
  out.bloch_bound = bloch_bound;
  Rng rng = make_rng(opts.seed, kContainmentStream);
  const std::size_t horizon = opts.run.max_iter;
  for (std::size_t j = 1; j <= horizon; ++j) {
    const MapSpec f = ifs.generator(j);
    const PlanarRegion w = targets(j);
    const double r = w.closed_form_bloch_radius().value_or(std::numeric_limits<double>::infinity());
    out.max_target_radius = std::max(out.max_target_radius, r);
    if (!(r <= bloch_bound + 1e-12)) out.hypothesis_holds = false;
    for (std::size_t i = 0; i < opts.containment_samples; ++i) {
      const cd z = uniform_in_ball(rng, 1, 1.0 - 1e-9)(0);
      if (!w.contains(apply_map(f, z)))
        fail(ErrorCode::containment_violation,
             "image of map " + std::to_string(j) + " leaves its target " + w.describe());
    }
  }
  // The fit needs the trace past burn-in, which fast systems reach only after
  // the Constant decision.
  RunOptions run_opts = opts.run;
  run_opts.run_to_max = true;
  out.run = compose_run(ifs, probe, run_opts);

  std::vector<double> xs;
  std::vector<double> ys;
  for (const auto& [j, d] : out.run.diam_trace) {
    if (j <= opts.burn_in || !(d > opts.rate_floor)) continue;
    xs.push_back(static_cast<double>(j));
    ys.push_back(std::log(d));
  }
  if (xs.size() >= 2) {
    const double n = static_cast<double>(xs.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      sx += xs[i];
      sy += ys[i];
      sxx += xs[i] * xs[i];
      sxy += xs[i] * ys[i];
    }
    out.rate_fit = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  }
  out.counterexample = out.hypothesis_holds && out.run.classification == LimitClass::non_constant;
  return out;
}

cd ReducedSystem::apply_reduced(std::size_t j, cd zeta) const {
  if (j < 1 || j > steps_completed) fail(ErrorCode::invalid_argument, "reduced map index out of range");
  const CVec x = devices[j - 1].geodesic(zeta);
  return devices[j].left_inverse(apply_map(maps[j - 1], x));
}

ReducedSystem reduce_system(const IFSSpec& ifs, const BallPoint& z, const BallPoint& w, std::size_t steps) {
  if (z.dim() != ifs.dim || w.dim() != ifs.dim) fail(ErrorCode::dimension_mismatch, "points do not match the IFS");
  ReducedSystem rs;
  rs.devices.push_back(geodesic_through(z, w));
  rs.t_params.push_back(rs.devices.back().t_param());
  rs.orbit_z.push_back(z.value());
  rs.orbit_w.push_back(w.value());
  const double t1 = rs.t_params.front();
  cd chain_zero = 0.0;
  cd chain_t = t1;
  auto anchor = [&](const LempertDevice& d, const CVec& fz, const CVec& fw) {
    const double r0 = (d.geodesic(0.0) - fz).norm();
    const double rt = (d.geodesic(d.t_param()) - fw).norm();
    rs.max_anchor_residual = std::max({rs.max_anchor_residual, r0, rt});
  };
  anchor(rs.devices.back(), z.value(), w.value());

  for (std::size_t j = 1; j <= steps; ++j) {
    const MapSpec f = ifs.generator(j);
    const CVec fz = apply_map(f, rs.orbit_z.back());
    const CVec fw = apply_map(f, rs.orbit_w.back());
    if (kobayashi_distance(fz, fw) <= kCollapse || (fz - fw).norm() == 0.0) {
      rs.collapsed = true;
      break;
    }
    LempertDevice next = geodesic_through(BallPoint(fz), BallPoint(fw));
    anchor(next, fz, fw);
    rs.orbit_z.push_back(fz);
    rs.orbit_w.push_back(fw);
    rs.maps.push_back(f);
    rs.t_params.push_back(next.t_param());
    rs.tracked_zero.push_back(next.left_inverse(fz));
    rs.tracked_t.push_back(next.left_inverse(fw));
    rs.devices.push_back(std::move(next));
    rs.steps_completed = j;
    chain_zero = rs.apply_reduced(j, chain_zero);
    chain_t = rs.apply_reduced(j, chain_t);
    rs.chain_zero.push_back(chain_zero);
    rs.chain_t.push_back(chain_t);
    rs.max_tracking_residual = std::max({rs.max_tracking_residual, std::abs(chain_zero - rs.tracked_zero.back()),
                                         std::abs(chain_t - rs.tracked_t.back())});
  }
  return rs;
}

std::vector<StepBound> reduced_image_bound(const ReducedSystem& rs, const BallRegion& x, const DeviceSampleConfig& dcfg,
                                           const EstimatorConfig& ecfg) {
  std::vector<StepBound> out;
  for (std::size_t j = 1; j <= rs.steps_completed; ++j) {
    if (!x.contains(rs.orbit_z[j]) || !x.contains(rs.orbit_w[j]))
      fail(ErrorCode::containment_violation, "orbit leaves " + x.describe() + " at step " + std::to_string(j));
    DeviceSampleConfig one = dcfg;
    one.num_devices = 1;
    const CertifierReport rep =
        certify_devices(CertifyMode::one_bloch, x, {{rs.devices[j], DeviceOrigin::supplied}}, one, ecfg);
    out.push_back({j, rep.max_radius, rep.unbounded});
  }
  return out;
}

double shrink_product_constant(std::size_t terms) {
  double c = 1.0;
  for (std::size_t k = 1; k <= terms; ++k) c *= 1.0 - std::ldexp(1.0, -static_cast<int>(k));
  return c;
}

IFSSpec example_product_ifs(int n) {
  return {"product-shrink", n,
          [n](std::size_t j) { return MapSpec::product_embed(n, MapSpec::disc_affine_shrink(static_cast<int>(j))); }};
}

}  // namespace geolab
