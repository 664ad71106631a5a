#include "geolab/bloch_estimator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "geolab/ball_geometry.hpp"

namespace geolab {

namespace {

constexpr double kMarchStep = 0.05;
constexpr int kAscentStarts = 3;
constexpr int kAscentIterations = 80;
constexpr std::uint64_t kDirectionStream = 0x7261'7973'0000'0001ULL;

std::vector<CVec> ray_directions(int n, const EstimatorConfig& cfg) {
  const std::size_t m = cfg.boundary_samples;
  std::vector<CVec> dirs;
  dirs.reserve(m);
  if (n == 1) {
    for (std::size_t k = 0; k < m; ++k) {
      CVec v(1);
      v(0) = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(m));
      dirs.push_back(v);
    }
    return dirs;
  }
  for (int k = 0; k < n && dirs.size() < m; ++k) {
    for (cd unit : {cd(1, 0), cd(-1, 0), cd(0, 1), cd(0, -1)}) {
      if (dirs.size() >= m) break;
      CVec v = CVec::Zero(n);
      v(k) = unit;
      dirs.push_back(v);
    }
  }
  Rng rng = make_rng(cfg.seed, kDirectionStream);
  while (dirs.size() < m) dirs.push_back(uniform_unit_vector(rng, n));
  return dirs;
}

CVec ray_point(const CVec& c, const CVec& v, double s) { return ball_translate(c, std::tanh(s) * v); }

double exit_along(const Membership& contains, const CVec& c, const CVec& v, double limit, double tol) {
  double lo = 0.0;
  double hi = limit;
  bool crossed = false;
  for (double s = kMarchStep;; s += kMarchStep) {
    const double sc = std::min(s, limit);
    if (!contains(ray_point(c, v, sc))) {
      hi = sc;
      crossed = true;
      break;
    }
    lo = sc;
    if (sc >= limit) break;
  }
  if (!crossed) return limit;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (contains(ray_point(c, v, mid)))
      lo = mid;
    else
      hi = mid;
  }
  return lo;
}

struct Scan {
  double radius = 0.0;
  int arg_min = -1;
  int arg_second = -1;
};

// Minimum exit distance over the rays, each marched only as far as the running
// minimum. Stops as soon as the minimum falls to `floor`.
Scan scan(const Membership& contains, const CVec& c, const std::vector<CVec>& dirs, double limit,
          double floor, double tol) {
  Scan out;
  out.radius = limit;
  double second = std::numeric_limits<double>::infinity();
  for (int k = 0; k < static_cast<int>(dirs.size()); ++k) {
    const double e = exit_along(contains, c, dirs[k], out.radius, tol);
    if (e < out.radius) {
      second = out.radius;
      out.arg_second = out.arg_min;
      out.radius = e;
      out.arg_min = k;
    } else if (e < second && k != out.arg_min) {
      second = e;
      out.arg_second = k;
    }
    if (out.radius <= floor) break;
  }
  return out;
}

std::vector<CVec> ascent_moves(const Scan& s, const std::vector<CVec>& dirs) {
  std::vector<CVec> moves;
  if (s.arg_min < 0) return moves;
  moves.push_back(-dirs[s.arg_min]);
  if (s.arg_second >= 0) {
    CVec both = dirs[s.arg_min] + dirs[s.arg_second];
    if (both.norm() > 1e-9) moves.push_back(-both.normalized());
    moves.push_back(-dirs[s.arg_second]);
  }
  return moves;
}

}  // namespace

void EstimatorConfig::validate() const {
  if (center_samples < 1) fail(ErrorCode::invalid_argument, "center_samples must be >= 1");
  if (boundary_samples < 1) fail(ErrorCode::invalid_argument, "boundary_samples must be >= 1");
  if (!(radius_tolerance > 0.0)) fail(ErrorCode::invalid_argument, "radius_tolerance must be > 0");
  if (!(radius_cap > 0.0) || !std::isfinite(radius_cap))
    fail(ErrorCode::invalid_argument, "radius_cap must be finite and > 0");
}

double inscribed_radius_at(int dim, const Membership& contains, const CVec& c, double limit,
                           const EstimatorConfig& cfg) {
  if (!contains(c)) return 0.0;
  return scan(contains, c, ray_directions(dim, cfg), limit, -1.0, cfg.radius_tolerance).radius;
}

BlochReport estimate_inscribed_radius(int dim, const Membership& contains,
                                      const std::vector<CVec>& candidates, const EstimatorConfig& cfg) {
  cfg.validate();
  const std::vector<CVec> dirs = ray_directions(dim, cfg);
  const double cap = cfg.radius_cap;
  const double tol = cfg.radius_tolerance;

  BlochReport report;
  report.radius_cap = cap;
  report.witness_center = CVec::Zero(dim);

  std::vector<double> value(candidates.size(), -1.0);
  double best = -1.0;
  std::size_t used = 0;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const CVec& c = candidates[i];
    if (c.size() != dim) fail(ErrorCode::dimension_mismatch, "candidate dimension does not match");
    ++used;
    if (!contains(c)) continue;
    value[i] = scan(contains, c, dirs, cap, best, tol).radius;
    if (value[i] > best) {
      best = value[i];
      report.witness_center = c;
      report.monotone_trace.emplace_back(used, best);
    }
  }
  if (best < 0.0) {
    report.empty = true;
    report.samples_used = used;
    report.monotone_trace.emplace_back(used, 0.0);
    return report;
  }

  std::vector<std::size_t> order(candidates.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return value[a] > value[b]; });

  for (int start = 0; start < kAscentStarts && start < static_cast<int>(order.size()); ++start) {
    if (value[order[start]] < 0.0 || best >= cap) break;
    CVec c = candidates[order[start]];
    Scan s = scan(contains, c, dirs, cap, -1.0, tol);
    double delta = 0.1;
    for (int it = 0; it < kAscentIterations && delta >= 0.25 * tol && s.radius < cap; ++it) {
      bool improved = false;
      for (const CVec& move : ascent_moves(s, dirs)) {
        const CVec next = ball_translate(c, std::tanh(delta) * move);
        ++used;
        if (!contains(next)) continue;
        const Scan t = scan(contains, next, dirs, cap, s.radius, tol);
        if (t.radius > s.radius) {
          c = next;
          s = t;
          improved = true;
          break;
        }
      }
      delta = improved ? 1.5 * delta : 0.5 * delta;
    }
    if (s.radius > best) {
      best = s.radius;
      report.witness_center = c;
      report.monotone_trace.emplace_back(used, best);
    }
  }

  report.samples_used = used;
  report.witness_radius = best;
  report.unbounded = best >= cap;
  report.radius_estimate = best;
  if (report.monotone_trace.empty() || report.monotone_trace.back().first != used)
    report.monotone_trace.emplace_back(used, best);
  return report;
}

std::vector<CVec> random_depth_points(Rng& rng, int dim, std::size_t count, double max_depth) {
  std::vector<CVec> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double d = max_depth * uniform01(rng);
    const CVec u = uniform_unit_vector(rng, dim);
    out.push_back(clamp_to_ball(std::tanh(d) * u));
  }
  return out;
}

}  // namespace geolab
