#include "geolab/common.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/QR>

namespace geolab {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_argument: return "invalid_argument";
    case ErrorCode::dimension_mismatch: return "dimension_mismatch";
    case ErrorCode::degenerate_geodesic: return "degenerate_geodesic";
    case ErrorCode::unsupported_region: return "unsupported_region";
    case ErrorCode::empty_region: return "empty_region";
    case ErrorCode::containment_violation: return "containment_violation";
    case ErrorCode::hypothesis_violation: return "hypothesis_violation";
  }
  return "unknown";
}

void fail(ErrorCode code, const std::string& what) {
  throw Error(code, std::string(to_string(code)) + ": " + what);
}

double stable_atanh(double rho, double one_minus_rho_sq) {
  if (rho < 0.5) return std::atanh(rho);
  // atanh(rho) = log(1 + rho) - log(1 - rho^2) / 2
  return std::log1p(rho) - 0.5 * std::log(one_minus_rho_sq);
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(splitmix64(seed) ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

// The standard distributions are implementation-defined; these are not, which
// keeps reports identical across standard libraries.
double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double standard_normal(Rng& rng) {
  double u1 = uniform01(rng);
  while (u1 <= 0.0) u1 = uniform01(rng);
  const double u2 = uniform01(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

CVec uniform_unit_vector(Rng& rng, int n) {
  CVec v(n);
  double norm = 0.0;
  do {
    for (int i = 0; i < n; ++i) v(i) = cd(standard_normal(rng), standard_normal(rng));
    norm = v.norm();
  } while (norm < 1e-12);
  return v / norm;
}

CVec uniform_in_ball(Rng& rng, int n, double radius) {
  const CVec dir = uniform_unit_vector(rng, n);
  const double r = radius * std::pow(uniform01(rng), 1.0 / (2.0 * n));
  return r * dir;
}

CMat random_unitary(Rng& rng, int n) {
  CMat g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = cd(standard_normal(rng), standard_normal(rng));
  Eigen::HouseholderQR<CMat> qr(g);
  CMat q = qr.householderQ();
  const CMat r = qr.matrixQR();
  // Fix the phases so the distribution is Haar.
  for (int j = 0; j < n; ++j) {
    const cd d = r(j, j);
    const double ad = std::abs(d);
    if (ad > 0) q.col(j) *= d / ad;
  }
  return q;
}

}  // namespace geolab
