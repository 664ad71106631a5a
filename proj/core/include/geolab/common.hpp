#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>

#include <Eigen/Core>

namespace geolab {

using cd = std::complex<double>;

// Points of the ball live in C^n with n <= kMaxDim; the fixed upper bound keeps
// vectors on the stack.
inline constexpr int kMaxDim = 8;
using CVec = Eigen::Matrix<cd, Eigen::Dynamic, 1, 0, kMaxDim, 1>;
using CMat = Eigen::Matrix<cd, Eigen::Dynamic, Eigen::Dynamic, 0, kMaxDim, kMaxDim>;

// Points are clamped to norm <= 1 - kBoundaryGuard.
inline constexpr double kBoundaryGuard = 1e-12;

inline constexpr std::uint64_t kDefaultSeed = 0x5eed'b10c'0000'0001ULL;

enum class ErrorCode {
  invalid_argument,
  dimension_mismatch,
  degenerate_geodesic,
  unsupported_region,
  empty_region,
  containment_violation,
  hypothesis_violation,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& what);

// ⟨a, b⟩ = Σ a_i conj(b_i), conjugate-linear in the second slot.
inline cd inner(const CVec& a, const CVec& b) { return b.dot(a); }

// arctanh(rho) given rho and 1 - rho^2 computed without cancellation.
double stable_atanh(double rho, double one_minus_rho_sq);

// ---------------------------------------------------------------------------
// Seeded randomness. Every work item draws from its own substream so serial
// and parallel evaluation agree bit for bit.

using Rng = std::mt19937_64;

std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t index);
inline Rng make_rng(std::uint64_t seed, std::uint64_t index) {
  return Rng(substream_seed(seed, index));
}

double uniform01(Rng& rng);
double standard_normal(Rng& rng);

// Uniform point of the Euclidean ball of radius `radius` in C^n.
CVec uniform_in_ball(Rng& rng, int n, double radius);
// Uniform unit vector of C^n.
CVec uniform_unit_vector(Rng& rng, int n);
// Haar-random unitary n x n matrix.
CMat random_unitary(Rng& rng, int n);

}  // namespace geolab
