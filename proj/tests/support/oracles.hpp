#pragma once

// Independent reference computations for the tests. Nothing here calls into
// the library's geometry code.

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <vector>

namespace oracle {

using cd = std::complex<double>;

/// Composite Simpson rule with n (even) panels.
inline double simpson(const std::function<double(double)>& f, double a, double b, int n) {
  if (n % 2) ++n;
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

/// Poincaré distance from 0 to r > 0 as the integral of the density 1/(1 − t²)
/// along the radius.
inline double radial_distance(double r, double step = 1e-5) {
  const int n = static_cast<int>(std::ceil(r / step));
  return simpson([](double t) { return 1.0 / (1.0 - t * t); }, 0.0, r, n);
}

/// Central difference of a scalar function along a complex direction.
inline double central_difference(const std::function<double(double)>& f, double h) {
  return (f(h) - f(-h)) / (2.0 * h);
}

/// Hyperbolic density of {r < |z| < 1} at z in direction v, through the
/// covering chain z ↦ log z (strip of width L = log 1/r) ↦ exp(iπ w / L)
/// (upper half plane) ↦ Cayley map to the disc centred at the image of z. The
/// derivative of the chain is taken numerically.
inline double annulus_density(double r, cd z, cd v) {
  const double width = std::log(1.0 / r);
  const auto to_half_plane = [&](cd x) {
    const cd w = std::log(x) - std::log(r);
    return std::exp(cd(0.0, std::numbers::pi) * w / width);
  };
  const cd q = to_half_plane(z);
  const auto chain = [&](cd x) {
    const cd p = to_half_plane(x);
    return (p - q) / (p - std::conj(q));
  };
  const double h = 1e-6;
  const cd d = (chain(z + h * v) - chain(z - h * v)) / (2.0 * h);
  return std::abs(d);  // the chain sends z to 0, where the disc density is 1
}

/// Π_{k=1}^{n} (1 − 2^{−k}).
inline double partial_product(int n) {
  double c = 1.0;
  for (int k = 1; k <= n; ++k) c *= 1.0 - std::ldexp(1.0, -k);
  return c;
}

/// Disc Möbius involution exchanging a and 0, on real a.
inline cd disc_involution(double a, cd z) { return (a - z) / (1.0 - a * z); }

/// Points of a polar grid with n radii in (0, 1) and n angles.
inline std::vector<cd> polar_grid(int n, double max_radius = 1.0) {
  std::vector<cd> out;
  out.reserve(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k)
      out.push_back(std::polar(max_radius * (i + 0.5) / n, 2.0 * std::numbers::pi * k / n));
  return out;
}

/// Points of a square grid of [−1, 1]² restricted to the open disc.
inline std::vector<cd> square_grid(int n) {
  std::vector<cd> out;
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      const cd z(-1.0 + (2.0 * i + 1.0) / n, -1.0 + (2.0 * k + 1.0) / n);
      if (std::abs(z) < 1.0) out.push_back(z);
    }
  return out;
}

}  // namespace oracle
