#pragma once

// Independent reference formulas in affine coordinates, written directly from
// the curve equations without the library's homogeneous machinery.

#include <array>
#include <cmath>
#include <complex>
#include <optional>
#include <random>

#include "twistor/sphere.hpp"

namespace oracle {

using C = std::complex<double>;

struct XY {
  C x;
  C y;
};

// Finite d, finite nonzero a, finite t.
inline XY curve(C d, C a, C t) {
  return {(d - a * t) / (1.0 + a * std::conj(d) * t),
          (std::conj(a) * d - t) / (std::conj(a) + std::conj(d) * t)};
}

// d = infinity.
inline XY curve_at_infinity(C a, C t) { return {1.0 / (a * t), std::conj(a) / t}; }

// a = 0, finite nonzero d.
inline XY vertical(C d) { return {d, -1.0 / std::conj(d)}; }

inline C trajectory(C d, double R, C x) {
  const double n = std::norm(d);
  return -(d * (1.0 + R) * std::conj(x) + (R - n)) / ((n * R - 1.0) * std::conj(x) + std::conj(d) * (1.0 + R));
}

inline double chordal(C z, C w) {
  return std::abs(z - w) / std::sqrt((1.0 + std::norm(z)) * (1.0 + std::norm(w)));
}

inline double chordal_to_infinity(C z) { return 1.0 / std::sqrt(1.0 + std::norm(z)); }

inline double det4(std::array<std::array<double, 4>, 4> m) {
  // Laplace expansion along the first row.
  auto det3 = [](const std::array<std::array<double, 3>, 3>& b) {
    return b[0][0] * (b[1][1] * b[2][2] - b[1][2] * b[2][1]) - b[0][1] * (b[1][0] * b[2][2] - b[1][2] * b[2][0]) +
           b[0][2] * (b[1][0] * b[2][1] - b[1][1] * b[2][0]);
  };
  double det = 0.0;
  for (int c = 0; c < 4; ++c) {
    std::array<std::array<double, 3>, 3> minor{};
    for (int r = 1; r < 4; ++r) {
      int k = 0;
      for (int cc = 0; cc < 4; ++cc) {
        if (cc != c) minor[r - 1][k++] = m[r][cc];
      }
    }
    det += (c % 2 == 0 ? 1 : -1) * m[0][c] * det3(minor);
  }
  return det;
}

// Central-difference determinant of (Re d, Im d, Re a, Im a) -> (Re x, Im x, Re y, Im y).
inline double fd_jacobian(C d, C a, C t, double h = 1e-5) {
  auto f = [&](C dd, C aa) {
    const XY p = curve(dd, aa, t);
    return std::array<double, 4>{p.x.real(), p.x.imag(), p.y.real(), p.y.imag()};
  };
  const std::array<std::pair<C, C>, 4> dirs = {std::pair{C(1, 0), C(0)}, {C(0, 1), C(0)}, {C(0), C(1, 0)},
                                               {C(0), C(0, 1)}};
  std::array<std::array<double, 4>, 4> m{};
  for (int c = 0; c < 4; ++c) {
    const auto p = f(d + h * dirs[c].first, a + h * dirs[c].second);
    const auto q = f(d - h * dirs[c].first, a - h * dirs[c].second);
    for (int r = 0; r < 4; ++r) m[r][c] = (p[r] - q[r]) / (2 * h);
  }
  return det4(m);
}

// v = lim (y - x) / t along the curve, estimated at a small t.
inline C fiber_direction(C d, C a, double t = 1e-7) {
  const XY p = curve(d, a, C(t));
  return (p.y - p.x) / t;
}

inline C random_complex(std::mt19937_64& rng, double rmin, double rmax) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double r = rmin * std::pow(rmax / rmin, u(rng));
  return std::polar(r, 2 * M_PI * u(rng));
}

}  // namespace oracle
