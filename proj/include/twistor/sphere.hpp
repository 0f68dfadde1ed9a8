#pragma once

// Points of the Riemann sphere in homogeneous coordinates and (anti-)holomorphic
// fractional maps acting on them.

#include <array>
#include <complex>
#include <optional>

namespace twistor {

using Complex = std::complex<double>;

/// Absolute tolerance on the chordal metric used for approximate equality.
struct ChordalTolerance {
  double epsilon = 1e-9;

  ChordalTolerance() = default;
  explicit ChordalTolerance(double eps);
};

/// A point (z0 : z1) of the complex projective line.
///
/// The stored representative is canonical: the component of larger modulus is
/// exactly 1 (z0 wins ties), so the point at infinity is (1 : 0) and a finite
/// point z with |z| <= 1 is stored as (z : 1). Equality between points must
/// still be decided with chordal_distance(); two representatives of the same
/// point may differ in the last ulp.
class SpherePoint {
 public:
  /// The point 0.
  SpherePoint() : z0_(0.0), z1_(1.0) {}

  /// Throws Error(kDomain) for (0, 0) or non-finite components.
  SpherePoint(Complex z0, Complex z1);

  static SpherePoint finite(Complex z) { return SpherePoint(z, 1.0); }
  static SpherePoint infinity() { return SpherePoint(1.0, 0.0); }

  Complex z0() const { return z0_; }
  Complex z1() const { return z1_; }

  bool is_infinity() const { return z1_ == 0.0; }
  /// Affine value z0 / z1, or nullopt at infinity.
  std::optional<Complex> affine() const;
  /// |z0| / |z1|, +inf at infinity.
  double modulus() const;
  /// Euclidean norm of the stored homogeneous pair, in [1, sqrt(2)].
  double norm() const;

 private:
  Complex z0_;
  Complex z1_;
};

/// |z0(p) z1(q) - z1(p) z0(q)| / (|p| |q|), in [0, 1].
double chordal_distance(const SpherePoint& p, const SpherePoint& q);

bool approx_equal(const SpherePoint& p, const SpherePoint& q,
                  ChordalTolerance tol = {});

/// The antipodal map (z0 : z1) -> (-conj(z1) : conj(z0)).
SpherePoint antipodal(const SpherePoint& p);

/// z -> (p w0 + q w1 : r w0 + s w1) with w = conj(z) when conjugates_input is
/// set and w = z otherwise.
class FractionalMap {
 public:
  /// Determinants with modulus below kDegeneracyFloor * max|coefficient|^2
  /// are rejected.
  static constexpr double kDegeneracyFloor = 1e-12;

  /// Throws Error(kInvalidMap) for a degenerate coefficient matrix.
  FractionalMap(Complex p, Complex q, Complex r, Complex s,
                bool conjugates_input = false);

  static FractionalMap identity() { return FractionalMap(1.0, 0.0, 0.0, 1.0); }

  const std::array<Complex, 4>& coefficients() const { return c_; }
  bool conjugates_input() const { return conj_; }
  Complex determinant() const { return c_[0] * c_[3] - c_[1] * c_[2]; }

  SpherePoint operator()(const SpherePoint& z) const;

  FractionalMap inverse() const;

 private:
  std::array<Complex, 4> c_;
  bool conj_;
};

/// (f * g)(z) = f(g(z)); anti-holomorphic iff exactly one factor is.
FractionalMap operator*(const FractionalMap& f, const FractionalMap& g);

/// The antipodal map as a FractionalMap.
FractionalMap antipodal_map();

}  // namespace twistor
