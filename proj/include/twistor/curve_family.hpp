#pragma once

// The real (1,1,1)-curves L_{d,a} through the diagonals over t = 0 and
// t = infinity, their (0,0,1) limits, and the trajectory curves swept by
// L_{d,a} in a fixed fiber.

#include <array>

#include "twistor/sphere.hpp"

namespace twistor {

/// A point (x, y, t) of P^1 x P^1 x P^1.
struct SpacePoint {
  SpherePoint x;
  SpherePoint y;
  SpherePoint t;
};

/// Largest componentwise chordal distance.
double chordal_distance(const SpacePoint& p, const SpacePoint& q);

/// Strata of the parameter space M = M+ u K u M-.
enum class Stratum {
  kA1,  // 0 < |a| < 1
  kK,   // |a| = 1
  kA2,  // 1 < |a| < infinity
  kC1,  // a = 0, reducible limit as a -> 0
  kC2,  // a = infinity, reducible limit as a -> infinity
};

enum class Family { kPlus, kMinus };

const char* to_string(Stratum s);
const char* to_string(Family f);

/// Default tolerance on ||a| - 1| for membership in K.
inline constexpr double kUnitCircleTolerance = 1e-9;

/// Parameter (d, a) of a member of the family.
///
/// For finite d, a is the coefficient of x = (d - a t) / (1 + a conj(d) t);
/// for d = infinity it is the coefficient of x = 1 / (a t). a is projective so
/// that a = 0 and a = infinity name the two reducible limits.
struct LineParams {
  SpherePoint d;
  SpherePoint a;

  static LineParams finite(Complex d, Complex a) {
    return {SpherePoint::finite(d), SpherePoint::finite(a)};
  }
};

Stratum classify(const LineParams& params, double unit_tol = kUnitCircleTolerance);
bool in_family(const LineParams& params, Family family,
               double unit_tol = kUnitCircleTolerance);

/// A parameter written against an arbitrary representative (d0, d1) of d.
///
/// Rescaling the representative by lambda multiplies `a` by lambda / conj(lambda);
/// in this form the curve is
///   x = (d0 - a conj(d1) t) / (d1 + a conj(d0) t),
///   y = (conj(a) d0 - conj(d1) t) / (conj(a) d1 + conj(d0) t),
/// which is regular at d = infinity and at every finite d.
struct LineFrame {
  Complex d0;
  Complex d1;
  SpherePoint a;
};

LineFrame to_frame(const LineParams& params);
LineParams from_frame(const LineFrame& frame);

/// Distance between the curves named by two parameters: chordal distance of
/// the d's and of the a's after aligning representatives of d.
double line_distance(const LineParams& p, const LineParams& q);

/// The intersection of the curve with the fiber over t.
///
/// a = 0 gives the vertical curve (d, -1/conj(d), t). Members of C2 are
/// rejected with Error(kDomain); their vertical component is
/// limit_curve(d, kTowardInfinity).vertical.
SpacePoint eval_line(const LineParams& params, const SpherePoint& t);

bool on_Q(const SpacePoint& p, ChordalTolerance tol = {});

/// The anti-holomorphic map x -> y whose graph contains L_{d,a} n X_t for
/// every a:
///   y = -(d (1+R) conj(x) + R - |d|^2) / ((|d|^2 R - 1) conj(x) + conj(d) (1+R)),
/// with R = |t|^2. Throws Error(kInvalidFiber) for t in {0, infinity}.
FractionalMap trajectory_map(const SpherePoint& d, const SpherePoint& t);

SpherePoint eval_trajectory(const SpherePoint& d, const SpherePoint& t,
                            const SpherePoint& x);

/// c = (d - x) / (conj(x) d + 1). x must be finite.
SpherePoint trajectory_coordinate(const SpherePoint& d, const SpherePoint& x);

/// The trajectory written through c: b = R / conj(c) - c, then
/// y = -(b - x (1+R)) / (conj(x) b + 1 + R). x must be finite and R > 0.
SpherePoint eval_trajectory_factored(const SpherePoint& c, const SpherePoint& x,
                                     double R);

enum class LimitDirection { kTowardZero, kTowardInfinity };

/// A component of a reducible limit other than its vertical (0,0,1) curve.
struct LimitComponent {
  std::array<int, 3> degree;
  SpacePoint anchor;
};

/// lim L_{d,a} as a -> 0 (C1) or a -> infinity (C2).
struct ReducibleLimit {
  LineParams vertical;  // (d', 0): the (0,0,1) component x = d'
  Stratum stratum;      // kC1 or kC2
  std::array<LimitComponent, 2> extra_components;
};

ReducibleLimit limit_curve(const SpherePoint& d, LimitDirection direction);

/// Structural equality: stratum, degrees, and vertical/anchor points within
/// tolerance.
bool same_limit(const ReducibleLimit& p, const ReducibleLimit& q,
                ChordalTolerance tol = {});

}  // namespace twistor
