#pragma once

// The fiberwise incidence map u(d, a) = L_{d,a} n X_t, its Jacobian, and its
// inverse: the line of M+ (or M-) through a given point.

#include <array>

#include "twistor/curve_family.hpp"
#include "twistor/error.hpp"
#include "twistor/symmetry.hpp"

namespace twistor {

/// L_{d,a} n X_t for t not in {0, infinity}. Members of C2 meet X_t in their
/// vertical component (-1/conj(d), d, t).
SpacePoint incidence_map(const LineParams& params, const SpherePoint& t);

/// Coordinates in which jacobian() differentiates u.
enum class Chart {
  kDA,          // (d, a)
  kInfD,        // (e, b) with d = 1/e, a = b conj(e) / e; used at d = infinity
  kDInfA,       // (d, 1/a); used at a = infinity
  kInfDInfA,    // both
};

const char* to_string(Chart chart);

struct JacobianValue {
  double value;
  Chart chart;
};

/// Determinant of the real derivative of (d, a) -> (x, y) in the coordinates
/// (Re d, Im d, Re a, Im a) -> (Re x, Im x, Re y, Im y):
///
///   (1+|d|^2)^2 (1+|t|^2)^2 |t|^2 (|a|^4 - 1) / (|1 + a conj(d) t|^4 |a + d conj(t)|^4).
///
/// Exactly zero on K, negative on A1 and positive on A2. At d = infinity or
/// a = infinity the matching chart of `Chart` is used. Throws
/// Error(kInvalidFiber) for t in {0, infinity} and Error(kChart) where u is
/// singular in every chart ((d, a) = (0, 0) and (infinity, infinity)).
JacobianValue jacobian(const LineParams& params, const SpherePoint& t,
                       double unit_tol = kUnitCircleTolerance);

/// Intermediate values of solve_line_through.
struct SolverTrace {
  SpherePoint b;                            // (1+R)(x - y) / (1 + conj(x) y)
  std::array<SpherePoint, 2> c_candidates;  // roots of R/conj(c) - c = b, |c| <= sqrt(R) first
  std::array<LineParams, 2> params_candidates;
  Family chosen_family = Family::kPlus;
  double R = 0.0;
  bool rotated = false;          // solved after x -> -1/x to keep |x| <= 1
  bool ill_conditioned = false;  // chordal(x, y) <= 100 epsilon
  double roundtrip_error = 0.0;
};

class SolveError : public Error {
 public:
  SolveError(ErrorKind kind, const std::string& what, SolverTrace trace)
      : Error(kind, what), trace_(std::move(trace)) {}

  const SolverTrace& trace() const noexcept { return trace_; }

 private:
  SolverTrace trace_;
};

struct SolveResult {
  LineParams params;
  SolverTrace trace;
};

/// The unique member of `family` through p = (x, y, t).
///
/// Both roots c of R/conj(c) - c = b are turned into parameters and the one
/// whose |a| lies on the requested side of 1 is returned. Errors:
/// kInvalidFiber for t in {0, infinity}; kOnDiagonal when
/// chordal(x, y) <= epsilon; kNumericalFailure (as SolveError, with the trace)
/// when the forward image misses p by more than 10 epsilon.
SolveResult solve_line_through(const SpacePoint& p, Family family,
                               ChordalTolerance tol = {});

/// A point of the t = 0 fiber off Q+: the base point d on the diagonal and the
/// normal direction v = lim (y - x)/t along the curve.
///
/// For finite d, L_{d,a} arrives with v = (1+|d|^2)(a - 1/conj(a)); for
/// d = infinity the coordinates (-1/x, -1/y) give v = a - 1/conj(a). v = 0 is
/// the direction of Q (reached only as |a| -> 1) and v = infinity is the
/// direction tangent to X_0, through which the C1 members pass.
struct FiberZeroPoint {
  SpherePoint d;
  SpherePoint v;
};

/// Throws Error(kLiesOnQ) on K and Error(kDomain) on C2.
FiberZeroPoint fiber_zero_point(const LineParams& params,
                                double unit_tol = kUnitCircleTolerance);

/// Inverse of fiber_zero_point on one family: with w = v / (1+|d|^2),
/// |a| = (-|w| + sqrt(|w|^2 + 4)) / 2 and arg a = arg(-w) on M+,
/// |a| = (|w| + sqrt(|w|^2 + 4)) / 2 and arg a = arg(w) on M-.
/// v = infinity gives a = 0 (M+) or a = infinity (M-); v = 0 throws
/// Error(kLiesOnQ).
LineParams solve_fiber_zero(const FiberZeroPoint& fp, Family family);

/// The induced action on the t = 0 fiber: d -> g1(d), v -> conj(g3) g1'(d) v.
FiberZeroPoint act_on_fiber_point(const GroupElement& g, const FiberZeroPoint& fp);

}  // namespace twistor
