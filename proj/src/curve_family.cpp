#include "twistor/curve_family.hpp"

#include <algorithm>
#include <cmath>

#include "twistor/error.hpp"

namespace twistor {

namespace {

Complex unit_phase(Complex z) { return z / std::abs(z); }

SpherePoint rotate(const SpherePoint& a, Complex phase) {
  if (phase == 1.0) return a;
  return SpherePoint(a.z0() * phase, a.z1());
}

bool is_zero(const SpherePoint& p) { return p.z0() == 0.0; }

double norm2(Complex z) { return std::norm(z); }

}  // namespace

double chordal_distance(const SpacePoint& p, const SpacePoint& q) {
  return std::max({chordal_distance(p.x, q.x), chordal_distance(p.y, q.y),
                   chordal_distance(p.t, q.t)});
}

const char* to_string(Stratum s) {
  switch (s) {
    case Stratum::kA1: return "A1";
    case Stratum::kK: return "K";
    case Stratum::kA2: return "A2";
    case Stratum::kC1: return "C1";
    case Stratum::kC2: return "C2";
  }
  return "?";
}

const char* to_string(Family f) { return f == Family::kPlus ? "M+" : "M-"; }

Stratum classify(const LineParams& params, double unit_tol) {
  const SpherePoint& a = params.a;
  if (is_zero(a)) return Stratum::kC1;
  if (a.is_infinity()) return Stratum::kC2;
  const double m = a.modulus();
  if (std::abs(m - 1.0) <= unit_tol) return Stratum::kK;
  return m < 1.0 ? Stratum::kA1 : Stratum::kA2;
}

bool in_family(const LineParams& params, Family family, double unit_tol) {
  const Stratum s = classify(params, unit_tol);
  if (family == Family::kPlus) return s == Stratum::kA1 || s == Stratum::kC1;
  return s == Stratum::kA2 || s == Stratum::kC2;
}

LineFrame to_frame(const LineParams& params) {
  const Complex d0 = params.d.z0();
  const Complex d1 = params.d.z1();
  // The public a refers to the representative (d, 1), or (1, 0) at infinity.
  const Complex phase = d1 == 0.0 ? Complex(1.0) : unit_phase(d1 / std::conj(d1));
  return {d0, d1, rotate(params.a, phase)};
}

LineParams from_frame(const LineFrame& frame) {
  const Complex s = frame.d1 != 0.0 ? frame.d1 : frame.d0;
  const Complex phase = unit_phase(std::conj(s) / s);
  return {SpherePoint(frame.d0, frame.d1), rotate(frame.a, phase)};
}

double line_distance(const LineParams& p, const LineParams& q) {
  const LineFrame fp = to_frame(p);
  const LineFrame fq = to_frame(q);
  const double dd = chordal_distance(p.d, q.d);
  // Express q's a against the representative of d closest to p's.
  const Complex inner = std::conj(fq.d0) * fp.d0 + std::conj(fq.d1) * fp.d1;
  Complex phase = 1.0;
  if (std::abs(inner) > 0.0) {
    const Complex lambda = unit_phase(inner);
    phase = lambda / std::conj(lambda);
  }
  return std::max(dd, chordal_distance(fp.a, rotate(fq.a, phase)));
}

SpacePoint eval_line(const LineParams& params, const SpherePoint& t) {
  const Stratum s = classify(params, 0.0);
  if (s == Stratum::kC2) {
    throw Error(ErrorKind::kDomain,
                "a = infinity names a reducible limit; evaluate its vertical component");
  }
  if (s == Stratum::kC1) return {params.d, antipodal(params.d), t};

  const LineFrame f = to_frame(params);
  const Complex a0 = f.a.z0(), a1 = f.a.z1();
  const Complex t0 = t.z0(), t1 = t.z1();
  const Complex cd0 = std::conj(f.d0), cd1 = std::conj(f.d1);
  const Complex ca0 = std::conj(a0), ca1 = std::conj(a1);
  SpherePoint x(f.d0 * a1 * t1 - a0 * cd1 * t0, f.d1 * a1 * t1 + a0 * cd0 * t0);
  SpherePoint y(ca0 * f.d0 * t1 - ca1 * cd1 * t0, ca0 * f.d1 * t1 + ca1 * cd0 * t0);
  return {x, y, t};
}

bool on_Q(const SpacePoint& p, ChordalTolerance tol) {
  return chordal_distance(p.x, p.y) <= tol.epsilon;
}

FractionalMap trajectory_map(const SpherePoint& d, const SpherePoint& t) {
  if (is_zero(t) || t.is_infinity()) {
    throw Error(ErrorKind::kInvalidFiber, "trajectory curve needs t != 0, infinity");
  }
  // Coefficients multiplied through by |d1|^2 |t1|^2, so d = infinity and
  // large R need no special case.
  const Complex d0 = d.z0(), d1 = d.z1();
  const double T0 = norm2(t.z0()), T1 = norm2(t.z1());
  const double D0 = norm2(d0), D1 = norm2(d1);
  return FractionalMap(-d0 * std::conj(d1) * (T0 + T1), D0 * T1 - D1 * T0,
                       D0 * T0 - D1 * T1, std::conj(d0) * d1 * (T0 + T1), true);
}

SpherePoint eval_trajectory(const SpherePoint& d, const SpherePoint& t,
                            const SpherePoint& x) {
  return trajectory_map(d, t)(x);
}

namespace {

Complex require_finite(const SpherePoint& x) {
  const auto v = x.affine();
  if (!v) throw Error(ErrorKind::kDomain, "x must be finite in the c-coordinate");
  return *v;
}

}  // namespace

SpherePoint trajectory_coordinate(const SpherePoint& d, const SpherePoint& x) {
  const Complex xv = require_finite(x);
  return SpherePoint(d.z0() - xv * d.z1(), std::conj(xv) * d.z0() + d.z1());
}

SpherePoint eval_trajectory_factored(const SpherePoint& c, const SpherePoint& x,
                                     double R) {
  if (!(R > 0.0)) throw Error(ErrorKind::kDomain, "R must be positive");
  const Complex xv = require_finite(x);
  const Complex c0 = c.z0(), c1 = c.z1();
  // b = R / conj(c) - c; the circle |c| = sqrt(R) goes to b = 0.
  const SpherePoint b(R * norm2(c1) - norm2(c0), std::conj(c0) * c1);
  const FractionalMap to_y(-1.0, xv * (1.0 + R), std::conj(xv), 1.0 + R);
  return to_y(b);
}

ReducibleLimit limit_curve(const SpherePoint& d, LimitDirection direction) {
  const SpherePoint zero = SpherePoint::finite(0.0);
  const SpherePoint inf = SpherePoint::infinity();
  const SpherePoint far = antipodal(d);
  const SpacePoint near_anchor{d, d, zero};
  const SpacePoint far_anchor{far, far, inf};
  if (direction == LimitDirection::kTowardZero) {
    return {{d, zero},
            Stratum::kC1,
            {LimitComponent{{1, 0, 0}, near_anchor}, LimitComponent{{0, 1, 0}, far_anchor}}};
  }
  return {{far, zero},
          Stratum::kC2,
          {LimitComponent{{0, 1, 0}, near_anchor}, LimitComponent{{1, 0, 0}, far_anchor}}};
}

bool same_limit(const ReducibleLimit& p, const ReducibleLimit& q, ChordalTolerance tol) {
  if (p.stratum != q.stratum) return false;
  if (line_distance(p.vertical, q.vertical) > tol.epsilon) return false;
  for (std::size_t i = 0; i < p.extra_components.size(); ++i) {
    const auto& a = p.extra_components[i];
    const auto& b = q.extra_components[i];
    if (a.degree != b.degree) return false;
    if (chordal_distance(a.anchor, b.anchor) > tol.epsilon) return false;
  }
  return true;
}

}  // namespace twistor
