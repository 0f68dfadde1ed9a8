#include "twistor/incidence.hpp"

#include <cmath>

namespace twistor {

namespace {

bool is_zero(const SpherePoint& p) { return p.z0() == 0.0; }

void require_generic_fiber(const SpherePoint& t) {
  if (is_zero(t) || t.is_infinity()) {
    throw Error(ErrorKind::kInvalidFiber,
                "t = 0 and t = infinity are blown up; use the fiber-zero chart");
  }
}

Complex unit_phase(Complex z) {
  const double m = std::abs(z);
  return m > 0.0 ? z / m : Complex(1.0);
}

double pow4(double v) {
  const double v2 = v * v;
  return v2 * v2;
}

// The representative of d that the public coordinates v and a refer to.
Complex chart_scale(Complex d0, Complex d1) { return d1 != 0.0 ? d1 : d0; }

}  // namespace

const char* to_string(Chart chart) {
  switch (chart) {
    case Chart::kDA: return "(d,a)";
    case Chart::kInfD: return "(1/d,a)";
    case Chart::kDInfA: return "(d,1/a)";
    case Chart::kInfDInfA: return "(1/d,1/a)";
  }
  return "?";
}

SpacePoint incidence_map(const LineParams& params, const SpherePoint& t) {
  require_generic_fiber(t);
  if (params.a.is_infinity()) return {antipodal(params.d), params.d, t};
  return eval_line(params, t);
}

JacobianValue jacobian(const LineParams& params, const SpherePoint& t, double unit_tol) {
  require_generic_fiber(t);
  const Complex tv = *t.affine();
  const double R = std::norm(tv);
  const double common = (1.0 + R) * (1.0 + R) * R;
  const bool inf_d = params.d.is_infinity();
  const bool inf_a = params.a.is_infinity();
  const Chart chart = inf_d ? (inf_a ? Chart::kInfDInfA : Chart::kInfD)
                            : (inf_a ? Chart::kDInfA : Chart::kDA);
  if (chart == Chart::kInfDInfA) {
    throw Error(ErrorKind::kChart, "u is singular at (d, a) = (infinity, infinity)");
  }
  if (classify(params, unit_tol) == Stratum::kK) return {0.0, chart};

  // e = 0 at d = infinity, where the public a is already the chart coordinate b.
  const Complex d = inf_d ? Complex(0.0) : *params.d.affine();
  double weight = 0.0;
  double sign_factor = 0.0;
  double denom = 0.0;
  switch (chart) {
    case Chart::kDA: {
      const Complex a = *params.a.affine();
      weight = 1.0 + std::norm(d);
      sign_factor = pow4(std::abs(a)) - 1.0;
      denom = pow4(std::abs(1.0 + a * std::conj(d) * tv)) *
              pow4(std::abs(a + d * std::conj(tv)));
      break;
    }
    case Chart::kInfD: {
      const Complex b = *params.a.affine();
      weight = 1.0;
      sign_factor = pow4(std::abs(b)) - 1.0;
      denom = pow4(std::abs(b * tv)) * pow4(std::abs(tv));
      break;
    }
    case Chart::kDInfA: {
      weight = 1.0 + std::norm(d);
      sign_factor = 1.0;
      denom = pow4(std::abs(std::conj(d) * tv));
      break;
    }
    case Chart::kInfDInfA:
      break;
  }
  if (!(denom > 0.0) || !std::isfinite(denom)) {
    throw Error(ErrorKind::kChart, "u is singular at this parameter in every chart");
  }
  return {weight * weight * common * sign_factor / denom, chart};
}

SolveResult solve_line_through(const SpacePoint& p, Family family, ChordalTolerance tol) {
  require_generic_fiber(p.t);
  const double gap = chordal_distance(p.x, p.y);
  if (gap <= tol.epsilon) {
    throw Error(ErrorKind::kOnDiagonal,
                "point lies on the diagonal of X_t; only the K stratum meets it");
  }

  SolverTrace trace;
  trace.ill_conditioned = gap <= 100.0 * tol.epsilon;

  // Work with |x| <= 1 so the c-coordinate stays regular; undo at the end.
  const GroupElement flip(0.0, 1.0, 1.0);
  SpherePoint x = p.x;
  SpherePoint y = p.y;
  if (x.modulus() > 1.0) {
    const FractionalMap m = flip.g1();
    x = m(x);
    y = m(y);
    trace.rotated = true;
  }

  const Complex t0 = p.t.z0(), t1 = p.t.z1();
  const double T0 = std::norm(t0), T1 = std::norm(t1);
  const double R = T0 / T1;
  trace.R = R;
  const Complex xv = *x.affine();
  const Complex b0 = (1.0 + R) * (xv * y.z1() - y.z0());
  const Complex b1 = y.z1() + std::conj(xv) * y.z0();
  trace.b = SpherePoint(b0, b1);

  // R/conj(c) - c = b with c = r e^{i theta}: r < sqrt(R) has theta = arg b and
  // r^2 + |b| r - R = 0; r > sqrt(R) has theta = arg(-b) and r^2 - |b| r - R = 0.
  const double mb = std::abs(b0);
  const double nb = std::abs(b1);
  const Complex phase = nb > 0.0 ? unit_phase(b0 * std::conj(b1)) : unit_phase(b0);
  const double root = std::hypot(mb, 2.0 * std::sqrt(R) * nb);
  trace.c_candidates[0] = SpherePoint(phase * (2.0 * R * nb), mb + root);
  trace.c_candidates[1] = SpherePoint(-phase * (mb + root), 2.0 * nb);

  for (int i = 0; i < 2; ++i) {
    const Complex c0 = trace.c_candidates[i].z0();
    const Complex c1 = trace.c_candidates[i].z1();
    // d = (x + c) / (1 - conj(x) c); against the representative (d0, d1) below
    // the parameter is c0 / (conj(c1) t), so |a| = |c| / |t|.
    const Complex d0 = xv * c1 + c0;
    const Complex d1 = c1 - std::conj(xv) * c0;
    const SpherePoint a(c0 * t1, std::conj(c1) * t0);
    LineParams params = from_frame({d0, d1, a});
    if (trace.rotated) params = act_on_params(flip.inverse(), params);
    trace.params_candidates[i] = params;
  }

  const double m0 = trace.params_candidates[0].a.modulus();
  const double m1 = trace.params_candidates[1].a.modulus();
  if (!(m0 < 1.0 && m1 > 1.0) && !(m0 > 1.0 && m1 < 1.0)) {
    throw SolveError(ErrorKind::kNumericalFailure,
                     "candidates do not separate into |a| < 1 and |a| > 1", trace);
  }
  const int plus_index = m0 < 1.0 ? 0 : 1;
  const int chosen = family == Family::kPlus ? plus_index : 1 - plus_index;
  trace.chosen_family = family;
  const LineParams& result = trace.params_candidates[chosen];

  const SpacePoint image = incidence_map(result, p.t);
  trace.roundtrip_error =
      std::max(chordal_distance(image.x, p.x), chordal_distance(image.y, p.y));
  if (!(trace.roundtrip_error <= 10.0 * tol.epsilon)) {
    throw SolveError(ErrorKind::kNumericalFailure,
                     "forward image of the solution misses the input point", trace);
  }
  return {result, trace};
}

FiberZeroPoint fiber_zero_point(const LineParams& params, double unit_tol) {
  switch (classify(params, unit_tol)) {
    case Stratum::kK:
      throw Error(ErrorKind::kLiesOnQ, "members of K lie in Q and do not meet Z_0 off Q+");
    case Stratum::kC2:
      throw Error(ErrorKind::kDomain, "C2 members are reducible at t = 0");
    case Stratum::kC1:
      return {params.d, SpherePoint::infinity()};
    default:
      break;
  }
  const LineFrame f = to_frame(params);
  const double n2 = std::norm(f.d0) + std::norm(f.d1);
  const Complex a0 = f.a.z0(), a1 = f.a.z1();
  // v = |D|^2 (a - 1/conj(a)) against the representative D, which scales with
  // weight two when D is rescaled.
  const Complex s = chart_scale(f.d0, f.d1);
  return {params.d,
          SpherePoint(n2 * (std::norm(a0) - std::norm(a1)), a1 * std::conj(a0) * s * s)};
}

LineParams solve_fiber_zero(const FiberZeroPoint& fp, Family family) {
  if (is_zero(fp.v)) {
    throw Error(ErrorKind::kLiesOnQ, "v = 0 is the direction of Q+");
  }
  if (fp.v.is_infinity()) {
    return {fp.d, family == Family::kPlus ? SpherePoint::finite(0.0) : SpherePoint::infinity()};
  }
  const Complex d0 = fp.d.z0(), d1 = fp.d.z1();
  const Complex s = chart_scale(d0, d1);
  const double n2 = std::norm(d0) + std::norm(d1);
  const Complex w0 = fp.v.z0() * s * s;
  const Complex w1 = fp.v.z1() * n2;
  const double W0 = std::abs(w0), W1 = std::abs(w1);
  const double root = std::hypot(W0, 2.0 * W1);
  const Complex dir = unit_phase(w0 * std::conj(w1));
  const SpherePoint a = family == Family::kPlus
                            ? SpherePoint(-dir * (2.0 * W1), W0 + root)
                            : SpherePoint(dir * (W0 + root), 2.0 * W1);
  return from_frame({d0, d1, a});
}

FiberZeroPoint act_on_fiber_point(const GroupElement& g, const FiberZeroPoint& fp) {
  const Complex al = g.alpha(), be = g.beta();
  const Complex d0 = fp.d.z0(), d1 = fp.d.z1();
  const Complex e0 = al * d0 + be * d1;
  const Complex e1 = -std::conj(be) * d0 + std::conj(al) * d1;
  if (is_zero(fp.v) || fp.v.is_infinity()) return {SpherePoint(e0, e1), fp.v};
  // Against representatives: v_D = s^2 v is invariant under SU(2) up to conj(g3).
  const Complex s = chart_scale(d0, d1);
  const Complex s_new = chart_scale(e0, e1);
  const SpherePoint v(std::conj(g.g3()) * fp.v.z0() * s * s, fp.v.z1() * s_new * s_new);
  return {SpherePoint(e0, e1), v};
}

}  // namespace twistor
