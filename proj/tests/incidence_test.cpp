#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "twistor/incidence.hpp"

using namespace twistor;
using oracle::random_complex;

namespace {

SpherePoint fin(Complex z) { return SpherePoint::finite(z); }
const SpherePoint kInf = SpherePoint::infinity();

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error raised");
  return ErrorKind::kParse;
}

SpherePoint random_point(std::mt19937_64& rng) {
  return SpherePoint(random_complex(rng, 0.1, 10), random_complex(rng, 0.1, 10));
}

}  // namespace

TEST_CASE("incidence map") {
  const SpacePoint p = incidence_map(LineParams::finite(0, 0.5), fin(1.0));
  CHECK(p.x.affine() == Complex(-0.5));
  CHECK(p.y.affine() == Complex(-2.0));
  CHECK(kind_of([] { incidence_map(LineParams::finite(0, 0.5), SpherePoint()); }) == ErrorKind::kInvalidFiber);
  CHECK(kind_of([] { incidence_map(LineParams::finite(0, 0.5), SpherePoint::infinity()); }) ==
        ErrorKind::kInvalidFiber);
  // C2 meets X_t in its vertical component.
  const SpacePoint c2 = incidence_map({fin(2.0), kInf}, fin(3.0));
  CHECK(chordal_distance(c2.x, fin(-0.5)) <= 1e-16);
  CHECK(chordal_distance(c2.y, fin(2.0)) <= 1e-16);
  std::mt19937_64 rng(31);
  for (int i = 0; i < 300; ++i) {
    const LineParams k{random_point(rng), fin(random_complex(rng, 1, 1))};
    const SpacePoint q = incidence_map(k, fin(random_complex(rng, 0.1, 10)));
    CHECK(chordal_distance(q.x, q.y) <= 1e-12);
  }
}

TEST_CASE("jacobian worked value and zero set") {
  const JacobianValue j = jacobian(LineParams::finite(0, 0.5), fin(1.0));
  CHECK(j.chart == Chart::kDA);
  CHECK(j.value == doctest::Approx(-60.0).epsilon(1e-14));
  CHECK(jacobian(LineParams::finite(0.3, Complex(0, 1)), fin(2.0)).value == 0.0);
  CHECK(jacobian(LineParams::finite(0.3, 2.0), fin(2.0)).value > 0.0);
  CHECK(jacobian(LineParams::finite(0.3, 0.2), fin(2.0)).value < 0.0);
  CHECK(kind_of([] { jacobian(LineParams::finite(0, 0.5), SpherePoint()); }) == ErrorKind::kInvalidFiber);
  CHECK(kind_of([] { jacobian(LineParams::finite(0, 0), fin(1.0)); }) == ErrorKind::kChart);
  CHECK(kind_of([] { jacobian({kInf, kInf}, fin(1.0)); }) == ErrorKind::kChart);
  CHECK(jacobian({kInf, fin(0.5)}, fin(1.0)).chart == Chart::kInfD);
  CHECK(jacobian({fin(0.5), kInf}, fin(1.0)).chart == Chart::kDInfA);
}

TEST_CASE("jacobian equals the finite-difference determinant") {
  std::mt19937_64 rng(32);
  int checked = 0;
  while (checked < 1000) {
    const Complex d = random_complex(rng, 0.1, 10), a = random_complex(rng, 0.1, 10);
    const Complex t = random_complex(rng, 0.5, 2);
    if (std::abs(std::abs(a) - 1.0) < 1e-4) continue;
    if (std::abs(1.0 + a * std::conj(d) * t) < 0.2 || std::abs(a + d * std::conj(t)) < 0.2) continue;
    const double fd = oracle::fd_jacobian(d, a, t);
    const double closed = jacobian(LineParams::finite(d, a), fin(t)).value;
    CHECK(std::abs(closed - fd) <= 1e-5 * std::abs(fd));
    ++checked;
  }
}

TEST_CASE("jacobian charts at infinity") {
  // d = infinity, in (e, b) with d = 1/e, a = b conj(e)/e, differentiated at e = 0:
  // x = 1/(b t) and y = conj(b)/t near there, compared through the finite chart at small e.
  std::mt19937_64 rng(33);
  for (int i = 0; i < 50; ++i) {
    const Complex b = random_complex(rng, 0.2, 5), t = random_complex(rng, 0.5, 2);
    if (std::abs(std::abs(b) - 1.0) < 1e-2) continue;
    const double at_inf = jacobian({kInf, fin(b)}, fin(t)).value;
    const Complex e(1e-7, 0);
    // With e real, a = b; the (e, b) density differs from (d, a) by |dd/de|^2 = 1/|e|^4.
    const double near = jacobian(LineParams::finite(1.0 / e, b), fin(t)).value * std::pow(std::abs(e), -4);
    CHECK(at_inf == doctest::Approx(near).epsilon(1e-5));
  }
  for (int i = 0; i < 50; ++i) {
    const Complex d = random_complex(rng, 0.2, 5), t = random_complex(rng, 0.5, 2);
    const double at_inf = jacobian({fin(d), kInf}, fin(t)).value;
    const Complex c(1e-9, 0);  // a = 1/c
    const double near = jacobian(LineParams::finite(d, 1.0 / c), fin(t)).value * std::pow(std::abs(c), -4);
    CHECK(at_inf == doctest::Approx(near).epsilon(1e-5));
  }
}

TEST_CASE("solver worked examples") {
  const SpacePoint p{fin(-0.5), fin(-2.0), fin(1.0)};
  const SolveResult plus = solve_line_through(p, Family::kPlus);
  CHECK(plus.params.d.affine() == Complex(0.0));
  CHECK(plus.params.a.affine() == Complex(0.5));
  CHECK(plus.trace.chosen_family == Family::kPlus);
  CHECK(plus.trace.R == 1.0);
  const SolveResult minus = solve_line_through(p, Family::kMinus);
  CHECK(minus.params.d.is_infinity());
  CHECK(minus.params.a.affine() == Complex(-2.0));
  CHECK(classify(plus.trace.params_candidates[0]) == Stratum::kA1);
  CHECK(classify(plus.trace.params_candidates[1]) == Stratum::kA2);
  CHECK(plus.trace.c_candidates[0].modulus() <= 1.0);
  CHECK(plus.trace.c_candidates[1].modulus() >= 1.0);
}

TEST_CASE("solver rejects the diagonal and the special fibers") {
  CHECK(kind_of([] { solve_line_through({fin(1.0), fin(1.0), fin(1.0)}, Family::kPlus); }) ==
        ErrorKind::kOnDiagonal);
  CHECK(kind_of([] { solve_line_through({kInf, kInf, fin(1.0)}, Family::kMinus); }) == ErrorKind::kOnDiagonal);
  CHECK(kind_of([] { solve_line_through({fin(1.0), fin(2.0), SpherePoint()}, Family::kPlus); }) ==
        ErrorKind::kInvalidFiber);
  const SolveResult r = solve_line_through({fin(1.0), fin(1.0 + 1e-8), fin(1.0)}, Family::kPlus);
  CHECK(r.trace.ill_conditioned);
  CHECK(in_family(r.params, Family::kPlus));
}

TEST_CASE("solver roundtrip over random points") {
  std::mt19937_64 rng(34);
  for (int i = 0; i < 3000; ++i) {
    SpacePoint p{random_point(rng), random_point(rng), fin(random_complex(rng, 0.1, 10))};
    if (i % 17 == 0) p.x = kInf;
    if (i % 19 == 0) p.y = kInf;
    if (i % 23 == 0) p.x = SpherePoint();
    if (chordal_distance(p.x, p.y) == 0.0) continue;
    const SolveResult plus = solve_line_through(p, Family::kPlus);
    const SolveResult minus = solve_line_through(p, Family::kMinus);
    CHECK(in_family(plus.params, Family::kPlus));
    CHECK(in_family(minus.params, Family::kMinus));
    CHECK(chordal_distance(incidence_map(plus.params, p.t), p) <= 1e-9);
    CHECK(chordal_distance(incidence_map(minus.params, p.t), p) <= 1e-9);
    CHECK(plus.trace.roundtrip_error <= 1e-9);
    // Swapping x and y swaps the families.
    const SolveResult swapped = solve_line_through({p.y, p.x, p.t}, Family::kMinus);
    CHECK(line_distance(swapped.params, swap_involution(plus.params)) <= 1e-9);
  }
}

TEST_CASE("solver on y = antipodal(x) finds the reducible members") {
  std::mt19937_64 rng(35);
  for (int i = 0; i < 200; ++i) {
    const SpherePoint x = random_point(rng);
    const SpacePoint p{x, antipodal(x), fin(random_complex(rng, 0.1, 10))};
    const SolveResult plus = solve_line_through(p, Family::kPlus);
    const SolveResult minus = solve_line_through(p, Family::kMinus);
    CHECK(classify(plus.params) == Stratum::kC1);
    CHECK(classify(minus.params) == Stratum::kC2);
    CHECK(chordal_distance(plus.params.d, x) <= 1e-12);
    CHECK(chordal_distance(minus.params.d, antipodal(x)) <= 1e-12);
  }
}

TEST_CASE("fiber coordinate over t = 0") {
  const FiberZeroPoint fp = fiber_zero_point(LineParams::finite(0, 0.5));
  CHECK(fp.v.affine() == Complex(-1.5));
  CHECK(fp.d.affine() == Complex(0.0));
  CHECK(fiber_zero_point(LineParams::finite(0.7, 0.0)).v.is_infinity());
  CHECK(kind_of([] { fiber_zero_point(LineParams::finite(0.7, Complex(0, 1))); }) == ErrorKind::kLiesOnQ);
  CHECK(kind_of([] { fiber_zero_point({fin(0.7), kInf}); }) == ErrorKind::kDomain);
  // d = infinity: v = a - 1/conj(a).
  CHECK(fiber_zero_point({kInf, fin(2.0)}).v.affine() == Complex(1.5));

  CHECK(solve_fiber_zero({fin(0.0), fin(-1.5)}, Family::kPlus).a.affine() == Complex(0.5));
  CHECK(chordal_distance(solve_fiber_zero({fin(0.0), fin(-1.5)}, Family::kMinus).a, fin(-2.0)) <= 1e-15);
  CHECK(classify(solve_fiber_zero({fin(0.2), kInf}, Family::kPlus)) == Stratum::kC1);
  CHECK(classify(solve_fiber_zero({fin(0.2), kInf}, Family::kMinus)) == Stratum::kC2);
  CHECK(kind_of([] { solve_fiber_zero({fin(0.2), SpherePoint()}, Family::kPlus); }) == ErrorKind::kLiesOnQ);
}

TEST_CASE("fiber coordinate is the limit of (y - x)/t") {
  std::mt19937_64 rng(36);
  for (int i = 0; i < 200; ++i) {
    const Complex d = random_complex(rng, 0.2, 5), a = random_complex(rng, 0.2, 5);
    if (std::abs(std::abs(a) - 1.0) < 0.05) continue;
    const Complex v = *fiber_zero_point(LineParams::finite(d, a)).v.affine();
    const Complex est = oracle::fiber_direction(d, a);
    CHECK(std::abs(v - est) <= 1e-4 * std::abs(v));
    // At d = infinity the coordinates are (-1/x, -1/y).
    const Complex tt(1e-7);
    const oracle::XY q = oracle::curve_at_infinity(a, tt);
    const Complex est_inf = (-1.0 / q.y + 1.0 / q.x) / tt;
    CHECK(std::abs(*fiber_zero_point({kInf, fin(a)}).v.affine() - est_inf) <= 1e-5 * std::abs(est_inf));
  }
}

TEST_CASE("fiber solve roundtrip and injectivity") {
  std::mt19937_64 rng(37);
  for (int i = 0; i < 1000; ++i) {
    const SpherePoint d = random_point(rng);
    Complex a = random_complex(rng, 1e-2, 1e2);
    if (std::abs(std::abs(a) - 1.0) < 1e-4) a *= 1.1;
    const LineParams p{d, fin(a)};
    const Family f = std::abs(a) < 1.0 ? Family::kPlus : Family::kMinus;
    const FiberZeroPoint fp = fiber_zero_point(p);
    CHECK(line_distance(solve_fiber_zero(fp, f), p) <= 1e-10);
    const LineParams other = solve_fiber_zero(fp, f == Family::kPlus ? Family::kMinus : Family::kPlus);
    CHECK_FALSE(in_family(other, f));
    CHECK(chordal_distance(fiber_zero_point(other).v, fp.v) <= 1e-10);
    // Distinct a over the same d have distinct v within a family.
    const Complex b = a * 1.001;
    if ((std::abs(b) < 1.0) == (std::abs(a) < 1.0) && std::abs(std::abs(b) - 1.0) > 1e-4) {
      CHECK(chordal_distance(fiber_zero_point({d, fin(b)}).v, fp.v) > 1e-9);
    }
  }
}

TEST_CASE("fiber action matches the parameter action") {
  std::mt19937_64 rng(38);
  std::normal_distribution<double> n;
  for (int i = 0; i < 500; ++i) {
    const GroupElement g({n(rng), n(rng)}, {n(rng), n(rng)}, random_complex(rng, 1, 1));
    const LineParams p{random_point(rng), i % 25 == 0 ? SpherePoint() : fin(random_complex(rng, 0.05, 0.95))};
    const FiberZeroPoint a = fiber_zero_point(act_on_params(g, p));
    const FiberZeroPoint b = act_on_fiber_point(g, fiber_zero_point(p));
    CHECK(chordal_distance(a.d, b.d) <= 1e-12);
    CHECK(chordal_distance(a.v, b.v) <= 1e-12);
  }
}
