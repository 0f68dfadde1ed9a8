#include "twistor/verifier.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>
#include <thread>

#include "twistor/error.hpp"
#include "twistor/incidence.hpp"
#include "twistor/kernels.hpp"
#include "twistor/sampling.hpp"
#include "twistor/serialize.hpp"

namespace twistor {

namespace {

using Inputs = std::vector<double>;

struct Outcome {
  double error = 0.0;
  const char* counter = nullptr;  // tally in the suite details
  bool threw = false;
  std::string message;
};

// Flat encoding of sample inputs.

void put(Inputs& in, double v) { in.push_back(v); }
void put(Inputs& in, Complex z) {
  in.push_back(z.real());
  in.push_back(z.imag());
}
void put(Inputs& in, const SpherePoint& p) {
  put(in, p.z0());
  put(in, p.z1());
}

class Reader {
 public:
  explicit Reader(std::span<const double> in) : in_(in) {}
  double real() {
    if (pos_ >= in_.size()) throw Error(ErrorKind::kParse, "sample inputs too short");
    return in_[pos_++];
  }
  Complex complex() {
    const double re = real();
    return {re, real()};
  }
  SpherePoint point() {
    const Complex z0 = complex();
    return SpherePoint(z0, complex());
  }
  LineParams params() {
    const SpherePoint d = point();
    return {d, point()};
  }
  GroupElement group() {
    const Complex alpha = complex();
    const Complex beta = complex();
    return GroupElement(alpha, beta, complex());
  }

 private:
  std::span<const double> in_;
  std::size_t pos_ = 0;
};

// Random draws shared by the suites.

void put_group(Inputs& in, Sampler& s) {
  put(in, Complex(s.normal(), s.normal()));
  put(in, Complex(s.normal(), s.normal()));
  put(in, s.unit_phase());
}

// |a| log-uniform on [lo, hi], kept out of the band ||a| - 1| < 1e-4.
Complex off_unit(Sampler& s, double lo, double hi) {
  Complex a = s.annulus(lo, hi);
  if (std::abs(std::abs(a) - 1.0) < 1e-4) a *= 1.01;
  return a;
}

SpherePoint point_on_shell(Sampler& s, double r) { return SpherePoint::finite(r * s.unit_phase()); }

SpherePoint with_t(const SpherePoint& t, Complex g3) { return SpherePoint(g3 * t.z0(), t.z1()); }

bool in_plus(Stratum s) { return s == Stratum::kA1 || s == Stratum::kC1; }
bool in_minus(Stratum s) { return s == Stratum::kA2 || s == Stratum::kC2; }

double det4(std::array<std::array<double, 4>, 4> m) {
  double det = 1.0;
  for (int c = 0; c < 4; ++c) {
    int pivot = c;
    for (int r = c + 1; r < 4; ++r) {
      if (std::abs(m[r][c]) > std::abs(m[pivot][c])) pivot = r;
    }
    if (m[pivot][c] == 0.0) return 0.0;
    if (pivot != c) {
      std::swap(m[pivot], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (int r = c + 1; r < 4; ++r) {
      const double f = m[r][c] / m[c][c];
      for (int k = c; k < 4; ++k) m[r][k] -= f * m[c][k];
    }
  }
  return det;
}

struct Suite {
  std::string name;
  double tolerance;
  std::function<std::size_t(const VerificationPlan&)> count;
  std::function<Inputs(const VerificationPlan&, std::size_t)> generate;
  std::function<Outcome(std::span<const double>)> evaluate;
  // Optional whole-chunk evaluation; must produce exactly what `evaluate`
  // produces sample by sample.
  std::function<void(std::span<const Inputs>, std::span<Outcome>)> evaluate_chunk;
  std::function<nlohmann::json(const VerificationPlan&)> details;
};

Outcome guarded(const std::function<Outcome(std::span<const double>)>& f, std::span<const double> in) {
  try {
    return f(in);
  } catch (const std::exception& e) {
    Outcome o;
    o.threw = true;
    o.message = e.what();
    return o;
  }
}

// ---------------------------------------------------------------- foliation

struct FoliationLayout {
  std::size_t generic, fiber_zero, disjoint, reducible, diagonal;
  std::size_t total() const { return generic + fiber_zero + disjoint + reducible + diagonal; }
};

FoliationLayout foliation_layout(const VerificationPlan& plan) {
  const std::size_t s = plan.samples_per_suite;
  return {s * plan.t_shells.size(), std::max<std::size_t>(s / 4, kMinStatisticalSamples),
          std::max<std::size_t>(s / 4, kMinStatisticalSamples),
          std::max<std::size_t>(s / 20, 10), plan.inject_diagonal};
}

enum FoliationCase { kGeneric = 0, kFiberZero, kDisjoint, kReducible, kDiagonal };

Inputs foliation_generate(const VerificationPlan& plan, std::size_t i) {
  const FoliationLayout l = foliation_layout(plan);
  Sampler s(plan.seed, "foliation", i);
  Inputs in;
  const std::size_t per_shell = plan.samples_per_suite;
  if (i < l.generic) {
    put(in, double(kGeneric));
    put(in, s.sphere_point());
    put(in, s.sphere_point());
    put(in, point_on_shell(s, plan.t_shells[i / per_shell]));
    return in;
  }
  i -= l.generic;
  if (i < l.fiber_zero) {
    put(in, double(kFiberZero));
    put(in, s.sphere_point());
    put(in, SpherePoint::finite(s.annulus(1e-2, 1e2)));
    return in;
  }
  i -= l.fiber_zero;
  if (i < l.disjoint) {
    put(in, double(kDisjoint));
    for (int k = 0; k < 2; ++k) {
      put(in, s.sphere_point());
      put(in, SpherePoint::finite(off_unit(s, 1e-2, 0.9999)));
    }
    put(in, point_on_shell(s, plan.t_shells[i % plan.t_shells.size()]));
    return in;
  }
  i -= l.disjoint;
  put(in, double(i < l.reducible ? kReducible : kDiagonal));
  put(in, s.sphere_point());
  put(in, point_on_shell(s, plan.t_shells[i % plan.t_shells.size()]));
  return in;
}

Outcome foliation_evaluate(std::span<const double> raw) {
  Reader r(raw);
  const auto kind = static_cast<FoliationCase>(r.real());
  Outcome o;
  switch (kind) {
    case kGeneric: {
      const SpherePoint x = r.point(), y = r.point(), t = r.point();
      const SpacePoint p{x, y, t};
      if (chordal_distance(x, y) <= ChordalTolerance().epsilon) {
        o.counter = "expected_rejections";
        return o;
      }
      const LineParams plus = solve_line_through(p, Family::kPlus).params;
      const LineParams minus = solve_line_through(p, Family::kMinus).params;
      if (!in_plus(classify(plus)) || !in_minus(classify(minus))) {
        o.error = 1.0;
        return o;
      }
      o.error = std::max(chordal_distance(incidence_map(plus, t), p),
                         chordal_distance(incidence_map(minus, t), p));
      if (classify(minus) == Stratum::kC2) o.counter = "reducible_members";
      return o;
    }
    case kFiberZero: {
      const FiberZeroPoint fp{r.point(), r.point()};
      const LineParams plus = solve_fiber_zero(fp, Family::kPlus);
      const LineParams minus = solve_fiber_zero(fp, Family::kMinus);
      if (!in_plus(classify(plus)) || !in_minus(classify(minus))) {
        o.error = 1.0;
        return o;
      }
      for (const LineParams& q : {plus, minus}) {
        const FiberZeroPoint back = fiber_zero_point(q);
        o.error = std::max({o.error, chordal_distance(back.d, fp.d), chordal_distance(back.v, fp.v)});
      }
      return o;
    }
    case kDisjoint: {
      const LineParams p1 = r.params(), p2 = r.params();
      const SpherePoint t = r.point();
      const bool distinct = line_distance(p1, p2) > 1e-6;
      const double gap = chordal_distance(incidence_map(p1, t), incidence_map(p2, t));
      // Same base point, different a: the t = 0 fiber separates them by v.
      const LineParams q2{p1.d, p2.a};
      const bool distinct_a = chordal_distance(p1.a, p2.a) > 1e-6;
      const double gap0 = chordal_distance(fiber_zero_point(p1).v, fiber_zero_point(q2).v);
      if ((distinct && gap <= 1e-9) || (distinct_a && gap0 <= 1e-9)) o.error = 1.0;
      return o;
    }
    case kReducible: {
      // y = antipodal(x) is met by the vertical component of a C2 member.
      const SpherePoint x = r.point(), t = r.point();
      const SpacePoint p{x, antipodal(x), t};
      const LineParams minus = solve_line_through(p, Family::kMinus).params;
      const LineParams plus = solve_line_through(p, Family::kPlus).params;
      o.error = std::max(chordal_distance(incidence_map(minus, t), p),
                         chordal_distance(incidence_map(plus, t), p));
      if (classify(minus) == Stratum::kC2) {
        o.counter = "reducible_members";
      } else {
        o.error = 1.0;
      }
      return o;
    }
    case kDiagonal: {
      const SpherePoint x = r.point(), t = r.point();
      try {
        solve_line_through({x, x, t}, Family::kPlus);
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::kOnDiagonal) throw;
        o.counter = "expected_rejections";
        return o;
      }
      o.error = 1.0;
      return o;
    }
  }
  throw Error(ErrorKind::kParse, "unknown foliation case");
}

// ------------------------------------------------------------ kernel suites

Inputs reality_generate(const VerificationPlan& plan, std::size_t i) {
  Sampler s(plan.seed, "reality", i);
  Inputs in;
  put(in, s.sphere_point());
  put(in, i % 50 == 0 ? SpherePoint() : SpherePoint::finite(s.annulus(1e-2, 1e2)));
  put(in, SpherePoint::finite(s.annulus(0.1, 10.0)));
  return in;
}

// sigma(L(t)) against L(-1/conj(t)) through the batch kernels, plus exact
// involution and antipodal-distance checks on each component.
void reality_chunk(std::span<const Inputs> inputs, std::span<Outcome> out) {
  const std::size_t n = inputs.size();
  std::vector<LineParams> params(n);
  std::vector<SpherePoint> ts(n);
  std::vector<bool> ok(n, true);
  for (std::size_t k = 0; k < n; ++k) {
    try {
      Reader r(inputs[k]);
      params[k] = r.params();
      ts[k] = r.point();
    } catch (const std::exception& e) {
      ok[k] = false;
      out[k].threw = true;
      out[k].message = e.what();
    }
  }
  kernels::LineBatch batch;
  batch.resize(2 * n);
  for (std::size_t k = 0; k < n; ++k) {
    batch.set(k, params[k], ts[k]);
    batch.set(n + k, params[k], antipodal(ts[k]));
  }
  kernels::PointBatch pts;
  kernels::eval_line(batch, pts);
  // sigma(x, y, t) = (antipodal(y), antipodal(x), antipodal(t)).
  kernels::ProjectiveColumn sx, sy, lx, ly;
  for (auto* c : {&sx, &sy, &lx, &ly}) c->resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    sx.set(k, -std::conj(pts.y.z1.get(k)), std::conj(pts.y.z0.get(k)));
    sy.set(k, -std::conj(pts.x.z1.get(k)), std::conj(pts.x.z0.get(k)));
    lx.set(k, pts.x.z0.get(n + k), pts.x.z1.get(n + k));
    ly.set(k, pts.y.z0.get(n + k), pts.y.z1.get(n + k));
  }
  std::vector<double> ex(n), ey(n);
  kernels::chordal_distance(sx, lx, ex);
  kernels::chordal_distance(sy, ly, ey);
  for (std::size_t k = 0; k < n; ++k) {
    if (!ok[k]) continue;
    try {
      const SpacePoint p = eval_line(params[k], ts[k]);
      const SpacePoint back = real_structure(real_structure(p));
      double err = std::max(ex[k], ey[k]);
      for (const auto& [u, v] : {std::pair{p.x, back.x}, {p.y, back.y}, {p.t, back.t}}) {
        if (u.z0() != v.z0() || u.z1() != v.z1()) err = 1.0;
        err = std::max(err, std::abs(chordal_distance(u, antipodal(u)) - 1.0));
      }
      out[k].error = err;
    } catch (const std::exception& e) {
      out[k].threw = true;
      out[k].message = e.what();
    }
  }
}

Inputs k_in_q_generate(const VerificationPlan& plan, std::size_t i) {
  Sampler s(plan.seed, "k_in_q", i);
  Inputs in;
  put(in, s.sphere_point());
  put(in, SpherePoint::finite(s.unit_phase()));
  SpherePoint t = SpherePoint::finite(s.annulus(0.1, 10.0));
  if (i % 100 == 0) t = SpherePoint();
  if (i % 100 == 1) t = SpherePoint::infinity();
  put(in, t);
  return in;
}

void k_in_q_chunk(std::span<const Inputs> inputs, std::span<Outcome> out) {
  const std::size_t n = inputs.size();
  kernels::LineBatch batch;
  batch.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    Reader r(inputs[k]);
    const LineParams p = r.params();
    batch.set(k, p, r.point());
  }
  kernels::PointBatch pts;
  kernels::eval_line(batch, pts);
  std::vector<double> dist(n);
  kernels::chordal_distance(pts.x, pts.y, dist);
  for (std::size_t k = 0; k < n; ++k) out[k].error = dist[k];
}

// ------------------------------------------------------------- trajectory

Inputs trajectory_generate(const VerificationPlan& plan, std::size_t i) {
  Sampler s(plan.seed, "trajectory", i);
  Inputs in;
  put(in, s.sphere_point());
  put(in, SpherePoint::finite(s.annulus(1e-2, 1e2)));
  put(in, SpherePoint::finite(s.annulus(0.1, 10.0)));
  put(in, s.unit_phase());
  return in;
}

Outcome trajectory_evaluate(std::span<const double> raw) {
  Reader r(raw);
  const LineParams params = r.params();
  const SpherePoint t = r.point();
  const Complex phase = r.complex();
  const SpacePoint p = eval_line(params, t);
  Outcome o;
  o.error = chordal_distance(p.y, eval_trajectory(params.d, t, p.x));
  // The circle |x - d| = |t| |conj(d) x + 1| is sent to the diagonal.
  if (const auto d = params.d.affine()) {
    const Complex w = std::abs(*t.affine()) * phase;
    const SpherePoint x(w + *d, 1.0 - std::conj(*d) * w);
    o.error = std::max(o.error, chordal_distance(eval_trajectory(params.d, t, x), x));
  }
  return o;
}

Inputs trajectory_factored_generate(const VerificationPlan& plan, std::size_t i) {
  Sampler s(plan.seed, "trajectory_factored", i);
  Inputs in;
  put(in, s.sphere_point());
  SpherePoint x = s.sphere_point();
  if (x.is_infinity()) x = SpherePoint::finite(1.0);
  put(in, x);
  put(in, SpherePoint::finite(s.annulus(0.1, 10.0)));
  return in;
}

Outcome trajectory_factored_evaluate(std::span<const double> raw) {
  Reader r(raw);
  const SpherePoint d = r.point(), x = r.point(), t = r.point();
  const double R = std::norm(*t.affine());
  Outcome o;
  o.error = chordal_distance(eval_trajectory_factored(trajectory_coordinate(d, x), x, R),
                             eval_trajectory(d, t, x));
  return o;
}

// --------------------------------------------------------------- jacobian

constexpr double kFdStep = 1e-5;

Inputs jacobian_fd_generate(const VerificationPlan& plan, std::size_t i) {
  Sampler s(plan.seed, "jacobian_fd", i);
  Complex d, a, t;
  do {
    d = s.annulus(0.1, 10.0);
    a = off_unit(s, 0.1, 10.0);
    t = s.annulus(0.5, 2.0);
  } while (std::abs(1.0 + a * std::conj(d) * t) < 0.2 || std::abs(a + d * std::conj(t)) < 0.2);
  Inputs in;
  put(in, d);
  put(in, a);
  put(in, t);
  return in;
}

Outcome jacobian_fd_evaluate(std::span<const double> raw) {
  Reader r(raw);
  const Complex d = r.complex(), a = r.complex(), t = r.complex();
  const SpherePoint tp = SpherePoint::finite(t);
  auto image = [&](Complex dd, Complex aa) {
    const SpacePoint p = incidence_map(LineParams::finite(dd, aa), tp);
    const Complex x = p.x.affine().value(), y = p.y.affine().value();
    return std::array<double, 4>{x.real(), x.imag(), y.real(), y.imag()};
  };
  const std::array<std::pair<Complex, Complex>, 4> dirs = {
      std::pair{Complex(1, 0), Complex(0)}, {Complex(0, 1), Complex(0)},
      {Complex(0), Complex(1, 0)}, {Complex(0), Complex(0, 1)}};
  std::array<std::array<double, 4>, 4> m{};
  for (int c = 0; c < 4; ++c) {
    const auto [dd, da] = dirs[c];
    const auto plus = image(d + kFdStep * dd, a + kFdStep * da);
    const auto minus = image(d - kFdStep * dd, a - kFdStep * da);
    for (int row = 0; row < 4; ++row) m[row][c] = (plus[row] - minus[row]) / (2 * kFdStep);
  }
  const double fd = det4(m);
  const double closed = jacobian(LineParams::finite(d, a), tp).value;
  Outcome o;
  o.error = std::abs(std::abs(closed) - std::abs(fd)) / std::abs(fd);
  if (closed * fd <= 0.0) o.error = std::max(o.error, 1.0);  // global sign is +1
  return o;
}

Inputs jacobian_zero_set_generate(const VerificationPlan& plan, std::size_t i) {
  Sampler s(plan.seed, "jacobian_zero_set", i);
  Inputs in;
  const int kind = static_cast<int>(i % 3);
  put(in, double(kind));
  put(in, s.annulus(0.1, 10.0));
  const Complex phase = s.unit_phase();
  double m = 1.0;
  if (kind == 1) m = 1.0 + (s.uniform(0, 1) < 0.5 ? -1 : 1) * s.log_uniform(1e-5, 1e-1);
  if (kind == 2) m = std::abs(off_unit(s, 1e-2, 1e2));
  put(in, m * phase);
  put(in, s.annulus(0.1, 10.0));
  return in;
}

// |J| relative to its prefactor, i.e. ||a|^4 - 1| computed through jacobian():
// zero on K, and bounded below by the grid's distance from K elsewhere.
Outcome jacobian_zero_set_evaluate(std::span<const double> raw) {
  Reader r(raw);
  const int kind = static_cast<int>(r.real());
  const Complex d = r.complex(), a = r.complex(), t = r.complex();
  const double R = std::norm(t);
  const double prefactor = std::pow(1.0 + std::norm(d), 2) * std::pow(1.0 + R, 2) * R /
                           (std::pow(std::norm(1.0 + a * std::conj(d) * t), 2) *
                            std::pow(std::norm(a + d * std::conj(t)), 2));
  const LineParams params = LineParams::finite(d, a);
  const double scaled = std::abs(jacobian(params, SpherePoint::finite(t)).value) / prefactor;
  Outcome o;
  if (kind == 0) {
    o.error = scaled;
  } else {
    o.error = scaled > 1e-8 ? 0.0 : 1.0;
    if (classify(params) == Stratum::kK) o.error = 1.0;
  }
  return o;
}

// ------------------------------------------------------------------- swap

Inputs swap_generate(const VerificationPlan& plan, std::size_t i) {
  Sampler s(plan.seed, "swap", i);
  Inputs in;
  put(in, s.sphere_point());
  SpherePoint a = SpherePoint::finite(off_unit(s, 1e-2, 1e2));
  if (i % 10 == 0) a = SpherePoint::finite(s.unit_phase());
  if (i % 50 == 1) a = SpherePoint();
  if (i % 50 == 2) a = SpherePoint::infinity();
  put(in, a);
  put(in, SpherePoint::finite(s.annulus(0.1, 10.0)));
  return in;
}

Outcome swap_evaluate(std::span<const double> raw) {
  Reader r(raw);
  const LineParams p = r.params();
  const SpherePoint t = r.point();
  const LineParams q = swap_involution(p);
  const SpacePoint u = incidence_map(p, t);
  const SpacePoint v = incidence_map(q, t);
  Outcome o;
  o.error = std::max({chordal_distance(u.x, v.y), chordal_distance(u.y, v.x),
                      line_distance(swap_involution(q), p)});
  const Stratum st = classify(p);
  if (st == Stratum::kK) {
    o.error = std::max(o.error, line_distance(q, p));
  } else {
    const Family f = in_plus(st) ? Family::kPlus : Family::kMinus;
    const Family g = f == Family::kPlus ? Family::kMinus : Family::kPlus;
    const LineParams direct = solve_line_through(u, f).params;
    const LineParams swapped = solve_line_through({u.y, u.x, u.t}, g).params;
    o.error = std::max(o.error, line_distance(swapped, swap_involution(direct)));
    if (in_plus(classify(q)) == in_plus(st)) o.error = 1.0;
  }
  return o;
}

// --------------------------------------------------------------- symmetry

constexpr int kEquivarianceFibers = 5;

LineParams random_params(Sampler& s, std::size_t i) {
  SpherePoint a = SpherePoint::finite(s.annulus(1e-2, 1e2));
  if (i % 20 == 3) a = SpherePoint::finite(s.unit_phase());
  if (i % 50 == 5) a = SpherePoint();
  if (i % 50 == 7) a = SpherePoint::infinity();
  return {s.sphere_point(), a};
}

Inputs equivariance_generate(const VerificationPlan& plan, std::size_t i) {
  Sampler s(plan.seed, "equivariance", i);
  Inputs in;
  put_group(in, s);
  const LineParams p = random_params(s, i);
  put(in, p.d);
  put(in, p.a);
  for (int k = 0; k < kEquivarianceFibers; ++k) put(in, SpherePoint::finite(s.annulus(0.1, 10.0)));
  return in;
}

Outcome equivariance_evaluate(std::span<const double> raw) {
  Reader r(raw);
  const GroupElement g = r.group();
  const LineParams p = r.params();
  const LineParams q = act_on_params(g, p);
  Outcome o;
  for (int k = 0; k < kEquivarianceFibers; ++k) {
    const SpherePoint t = r.point();
    o.error = std::max(o.error, chordal_distance(incidence_map(q, with_t(t, g.g3())),
                                                 act_on_space(g, incidence_map(p, t))));
  }
  if (classify(q) != classify(p)) o.error = 1.0;
  const double ma = p.a.modulus(), mq = q.a.modulus();
  if (std::isfinite(ma) && ma > 0.0) o.error = std::max(o.error, std::abs(mq - ma) / ma);
  return o;
}

Inputs group_law_generate(const VerificationPlan& plan, std::size_t i) {
  Sampler s(plan.seed, "group_law", i);
  Inputs in;
  for (int k = 0; k < 3; ++k) put_group(in, s);
  for (int k = 0; k < 2; ++k) put(in, s.sphere_point());
  put(in, SpherePoint::finite(s.annulus(0.1, 10.0)));
  const LineParams p = random_params(s, i);
  put(in, p.d);
  put(in, p.a);
  return in;
}

Outcome group_law_evaluate(std::span<const double> raw) {
  Reader r(raw);
  const GroupElement g = r.group(), h = r.group(), k = r.group();
  const SpherePoint x = r.point(), y = r.point(), t = r.point();
  const SpacePoint p{x, y, t};
  const LineParams l = r.params();
  Outcome o;
  o.error = std::max({
      chordal_distance(act_on_space(g * h, p), act_on_space(g, act_on_space(h, p))),
      chordal_distance(act_on_space((g * h) * k, p), act_on_space(g * (h * k), p)),
      chordal_distance(act_on_space(g.inverse(), act_on_space(g, p)), p),
      line_distance(act_on_params(g * h, l), act_on_params(g, act_on_params(h, l))),
      line_distance(act_on_params((g * h) * k, l), act_on_params(g * (h * k), l)),
      line_distance(act_on_params(g.inverse(), act_on_params(g, l)), l),
  });
  return o;
}

// ------------------------------------------------------------ degeneration

constexpr int kDegenerationCircle = 64;
constexpr std::array<double, 5> kDegenerationScales = {1e-2, 1e-3, 1e-4, 1e-5, 1e-6};

Inputs degeneration_generate(const VerificationPlan& plan, std::size_t i) {
  Sampler s(plan.seed, "degeneration", i);
  Inputs in;
  put(in, s.sphere_point());
  put(in, s.unit_phase());
  return in;
}

// 1 - (least-squares slope of log sup-distance against log |a|).
Outcome degeneration_evaluate(std::span<const double> raw) {
  Reader r(raw);
  const SpherePoint d = r.point();
  const Complex phase = r.complex();
  const LineParams limit{d, SpherePoint()};
  std::array<double, kDegenerationScales.size()> lx{}, ly{};
  for (std::size_t k = 0; k < kDegenerationScales.size(); ++k) {
    const LineParams p{d, SpherePoint::finite(kDegenerationScales[k] * phase)};
    double sup = 0.0;
    for (int j = 0; j < kDegenerationCircle; ++j) {
      const SpherePoint t = SpherePoint::finite(std::polar(1.0, 2 * std::numbers::pi * j / kDegenerationCircle));
      sup = std::max(sup, chordal_distance(eval_line(p, t), eval_line(limit, t)));
    }
    lx[k] = std::log(kDegenerationScales[k]);
    ly[k] = std::log(sup);
  }
  double mx = 0, my = 0;
  for (std::size_t k = 0; k < lx.size(); ++k) {
    mx += lx[k];
    my += ly[k];
  }
  mx /= lx.size();
  my /= ly.size();
  double sxy = 0, sxx = 0;
  for (std::size_t k = 0; k < lx.size(); ++k) {
    sxy += (lx[k] - mx) * (ly[k] - my);
    sxx += (lx[k] - mx) * (lx[k] - mx);
  }
  Outcome o;
  o.error = std::max(0.0, 1.0 - sxy / sxx);
  if (!std::isfinite(o.error)) o.error = 1.0;
  return o;
}

Inputs limit_structure_generate(const VerificationPlan& plan, std::size_t i) {
  Sampler s(plan.seed, "limit_structure", i);
  Inputs in;
  const SpherePoint d = s.sphere_point();
  put(in, d);
  put(in, i % 2 == 0 ? d : s.sphere_point());
  return in;
}

// 1 when the a -> 0 limit at d coincides with the a -> infinity limit at d'.
Outcome limit_structure_evaluate(std::span<const double> raw) {
  Reader r(raw);
  const SpherePoint d = r.point(), e = r.point();
  const ReducibleLimit zero = limit_curve(d, LimitDirection::kTowardZero);
  const ReducibleLimit inf = limit_curve(e, LimitDirection::kTowardInfinity);
  Outcome o;
  if (same_limit(zero, inf)) o.error = 1.0;
  if (zero.extra_components[0].degree == inf.extra_components[0].degree) o.error = 1.0;
  return o;
}

// ---------------------------------------------------------------- K orbit

constexpr int kIsotropyProbes = 8;

Inputs transport_k_generate(const VerificationPlan& plan, std::size_t i) {
  Sampler s(plan.seed, "transport_k", i);
  Inputs in;
  const bool isotropy = i % 10 == 0;
  put(in, double(isotropy));
  const SpherePoint d = isotropy ? SpherePoint() : s.sphere_point();
  put(in, d);
  put(in, SpherePoint::finite(isotropy ? Complex(1.0) : s.unit_phase()));
  put(in, isotropy ? d : (i % 10 == 1 ? antipodal(d) : s.sphere_point()));
  put(in, SpherePoint::finite(isotropy ? Complex(1.0) : s.unit_phase()));
  for (int k = 0; k < kIsotropyProbes; ++k) {
    put(in, s.sphere_point());
    put(in, SpherePoint::finite(s.unit_phase()));
  }
  return in;
}

Outcome transport_k_evaluate(std::span<const double> raw) {
  Reader r(raw);
  const bool isotropy = r.real() != 0.0;
  const LineParams src = r.params(), dst = r.params();
  const GroupElement g = transport_on_K(src, dst);
  Outcome o;
  o.error = line_distance(act_on_params(g, src), dst);
  if (isotropy) {
    for (int k = 0; k < kIsotropyProbes; ++k) {
      const LineParams q = r.params();
      o.error = std::max(o.error, line_distance(act_on_params(g, q), q));
    }
  }
  return o;
}

Inputs fiber_equivariance_generate(const VerificationPlan& plan, std::size_t i) {
  Sampler s(plan.seed, "fiber_equivariance", i);
  Inputs in;
  put_group(in, s);
  put(in, s.sphere_point());
  put(in, i % 50 == 0 ? SpherePoint() : SpherePoint::finite(off_unit(s, 1e-2, 1e2)));
  return in;
}

Outcome fiber_equivariance_evaluate(std::span<const double> raw) {
  Reader r(raw);
  const GroupElement g = r.group();
  const LineParams p = r.params();
  const FiberZeroPoint via_params = fiber_zero_point(act_on_params(g, p));
  const FiberZeroPoint direct = act_on_fiber_point(g, fiber_zero_point(p));
  Outcome o;
  o.error = std::max(chordal_distance(via_params.d, direct.d), chordal_distance(via_params.v, direct.v));
  return o;
}

// ------------------------------------------------------------------ table

std::size_t plain_count(const VerificationPlan& plan) { return plan.samples_per_suite; }

nlohmann::json no_details(const VerificationPlan&) { return nlohmann::json::object(); }

const std::vector<Suite>& suites() {
  static const std::vector<Suite> all = [] {
    std::vector<Suite> v;
    v.push_back({"foliation", 1e-9, [](const VerificationPlan& p) { return foliation_layout(p).total(); },
                 foliation_generate, foliation_evaluate, nullptr, [](const VerificationPlan& p) {
                   const FoliationLayout l = foliation_layout(p);
                   return nlohmann::json{{"generic_points", l.generic},
                                         {"fiber_zero_points", l.fiber_zero},
                                         {"disjointness_pairs", l.disjoint},
                                         {"reducible_probes", l.reducible},
                                         {"injected_diagonal", l.diagonal},
                                         {"expected_rejections", 0},
                                         {"reducible_members", 0}};
                 }});
    v.push_back({"reality", 1e-12, plain_count, reality_generate, nullptr, reality_chunk, no_details});
    v.push_back({"k_in_q", 1e-12, plain_count, k_in_q_generate, nullptr, k_in_q_chunk, no_details});
    v.push_back({"trajectory", 1e-10, plain_count, trajectory_generate, trajectory_evaluate, nullptr, no_details});
    v.push_back({"trajectory_factored", 1e-10, plain_count, trajectory_factored_generate,
                 trajectory_factored_evaluate, nullptr, no_details});
    v.push_back({"jacobian_fd", 1e-5, plain_count, jacobian_fd_generate, jacobian_fd_evaluate, nullptr,
                 [](const VerificationPlan&) {
                   return nlohmann::json{{"coordinates", "(Re d, Im d, Re a, Im a) -> (Re x, Im x, Re y, Im y)"},
                                         {"sign", 1},
                                         {"step", kFdStep}};
                 }});
    v.push_back({"jacobian_zero_set", 1e-8, plain_count, jacobian_zero_set_generate,
                 jacobian_zero_set_evaluate, nullptr, no_details});
    v.push_back({"swap", 1e-12, plain_count, swap_generate, swap_evaluate, nullptr, no_details});
    v.push_back({"equivariance", 1e-10, plain_count, equivariance_generate, equivariance_evaluate, nullptr,
                 no_details});
    v.push_back({"group_law", 1e-11, plain_count, group_law_generate, group_law_evaluate, nullptr, no_details});
    v.push_back({"degeneration", 0.1, plain_count, degeneration_generate, degeneration_evaluate, nullptr,
                 no_details});
    v.push_back({"limit_structure", 0.5, plain_count, limit_structure_generate, limit_structure_evaluate,
                 nullptr, no_details});
    v.push_back({"transport_k", 1e-10, plain_count, transport_k_generate, transport_k_evaluate, nullptr,
                 no_details});
    v.push_back({"fiber_equivariance", 1e-10, plain_count, fiber_equivariance_generate,
                 fiber_equivariance_evaluate, nullptr, no_details});
    // Kernel suites also get a per-sample path: a chunk of one.
    for (Suite& s : v) {
      if (s.evaluate) continue;
      auto chunk = s.evaluate_chunk;
      s.evaluate = [chunk](std::span<const double> in) {
        const Inputs copy(in.begin(), in.end());
        Outcome o;
        chunk(std::span<const Inputs>(&copy, 1), std::span<Outcome>(&o, 1));
        if (o.threw) throw Error(ErrorKind::kNumericalFailure, o.message);
        return o;
      };
    }
    return v;
  }();
  return all;
}

const Suite& find_suite(const std::string& name) {
  for (const Suite& s : suites()) {
    if (s.name == name) return s;
  }
  throw Error(ErrorKind::kDomain, "unknown suite: " + name);
}

double tolerance_for(const Suite& s, const VerificationPlan& plan) {
  const auto it = plan.tolerances.find(s.name);
  return it == plan.tolerances.end() ? s.tolerance : it->second;
}

std::vector<std::string> selected(const VerificationPlan& plan) {
  return plan.suites.empty() ? suite_names() : plan.suites;
}

constexpr std::size_t kChunk = 64;

SuiteRecord run_suite(const Suite& suite, const VerificationPlan& plan) {
  const std::size_t n = suite.count(plan);
  std::vector<Inputs> inputs(n);
  std::vector<Outcome> outcomes(n);
  const std::size_t chunks = (n + kChunk - 1) / kChunk;
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t c = next++; c < chunks; c = next++) {
      const std::size_t begin = c * kChunk, end = std::min(n, begin + kChunk);
      for (std::size_t i = begin; i < end; ++i) inputs[i] = suite.generate(plan, i);
      if (suite.evaluate_chunk) {
        suite.evaluate_chunk(std::span<const Inputs>(inputs).subspan(begin, end - begin),
                             std::span<Outcome>(outcomes).subspan(begin, end - begin));
      } else {
        for (std::size_t i = begin; i < end; ++i) outcomes[i] = guarded(suite.evaluate, inputs[i]);
      }
    }
  };
  unsigned threads = plan.threads != 0 ? plan.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(chunks, 1)));
  std::vector<std::thread> pool;
  for (unsigned k = 1; k < threads; ++k) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  SuiteRecord rec;
  rec.name = suite.name;
  rec.samples = n;
  rec.tolerance = tolerance_for(suite, plan);
  rec.details = suite.details(plan);
  for (std::size_t i = 0; i < n; ++i) {
    const Outcome& o = outcomes[i];
    if (o.counter != nullptr) {
      auto& slot = rec.details[o.counter];
      slot = (slot.is_number() ? slot.get<std::size_t>() : 0) + 1;
    }
    const bool finite = std::isfinite(o.error);
    if (!o.threw && finite) rec.max_error = std::max(rec.max_error, o.error);
    if (o.threw || !finite || o.error > rec.tolerance) {
      ++rec.failure_count;
      if (rec.failures.size() < kMaxRecordedFailures) {
        rec.failures.push_back({i, inputs[i], o.error, o.message});
      }
    }
  }
  return rec;
}

}  // namespace

bool VerificationReport::passed() const {
  return std::all_of(suites.begin(), suites.end(), [](const SuiteRecord& s) { return s.passed(); });
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const Suite& s : suites()) v.push_back(s.name);
    return v;
  }();
  return names;
}

double default_tolerance(const std::string& suite) { return find_suite(suite).tolerance; }

bool is_suite(const std::string& name) {
  const auto& n = suite_names();
  return std::find(n.begin(), n.end(), name) != n.end();
}

void validate(const VerificationPlan& plan) {
  for (const std::string& s : plan.suites) find_suite(s);
  for (const auto& [name, tol] : plan.tolerances) {
    find_suite(name);
    if (!(tol > 0.0)) throw Error(ErrorKind::kDomain, "tolerance for " + name + " must be positive");
  }
  if (plan.samples_per_suite < kMinStatisticalSamples) {
    throw Error(ErrorKind::kDomain, "samples_per_suite must be at least " +
                                        std::to_string(kMinStatisticalSamples));
  }
  if (plan.t_shells.empty()) throw Error(ErrorKind::kDomain, "t_shells is empty");
  for (double r : plan.t_shells) {
    if (!(r > 0.0) || !std::isfinite(r)) throw Error(ErrorKind::kDomain, "t shells must be positive");
  }
}

SuiteRecord verify_suite(const std::string& name, const VerificationPlan& plan) {
  validate(plan);
  return run_suite(find_suite(name), plan);
}

SuiteRecord verify_foliation(const VerificationPlan& plan) { return verify_suite("foliation", plan); }

VerificationReport verify_all(const VerificationPlan& plan) {
  validate(plan);
  VerificationReport report{plan, {}};
  for (const std::string& name : selected(plan)) report.suites.push_back(run_suite(find_suite(name), plan));
  return report;
}

std::vector<double> sample_inputs(const std::string& suite, const VerificationPlan& plan, std::size_t index) {
  return find_suite(suite).generate(plan, index);
}

double rerun_sample(const std::string& suite, std::span<const double> inputs) {
  return find_suite(suite).evaluate(inputs).error;
}

nlohmann::json to_json(const VerificationPlan& plan) {
  nlohmann::json tolerances = nlohmann::json::object();
  for (const std::string& name : selected(plan)) tolerances[name] = tolerance_for(find_suite(name), plan);
  return {{"seed", plan.seed},
          {"samples_per_suite", plan.samples_per_suite},
          {"t_shells", plan.t_shells},
          {"suites", selected(plan)},
          {"tolerances", tolerances},
          {"inject_diagonal", plan.inject_diagonal}};
}

nlohmann::json to_json(const VerificationReport& report) {
  nlohmann::json suites = nlohmann::json::array();
  for (const SuiteRecord& s : report.suites) {
    nlohmann::json failures = nlohmann::json::array();
    for (const FailureRecord& f : s.failures) {
      nlohmann::json rec{{"index", f.index}, {"inputs", f.inputs}, {"error", json_number(f.error)}};
      if (!f.message.empty()) rec["message"] = f.message;
      failures.push_back(rec);
    }
    suites.push_back({{"name", s.name},
                      {"samples", s.samples},
                      {"max_error", s.max_error},
                      {"tolerance", s.tolerance},
                      {"failure_count", s.failure_count},
                      {"failures", failures},
                      {"details", s.details},
                      {"status", s.passed() ? "pass" : "fail"}});
  }
  return {{"plan", to_json(report.plan)}, {"suites", suites}, {"status", report.passed() ? "pass" : "fail"}};
}

std::string to_table(const VerificationReport& report) {
  std::ostringstream out;
  char line[160];
  std::snprintf(line, sizeof line, "%-20s %8s %12s %10s %9s  %s\n", "suite", "samples", "max_error",
                "tolerance", "failures", "status");
  out << line;
  for (const SuiteRecord& s : report.suites) {
    std::snprintf(line, sizeof line, "%-20s %8zu %12.3e %10.1e %9zu  %s\n", s.name.c_str(), s.samples,
                  s.max_error, s.tolerance, s.failure_count, s.passed() ? "pass" : "FAIL");
    out << line;
  }
  out << "overall: " << (report.passed() ? "pass" : "FAIL") << "\n";
  return out.str();
}

}  // namespace twistor
