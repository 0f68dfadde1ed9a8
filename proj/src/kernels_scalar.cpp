#include <cmath>

#include "kernels_impl.hpp"

namespace twistor::kernels::detail::scalar {

namespace {

struct C {
  double re;
  double im;
};

C load(ColumnIn c, std::size_t i) { return {c.re[i], c.im[i]}; }
void store(ColumnOut c, std::size_t i, C z) {
  c.re[i] = z.re;
  c.im[i] = z.im;
}

C mul(C a, C b) { return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re}; }
C add(C a, C b) { return {a.re + b.re, a.im + b.im}; }
C sub(C a, C b) { return {a.re - b.re, a.im - b.im}; }
C conj(C a) { return {a.re, -a.im}; }
double norm2(C a) { return a.re * a.re + a.im * a.im; }

}  // namespace

void eval_line(const EvalArgs& g, std::size_t begin, std::size_t end) {
  for (std::size_t i = begin; i < end; ++i) {
    const C d0 = load(g.d0, i), d1 = load(g.d1, i);
    const C a0 = load(g.a0, i), a1 = load(g.a1, i);
    const C t0 = load(g.t0, i), t1 = load(g.t1, i);
    const C cd0 = conj(d0), cd1 = conj(d1);
    const C ca0 = conj(a0), ca1 = conj(a1);
    // x = (d0 a1 t1 - a0 conj(d1) t0 : d1 a1 t1 + a0 conj(d0) t0)
    store(g.x0, i, sub(mul(mul(d0, a1), t1), mul(mul(a0, cd1), t0)));
    store(g.x1, i, add(mul(mul(d1, a1), t1), mul(mul(a0, cd0), t0)));
    // y = (conj(a0) d0 t1 - conj(a1) conj(d1) t0 : conj(a0) d1 t1 + conj(a1) conj(d0) t0)
    store(g.y0, i, sub(mul(mul(ca0, d0), t1), mul(mul(ca1, cd1), t0)));
    store(g.y1, i, add(mul(mul(ca0, d1), t1), mul(mul(ca1, cd0), t0)));
  }
}

void chordal(const ChordalArgs& g, std::size_t begin, std::size_t end) {
  for (std::size_t i = begin; i < end; ++i) {
    const C p0 = load(g.p0, i), p1 = load(g.p1, i);
    const C q0 = load(g.q0, i), q1 = load(g.q1, i);
    const C cross = sub(mul(p0, q1), mul(p1, q0));
    const double np = std::sqrt(norm2(p0) + norm2(p1));
    const double nq = std::sqrt(norm2(q0) + norm2(q1));
    const double d = std::sqrt(norm2(cross)) / (np * nq);
    g.out[i] = d < 1.0 ? d : 1.0;
  }
}

}  // namespace twistor::kernels::detail::scalar
