#include "kernels_impl.hpp"

#if defined(__x86_64__) || defined(__i386__)
#include <immintrin.h>
#define TWISTOR_HAVE_X86 1
#else
#define TWISTOR_HAVE_X86 0
#endif

namespace twistor::kernels::detail::avx2 {

#if TWISTOR_HAVE_X86

// No "fma" in the target list: mul/add pairs must round separately to match
// the scalar reference.
#define TWISTOR_AVX2 __attribute__((target("avx2")))

namespace {

constexpr std::size_t kLanes = 4;

struct C {
  __m256d re;
  __m256d im;
};

TWISTOR_AVX2 inline C load(ColumnIn c, std::size_t i) {
  return {_mm256_loadu_pd(c.re + i), _mm256_loadu_pd(c.im + i)};
}

TWISTOR_AVX2 inline void store(ColumnOut c, std::size_t i, C z) {
  _mm256_storeu_pd(c.re + i, z.re);
  _mm256_storeu_pd(c.im + i, z.im);
}

TWISTOR_AVX2 inline C mul(C a, C b) {
  return {_mm256_sub_pd(_mm256_mul_pd(a.re, b.re), _mm256_mul_pd(a.im, b.im)),
          _mm256_add_pd(_mm256_mul_pd(a.re, b.im), _mm256_mul_pd(a.im, b.re))};
}

TWISTOR_AVX2 inline C add(C a, C b) {
  return {_mm256_add_pd(a.re, b.re), _mm256_add_pd(a.im, b.im)};
}

TWISTOR_AVX2 inline C sub(C a, C b) {
  return {_mm256_sub_pd(a.re, b.re), _mm256_sub_pd(a.im, b.im)};
}

// Sign flip by xor, bit-identical to unary minus (including on zeros).
TWISTOR_AVX2 inline C conj(C a) {
  return {a.re, _mm256_xor_pd(a.im, _mm256_set1_pd(-0.0))};
}

TWISTOR_AVX2 inline __m256d norm2(C a) {
  return _mm256_add_pd(_mm256_mul_pd(a.re, a.re), _mm256_mul_pd(a.im, a.im));
}

}  // namespace

bool supported() {
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2");
}

TWISTOR_AVX2 void eval_line(const EvalArgs& g) {
  std::size_t i = 0;
  for (; i + kLanes <= g.n; i += kLanes) {
    const C d0 = load(g.d0, i), d1 = load(g.d1, i);
    const C a0 = load(g.a0, i), a1 = load(g.a1, i);
    const C t0 = load(g.t0, i), t1 = load(g.t1, i);
    const C cd0 = conj(d0), cd1 = conj(d1);
    const C ca0 = conj(a0), ca1 = conj(a1);
    store(g.x0, i, sub(mul(mul(d0, a1), t1), mul(mul(a0, cd1), t0)));
    store(g.x1, i, add(mul(mul(d1, a1), t1), mul(mul(a0, cd0), t0)));
    store(g.y0, i, sub(mul(mul(ca0, d0), t1), mul(mul(ca1, cd1), t0)));
    store(g.y1, i, add(mul(mul(ca0, d1), t1), mul(mul(ca1, cd0), t0)));
  }
  scalar::eval_line(g, i, g.n);
}

TWISTOR_AVX2 void chordal(const ChordalArgs& g) {
  const __m256d one = _mm256_set1_pd(1.0);
  std::size_t i = 0;
  for (; i + kLanes <= g.n; i += kLanes) {
    const C p0 = load(g.p0, i), p1 = load(g.p1, i);
    const C q0 = load(g.q0, i), q1 = load(g.q1, i);
    const C cross = sub(mul(p0, q1), mul(p1, q0));
    const __m256d np = _mm256_sqrt_pd(_mm256_add_pd(norm2(p0), norm2(p1)));
    const __m256d nq = _mm256_sqrt_pd(_mm256_add_pd(norm2(q0), norm2(q1)));
    const __m256d d = _mm256_div_pd(_mm256_sqrt_pd(norm2(cross)), _mm256_mul_pd(np, nq));
    // min_pd(d, 1) yields d only when d < 1, like the scalar comparison.
    _mm256_storeu_pd(g.out + i, _mm256_min_pd(d, one));
  }
  scalar::chordal(g, i, g.n);
}

#else

bool supported() { return false; }
void eval_line(const EvalArgs& g) { scalar::eval_line(g, 0, g.n); }
void chordal(const ChordalArgs& g) { scalar::chordal(g, 0, g.n); }

#endif

}  // namespace twistor::kernels::detail::avx2
