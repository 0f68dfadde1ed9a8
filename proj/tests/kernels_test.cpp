#include <doctest.h>

#include <cstring>
#include <random>

#include "oracles.hpp"
#include "twistor/error.hpp"
#include "twistor/kernels.hpp"

using namespace twistor;
using namespace twistor::kernels;
using oracle::random_complex;

namespace {

LineBatch random_batch(std::size_t n, std::uint64_t seed, std::vector<LineParams>* params = nullptr) {
  std::mt19937_64 rng(seed);
  LineBatch b;
  b.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    SpherePoint a = SpherePoint::finite(random_complex(rng, 1e-3, 1e3));
    if (i % 7 == 3) a = SpherePoint();
    if (i % 11 == 5) a = SpherePoint::infinity();
    SpherePoint t = SpherePoint::finite(random_complex(rng, 1e-2, 1e2));
    if (i % 13 == 0) t = SpherePoint();
    if (i % 13 == 1) t = SpherePoint::infinity();
    SpherePoint d(random_complex(rng, 0.1, 10), random_complex(rng, 0.1, 10));
    if (i % 17 == 2) d = SpherePoint::infinity();
    if (i % 17 == 3) d = SpherePoint();
    b.set(i, {d, a}, t);
    if (params) params->push_back({d, a});
  }
  return b;
}

bool same_bits(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

bool same_bits(const ProjectiveColumn& a, const ProjectiveColumn& b) {
  return same_bits(a.z0.re, b.z0.re) && same_bits(a.z0.im, b.z0.im) && same_bits(a.z1.re, b.z1.re) &&
         same_bits(a.z1.im, b.z1.im);
}

}  // namespace

TEST_CASE("dispatch") {
  CHECK(isa_available(Isa::kScalar));
  CHECK(isa_available(active_isa()));
  CHECK(std::string(to_string(Isa::kScalar)) == "scalar");
  CHECK(std::string(to_string(Isa::kAvx2)) == "avx2");
  MESSAGE("active instruction set: " << to_string(active_isa()));
}

TEST_CASE("scalar and SIMD eval_line agree bit for bit") {
  if (!isa_available(Isa::kAvx2)) return;
  for (std::size_t n : {0, 1, 3, 4, 5, 8, 31, 1000, 1003}) {
    const LineBatch b = random_batch(n, 100 + n);
    PointBatch s, v;
    eval_line(b, s, Isa::kScalar);
    eval_line(b, v, Isa::kAvx2);
    CHECK(same_bits(s.x, v.x));
    CHECK(same_bits(s.y, v.y));
  }
}

TEST_CASE("scalar and SIMD chordal distance agree bit for bit") {
  if (!isa_available(Isa::kAvx2)) return;
  for (std::size_t n : {1, 4, 7, 1001}) {
    const LineBatch b = random_batch(n, 200 + n);
    std::vector<double> s(n), v(n);
    chordal_distance(b.d, b.t, s, Isa::kScalar);
    chordal_distance(b.d, b.t, v, Isa::kAvx2);
    CHECK(same_bits(s, v));
  }
}

TEST_CASE("kernels agree with the library") {
  const std::size_t n = 2000;
  std::vector<LineParams> params;
  const LineBatch b = random_batch(n, 7, &params);
  PointBatch out;
  eval_line(b, out);
  std::vector<double> dist(n);
  chordal_distance(b.d, b.a, dist);
  for (std::size_t i = 0; i < n; ++i) {
    const LineParams& p = params[i];
    const SpherePoint t = b.t.get(i);
    CHECK(std::abs(dist[i] - chordal_distance(b.d.get(i), b.a.get(i))) <= 1e-15);
    const bool degenerate = p.a.affine() == Complex(0.0) && (t.is_infinity() || t.affine() == Complex(0.0));
    if (degenerate || classify(p) == Stratum::kC2) continue;
    const SpacePoint q = eval_line(p, t);
    CHECK(chordal_distance(out.x.get(i), q.x) <= 1e-14);
    CHECK(chordal_distance(out.y.get(i), q.y) <= 1e-14);
  }
}

TEST_CASE("size mismatch") {
  ProjectiveColumn p, q;
  p.resize(3);
  q.resize(4);
  std::vector<double> out(3);
  CHECK_THROWS_AS(chordal_distance(p, q, out), Error);
}
