#pragma once

// Batched evaluation of the curve family over structure-of-arrays columns.
// Each kernel has a scalar reference implementation and an AVX2 variant; the
// variant is chosen once at runtime from the CPU features (TWISTOR_ISA=scalar
// forces the reference). Both perform the same IEEE operations in the same
// order without fused multiply-add, so their outputs agree bit for bit.

#include <cstddef>
#include <span>
#include <vector>

#include "twistor/curve_family.hpp"

namespace twistor::kernels {

enum class Isa { kScalar, kAvx2 };

const char* to_string(Isa isa);
bool isa_available(Isa isa);
/// The variant used when no Isa is passed explicitly.
Isa active_isa();

struct ComplexColumn {
  std::vector<double> re;
  std::vector<double> im;

  std::size_t size() const { return re.size(); }
  void resize(std::size_t n) {
    re.resize(n);
    im.resize(n);
  }
  void set(std::size_t i, Complex z) {
    re[i] = z.real();
    im[i] = z.imag();
  }
  Complex get(std::size_t i) const { return {re[i], im[i]}; }
};

/// Homogeneous pairs (z0 : z1), not necessarily normalized.
struct ProjectiveColumn {
  ComplexColumn z0;
  ComplexColumn z1;

  std::size_t size() const { return z0.size(); }
  void resize(std::size_t n) {
    z0.resize(n);
    z1.resize(n);
  }
  void set(std::size_t i, Complex w0, Complex w1) {
    z0.set(i, w0);
    z1.set(i, w1);
  }
  void set(std::size_t i, const SpherePoint& p) { set(i, p.z0(), p.z1()); }
  SpherePoint get(std::size_t i) const { return SpherePoint(z0.get(i), z1.get(i)); }
};

/// Curves in frame form (see LineFrame) together with the fiber to cut.
struct LineBatch {
  ProjectiveColumn d;  // representative (d0, d1)
  ProjectiveColumn a;  // a against that representative
  ProjectiveColumn t;

  std::size_t size() const { return d.size(); }
  void resize(std::size_t n) {
    d.resize(n);
    a.resize(n);
    t.resize(n);
  }
  void set(std::size_t i, const LineParams& params, const SpherePoint& t_value);
};

struct PointBatch {
  ProjectiveColumn x;
  ProjectiveColumn y;

  std::size_t size() const { return x.size(); }
  void resize(std::size_t n) {
    x.resize(n);
    y.resize(n);
  }
};

/// x and y of every curve in the batch by the frame formulas. No special
/// cases: entries with a = 0 and t in {0, infinity} come out as (0 : 0).
void eval_line(const LineBatch& in, PointBatch& out, Isa isa = active_isa());

/// Elementwise chordal distance; p, q and out must have equal sizes.
void chordal_distance(const ProjectiveColumn& p, const ProjectiveColumn& q,
                      std::span<double> out, Isa isa = active_isa());

}  // namespace twistor::kernels
