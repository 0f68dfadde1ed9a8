#pragma once

// Seeded, per-sample random streams. Every sample draws from its own generator
// keyed by (seed, stream name, index), so results do not depend on thread
// scheduling and any single sample can be regenerated in isolation.

#include <cstdint>
#include <random>
#include <string_view>

#include "twistor/curve_family.hpp"
#include "twistor/symmetry.hpp"

namespace twistor {

std::uint64_t stream_seed(std::uint64_t seed, std::string_view stream, std::uint64_t index);

class Sampler {
 public:
  Sampler(std::uint64_t seed, std::string_view stream, std::uint64_t index)
      : rng_(stream_seed(seed, stream, index)) {}

  double uniform(double lo, double hi);
  double normal();
  /// log-uniform on [lo, hi], lo > 0.
  double log_uniform(double lo, double hi);
  Complex unit_phase();
  /// |z| log-uniform on [rmin, rmax], uniform argument.
  Complex annulus(double rmin, double rmax);
  /// Uniform for the chordal (round) measure on P^1.
  SpherePoint sphere_point();
  /// Haar-distributed SU(2) part and uniform U(1) part.
  GroupElement group_element();
  std::uint64_t bits() { return rng_(); }

 private:
  std::mt19937_64 rng_;
};

}  // namespace twistor
