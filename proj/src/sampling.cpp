#include "twistor/sampling.hpp"

#include <cmath>
#include <numbers>

namespace twistor {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

std::uint64_t stream_seed(std::uint64_t seed, std::string_view stream, std::uint64_t index) {
  return splitmix64(splitmix64(splitmix64(seed) ^ fnv1a(stream)) ^ index);
}

double Sampler::uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng_);
}

double Sampler::normal() { return std::normal_distribution<double>()(rng_); }

double Sampler::log_uniform(double lo, double hi) {
  return std::exp(uniform(std::log(lo), std::log(hi)));
}

Complex Sampler::unit_phase() { return std::polar(1.0, uniform(-std::numbers::pi, std::numbers::pi)); }

Complex Sampler::annulus(double rmin, double rmax) {
  return log_uniform(rmin, rmax) * unit_phase();
}

SpherePoint Sampler::sphere_point() {
  const double z = uniform(-1.0, 1.0);
  const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
  const Complex w = r * unit_phase();
  // Stereographic projection from the north pole, written in whichever chart
  // keeps both components bounded away from (0, 0).
  if (z < 0.0) return SpherePoint(w, 1.0 - z);
  return SpherePoint(1.0 + z, std::conj(w));
}

GroupElement Sampler::group_element() {
  const Complex alpha(normal(), normal());
  const Complex beta(normal(), normal());
  return GroupElement(alpha, beta, unit_phase());
}

}  // namespace twistor
