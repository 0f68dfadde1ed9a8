#include "twistor/sphere.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "twistor/error.hpp"

namespace twistor {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidMap: return "invalid-map";
    case ErrorKind::kInvalidFiber: return "invalid-fiber";
    case ErrorKind::kOnDiagonal: return "on-diagonal";
    case ErrorKind::kLiesOnQ: return "lies-on-Q";
    case ErrorKind::kNumericalFailure: return "numerical-failure";
    case ErrorKind::kDomain: return "domain";
    case ErrorKind::kChart: return "chart";
    case ErrorKind::kParse: return "parse";
  }
  return "unknown";
}

ChordalTolerance::ChordalTolerance(double eps) : epsilon(eps) {
  if (!(eps >= 0.0)) {
    throw Error(ErrorKind::kDomain, "chordal tolerance must be nonnegative");
  }
}

namespace {

bool is_finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace

SpherePoint::SpherePoint(Complex z0, Complex z1) {
  if (!is_finite(z0) || !is_finite(z1)) {
    throw Error(ErrorKind::kDomain, "non-finite homogeneous coordinate");
  }
  const double m0 = std::abs(z0);
  const double m1 = std::abs(z1);
  if (m0 == 0.0 && m1 == 0.0) {
    throw Error(ErrorKind::kDomain, "(0 : 0) is not a point of P^1");
  }
  if (m0 >= m1) {
    z0_ = 1.0;
    z1_ = z1 == 0.0 ? Complex(0.0) : z1 / z0;
  } else {
    z0_ = z0 == 0.0 ? Complex(0.0) : z0 / z1;
    z1_ = 1.0;
  }
}

std::optional<Complex> SpherePoint::affine() const {
  if (is_infinity()) return std::nullopt;
  if (z1_ == 1.0) return z0_;
  return z0_ / z1_;
}

double SpherePoint::modulus() const {
  if (is_infinity()) return INFINITY;
  return std::abs(z0_) / std::abs(z1_);
}

double SpherePoint::norm() const { return std::hypot(std::abs(z0_), std::abs(z1_)); }

double chordal_distance(const SpherePoint& p, const SpherePoint& q) {
  const double cross = std::abs(p.z0() * q.z1() - p.z1() * q.z0());
  return std::min(1.0, cross / (p.norm() * q.norm()));
}

bool approx_equal(const SpherePoint& p, const SpherePoint& q, ChordalTolerance tol) {
  return chordal_distance(p, q) <= tol.epsilon;
}

SpherePoint antipodal(const SpherePoint& p) {
  return SpherePoint(-std::conj(p.z1()), std::conj(p.z0()));
}

FractionalMap::FractionalMap(Complex p, Complex q, Complex r, Complex s,
                             bool conjugates_input)
    : c_{p, q, r, s}, conj_(conjugates_input) {
  double scale = 0.0;
  for (const Complex& c : c_) {
    if (!is_finite(c)) throw Error(ErrorKind::kInvalidMap, "non-finite coefficient");
    scale = std::max(scale, std::abs(c));
  }
  if (!(std::abs(determinant()) > kDegeneracyFloor * scale * scale)) {
    throw Error(ErrorKind::kInvalidMap, "fractional map is degenerate");
  }
}

SpherePoint FractionalMap::operator()(const SpherePoint& z) const {
  const Complex w0 = conj_ ? std::conj(z.z0()) : z.z0();
  const Complex w1 = conj_ ? std::conj(z.z1()) : z.z1();
  return SpherePoint(c_[0] * w0 + c_[1] * w1, c_[2] * w0 + c_[3] * w1);
}

FractionalMap FractionalMap::inverse() const {
  // Holomorphic: the adjugate. Anti-holomorphic: w = M conj(z) gives
  // z = conj(M^-1) conj(w).
  if (!conj_) return FractionalMap(c_[3], -c_[1], -c_[2], c_[0], false);
  return FractionalMap(std::conj(c_[3]), -std::conj(c_[1]), -std::conj(c_[2]),
                       std::conj(c_[0]), true);
}

FractionalMap operator*(const FractionalMap& f, const FractionalMap& g) {
  const auto& a = f.coefficients();
  auto b = g.coefficients();
  // f(M_g w) with f anti-holomorphic conjugates the inner matrix.
  if (f.conjugates_input()) {
    for (Complex& c : b) c = std::conj(c);
  }
  return FractionalMap(a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
                       a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3],
                       f.conjugates_input() != g.conjugates_input());
}

FractionalMap antipodal_map() { return FractionalMap(0.0, -1.0, 1.0, 0.0, true); }

}  // namespace twistor
