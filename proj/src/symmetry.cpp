#include "twistor/symmetry.hpp"

#include <cmath>

#include "twistor/error.hpp"

namespace twistor {

SpacePoint real_structure(const SpacePoint& p) {
  return {antipodal(p.y), antipodal(p.x), antipodal(p.t)};
}

LineParams swap_involution(const LineParams& params) {
  const SpherePoint& a = params.a;
  return {params.d, SpherePoint(std::conj(a.z1()), std::conj(a.z0()))};
}

GroupElement::GroupElement(Complex alpha, Complex beta, Complex g3) {
  const double n = std::hypot(std::abs(alpha), std::abs(beta));
  const double m = std::abs(g3);
  if (!(n > 0.0) || !(m > 0.0) || !std::isfinite(n) || !std::isfinite(m)) {
    throw Error(ErrorKind::kDomain, "group element needs (alpha, beta) != 0 and g3 != 0");
  }
  alpha_ = alpha / n;
  beta_ = beta / n;
  g3_ = g3 / m;
}

FractionalMap GroupElement::g1() const {
  return FractionalMap(alpha_, beta_, -std::conj(beta_), std::conj(alpha_));
}

GroupElement GroupElement::inverse() const {
  return GroupElement(std::conj(alpha_), -beta_, std::conj(g3_));
}

GroupElement operator*(const GroupElement& g, const GroupElement& h) {
  const Complex a = g.alpha(), b = g.beta();
  const Complex c = h.alpha(), d = h.beta();
  return GroupElement(a * c - b * std::conj(d), a * d + b * std::conj(c), g.g3() * h.g3());
}

SpacePoint act_on_space(const GroupElement& g, const SpacePoint& p) {
  const FractionalMap m = g.g1();
  return {m(p.x), m(p.y), SpherePoint(g.g3() * p.t.z0(), p.t.z1())};
}

LineParams act_on_params(const GroupElement& g, const LineParams& params) {
  // In frame form the SU(2) matrix acts linearly on the representative of d
  // and a only picks up conj(g3).
  const LineFrame f = to_frame(params);
  const Complex al = g.alpha(), be = g.beta();
  const Complex d0 = al * f.d0 + be * f.d1;
  const Complex d1 = -std::conj(be) * f.d0 + std::conj(al) * f.d1;
  const SpherePoint a(std::conj(g.g3()) * f.a.z0(), f.a.z1());
  return from_frame({d0, d1, a});
}

GroupElement transport_on_K(const LineParams& src, const LineParams& dst,
                            double unit_tol) {
  if (classify(src, unit_tol) != Stratum::kK || classify(dst, unit_tol) != Stratum::kK) {
    throw Error(ErrorKind::kDomain, "transport_on_K needs |a| = 1 at both ends");
  }
  const LineFrame fs = to_frame(src);
  const LineFrame fd = to_frame(dst);
  const double ns = std::hypot(std::abs(fs.d0), std::abs(fs.d1));
  const double nd = std::hypot(std::abs(fd.d0), std::abs(fd.d1));
  const Complex u0 = fs.d0 / ns, u1 = fs.d1 / ns;
  const Complex w0 = fd.d0 / nd, w1 = fd.d1 / nd;
  // G = W U^*, where the SU(2) matrix with first column (p, q) is
  // ((p, -conj(q)), (q, conj(p))).
  const Complex alpha = w0 * std::conj(u0) + std::conj(w1) * u1;
  const Complex beta = w0 * std::conj(u1) - std::conj(w1) * u0;
  // G maps the representative of d_src to a positive multiple of that of
  // d_dst, so a is carried to conj(g3) a_src.
  const Complex as = *fs.a.affine();
  const Complex ad = *fd.a.affine();
  return GroupElement(alpha, beta, std::conj(ad) / std::conj(as));
}

}  // namespace twistor
