#pragma once

// The real structure, the M+ <-> M- involution, and the PSU(2) x U(1) action
// on X and on the parameter space M.

#include "twistor/curve_family.hpp"

namespace twistor {

/// sigma(x, y, t) = (-1/conj(y), -1/conj(x), -1/conj(t)).
SpacePoint real_structure(const SpacePoint& p);

/// (d, a) -> (d, 1/conj(a)); induced by exchanging the first two factors.
LineParams swap_involution(const LineParams& params);

/// An element (g1, g3) of PSU(2) x U(1): g1 is the matrix
/// ((alpha, beta), (-conj(beta), conj(alpha))) and g3 a unit scalar.
///
/// g acts on X by (x, y, t) -> (g1 x, g1 y, g3 t). The representative
/// (alpha, beta) is kept as given (after normalization), so g and -g are
/// distinct values with identical actions.
class GroupElement {
 public:
  GroupElement() : alpha_(1.0), beta_(0.0), g3_(1.0) {}
  /// Rescales to |alpha|^2 + |beta|^2 = 1 and |g3| = 1.
  GroupElement(Complex alpha, Complex beta, Complex g3);

  static GroupElement identity() { return {}; }

  Complex alpha() const { return alpha_; }
  Complex beta() const { return beta_; }
  Complex g3() const { return g3_; }

  FractionalMap g1() const;
  GroupElement inverse() const;

 private:
  Complex alpha_;
  Complex beta_;
  Complex g3_;
};

/// (g * h) acts as g after h.
GroupElement operator*(const GroupElement& g, const GroupElement& h);

SpacePoint act_on_space(const GroupElement& g, const SpacePoint& p);

/// The parameter of g(L_{d,a}):
///   d' = (alpha d + beta) / (-conj(beta) d + conj(alpha)),
///   a' = (alpha - beta conj(d)) / (conj(alpha) - conj(beta) d) * conj(g3) * a.
/// |a'| = |a|, so every stratum is preserved.
LineParams act_on_params(const GroupElement& g, const LineParams& params);

/// A group element carrying src to dst; both must lie in K, otherwise
/// Error(kDomain). The PSU(2) part is W U^-1, where U and W are the SU(2)
/// matrices whose first columns are the unit representatives of d_src and
/// d_dst; g3 then matches the a's.
GroupElement transport_on_K(const LineParams& src, const LineParams& dst,
                            double unit_tol = kUnitCircleTolerance);

}  // namespace twistor
