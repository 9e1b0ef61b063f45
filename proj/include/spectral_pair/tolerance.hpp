#ifndef SPECTRAL_PAIR_TOLERANCE_HPP
#define SPECTRAL_PAIR_TOLERANCE_HPP

namespace spair {

/// Every threshold used by the library. All values are relative to the
/// natural scale of the quantity they guard (matrix norm, largest
/// coefficient, largest eigenvalue), never absolute.
struct ToleranceConfig {
  // |c3| <= leading * max|c_i| rejects a cubic as not really cubic.
  double leading = 1e-14;
  // |det M| <= singular * ||M||^3 counts as singular.
  double singular = 1e-12;
  // rank-2 test for kernel extraction: smallest singular measure below,
  // second-smallest above (both relative to ||M||).
  double rank = 1e-8;
  // min |h_i - h_j| <= separation * max|h_i| counts as repeated.
  double separation = 1e-6;
  // |u12|, |u13| <= gauge * ||U|| cannot be normalized to 1.
  double gauge = 1e-8;
  // |u12 u13 (h3 - h2)| <= divisor * max|h_i| has no finite divisor point.
  double divisor = 1e-10;
  // relative residual of the curve equation at a point declared on the curve.
  double on_curve = 1e-8;
  // elementary symmetric functions of h against (p+, p-, d1).
  double symmetric = 1e-9;
  // residuals of the restricted cubic at points declared incident.
  double incidence = 1e-6;
  // minimum projective distance between the nine axis intersections.
  double smoothness = 1e-6;
  // agreement between the closed-form and linear-solve routes for u21, u31.
  double closed_form = 1e-7;

  /// Defaults documented per operation.
  static constexpr ToleranceConfig defaults() { return {}; }

  /// Margins used when drawing random test pairs: far enough from every
  /// degeneracy that double-precision round trips stay well conditioned.
  static constexpr ToleranceConfig sampling() {
    ToleranceConfig t;
    t.singular = 1e-3;
    t.separation = 5e-2;
    t.gauge = 5e-2;
    t.divisor = 5e-2;
    t.smoothness = 1e-2;
    return t;
  }
};

/// Default tolerance for commuting-diagram and round-trip verification.
inline constexpr double kDefaultVerificationTolerance = 1e-6;

}  // namespace spair

#endif  // SPECTRAL_PAIR_TOLERANCE_HPP
