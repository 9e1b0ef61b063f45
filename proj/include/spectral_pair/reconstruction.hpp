#ifndef SPECTRAL_PAIR_RECONSTRUCTION_HPP
#define SPECTRAL_PAIR_RECONSTRUCTION_HPP

// Inverse map: spectral cubic + divisor point + eigenvalue ordering back to
// the normalized pair (diag(h), U).
//
// The diagonal of U comes from the three equations for q+, r+ and t, which
// are linear in u11, u22, u33. The divisor point fixes u23 and u32. The last
// two unknowns u21, u31 enter q- and r- linearly and are recovered twice: by
// solving that 2x2 system (authoritative) and by the expanded closed forms
// (cross-check).

#include <cmath>
#include <sstream>
#include <tuple>
#include <utility>

#include "spectral_pair/spectral_map.hpp"

namespace spair {

/// Roots of x^3 - p+ x^2 + p- x - d1, in canonical order.
inline Triple eigenvalues_from_coefficients(const CurveCoefficients& c, const ToleranceConfig& tol = {}) {
  const Triple h = solve_cubic({1.0, -c.p_plus, c.p_minus, -c.d1}, tol);
  require_separated(h, tol, "eigenvalues from (p_plus, p_minus, d1)");
  return h;
}

namespace detail {
// q+ h_i^2 - t h_i + r+ : the numerator shared by u_ii and the closed forms.
inline Complex diagonal_numerator(const CurveCoefficients& c, Complex hi) {
  return c.q_plus * hi * hi - c.t * hi + c.r_plus;
}
}  // namespace detail

/// (u11, u22, u33) solving
///   q+ = u11 + u22 + u33
///   r+ = h2 h3 u11 + h1 h3 u22 + h1 h2 u33
///   t  = (h2 + h3) u11 + (h1 + h3) u22 + (h1 + h2) u33.
inline Triple diagonal_entries(const CurveCoefficients& c, const Triple& h, const ToleranceConfig& tol = {}) {
  require_separated(h, tol, "eigenvalue ordering");
  const auto& [h1, h2, h3] = h;
  return {detail::diagonal_numerator(c, h1) / ((h1 - h2) * (h1 - h3)),
          detail::diagonal_numerator(c, h2) / ((h2 - h1) * (h2 - h3)),
          detail::diagonal_numerator(c, h3) / ((h3 - h1) * (h3 - h2))};
}

/// Expanded closed forms for (u21, u31) in terms of the spectral data alone.
inline std::pair<Complex, Complex> closed_form_lower_entries(const CurveCoefficients& c, const Triple& h,
                                                             const DivisorPoint& q) {
  const auto& [h1, h2, h3] = h;
  const Complex L = q.l, M = q.m;
  const Complex n1 = detail::diagonal_numerator(c, h1);
  const Complex n2 = detail::diagonal_numerator(c, h2);
  const Complex n3 = detail::diagonal_numerator(c, h3);
  const Complex chord = (L + h2 * M) * (L + h3 * M);
  const Complex m_coef = c.r_plus * (h1 - h2 - h3) - c.q_plus * h1 * h2 * h3 + c.t * h2 * h3;
  const Complex l_coef = c.q_plus * (h2 * h3 - h1 * h2 - h1 * h3) - c.r_plus + c.t * h1;

  const Complex u21 = (h1 - h2) / (h2 - h3) * chord +
                      M / ((h1 - h3) * (h2 - h3)) * m_coef +
                      L / ((h1 - h3) * (h2 - h3)) * l_coef +
                      (c.r_minus - c.q_minus * h2) / (h2 - h3) +
                      n2 * n1 / ((h1 - h2) * (h1 - h2) * (h3 - h1) * (h2 - h3));
  const Complex u31 = (h1 - h3) / (h3 - h2) * chord +
                      M / ((h1 - h2) * (h3 - h2)) * m_coef +
                      L / ((h1 - h2) * (h3 - h2)) * l_coef +
                      (c.r_minus - c.q_minus * h3) / (h3 - h2) +
                      n3 * n1 / ((h1 - h3) * (h1 - h3) * (h2 - h1) * (h3 - h2));
  return {u21, u31};
}

struct Reconstruction {
  NormalizedPair pair;
  // closed-form values of u21, u31 and their relative disagreement with the
  // linear solve stored in pair.u
  Complex closed_u21;
  Complex closed_u31;
  double route_residual = 0.0;
};

/// Reconstruction with both routes for (u21, u31) reported. Does not throw on
/// route disagreement; see reconstruct().
inline Reconstruction reconstruct_detailed(const SpectralData& sd, const ToleranceConfig& tol = {}) {
  const CurveCoefficients& c = sd.coeffs;
  const Triple& h = sd.h;
  const auto& [h1, h2, h3] = h;
  const Triple diag = diagonal_entries(c, h, tol);

  Mat3 u;
  u(0, 0) = diag[0];
  u(1, 1) = diag[1];
  u(2, 2) = diag[2];
  u(0, 1) = 1.0;
  u(0, 2) = 1.0;
  u(1, 2) = sd.divisor.l + h2 * sd.divisor.m + u(1, 1);
  u(2, 1) = sd.divisor.l + h3 * sd.divisor.m + u(2, 2);

  // q- = (u11 u22 - u12 u21) + (u11 u33 - u13 u31) + m23
  // r- = h3 (u11 u22 - u12 u21) + h2 (u11 u33 - u13 u31) + h1 m23
  // as a_i u21 + b_i u31 = rhs_i.
  const Complex m23 = u.principal_minor(1, 2);
  const Complex a1 = u(0, 1), b1 = u(0, 2);
  const Complex a2 = h3 * u(0, 1), b2 = h2 * u(0, 2);
  const Complex rhs1 = u(0, 0) * u(1, 1) + u(0, 0) * u(2, 2) + m23 - c.q_minus;
  const Complex rhs2 = h3 * u(0, 0) * u(1, 1) + h2 * u(0, 0) * u(2, 2) + h1 * m23 - c.r_minus;
  const Complex det = a1 * b2 - a2 * b1;
  const double det_margin = std::abs(det) / std::max(1e-300, max_abs(h));
  if (!(det_margin > tol.separation)) {
    std::ostringstream os;
    os << "system for (u21, u31) has relative determinant " << det_margin;
    throw Error(ErrorCode::LinearSystemSingular, os.str());
  }
  u(1, 0) = (rhs1 * b2 - rhs2 * b1) / det;
  u(2, 0) = (a1 * rhs2 - a2 * rhs1) / det;

  Reconstruction r{{h, u}, {}, {}, 0.0};
  std::tie(r.closed_u21, r.closed_u31) = closed_form_lower_entries(c, h, sd.divisor);
  const auto rel = [](Complex a, Complex b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); };
  r.route_residual = std::max(rel(r.closed_u21, u(1, 0)), rel(r.closed_u31, u(2, 0)));
  return r;
}

/// Normalized pair with the ordering carried by sd. The divisor point is used
/// as given, without projecting it onto the curve.
inline NormalizedPair reconstruct(const SpectralData& sd, const ToleranceConfig& tol = {}) {
  Reconstruction r = reconstruct_detailed(sd, tol);
  if (!(r.route_residual <= tol.closed_form)) {
    std::ostringstream os;
    os << "closed form and linear solve disagree on (u21, u31): relative residual " << r.route_residual;
    throw Error(ErrorCode::ClosedFormMismatch, os.str());
  }
  return r.pair;
}

/// The same point of the moduli space described with canonically ordered
/// eigenvalues.
inline SpectralData canonical_form(const SpectralData& sd, const ToleranceConfig& tol = {}) {
  return spectral_data(reconstruct(sd, tol).as_pair(), tol);
}

}  // namespace spair

#endif  // SPECTRAL_PAIR_RECONSTRUCTION_HPP
