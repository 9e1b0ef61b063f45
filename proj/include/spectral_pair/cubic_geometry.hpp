#ifndef SPECTRAL_PAIR_CUBIC_GEOMETRY_HPP
#define SPECTRAL_PAIR_CUBIC_GEOMETRY_HPP

// Ruler constructions on a plane cubic: lines through two points and the
// third intersection of a line with the curve.

#include <cmath>
#include <sstream>

#include "spectral_pair/curve.hpp"

namespace spair {

/// The linear form a*lambda + b*mu + c*nu.
struct ProjectiveLine {
  Complex a, b, c;

  Complex operator()(const Vec3& v) const { return a * v[0] + b * v[1] + c * v[2]; }
  Complex operator()(const ProjectivePoint& p) const { return (*this)(p.coords); }
  Vec3 coefficients() const { return {a, b, c}; }

  /// |l(p)| for unit-norm representatives of both the line and the point.
  double incidence(const ProjectivePoint& p) const {
    return std::abs((*this)(p)) / (norm(coefficients()) * norm(p.coords));
  }
};

namespace detail {
inline Vec3 unit(const Vec3& v) {
  const double n = norm(v);
  return {v[0] / n, v[1] / n, v[2] / n};
}
}  // namespace detail

/// Line through two distinct points (cross product of coordinate vectors).
inline ProjectiveLine line_through(const ProjectivePoint& p, const ProjectivePoint& q,
                                   const ToleranceConfig& tol = {}) {
  const double d = projective_distance(p, q);
  if (!(d > tol.rank)) {
    std::ostringstream os;
    os << "points at projective distance " << d;
    throw Error(ErrorCode::CoincidentPoints, os.str());
  }
  const Vec3 l = cross(p.normalized().coords, q.normalized().coords);
  const ProjectivePoint n = ProjectivePoint(l).normalized();
  return {n.coords[0], n.coords[1], n.coords[2]};
}

/// Third point where `line` meets the cubic, given two distinct points p1, p2
/// on both.
///
/// On the line s*p1 + t*p2 the cubic restricts to
///   F(p1) s^3 + (grad F(p1).p2) s^2 t + (grad F(p2).p1) s t^2 + F(p2) t^3,
/// whose outer coefficients vanish; the remaining linear factor gives the
/// third root (s : t) = (-c1 : c2).
inline ProjectivePoint third_intersection(const CurveCoefficients& coeffs, const ProjectiveLine& line,
                                          const ProjectivePoint& p1, const ProjectivePoint& p2,
                                          const ToleranceConfig& tol = {}) {
  if (!(projective_distance(p1, p2) > tol.rank)) {
    throw Error(ErrorCode::InputsNotIncident, "the two known points coincide (tangent case)");
  }
  const double scale = coeffs.scale();
  const Vec3 a = detail::unit(p1.coords);
  const Vec3 b = detail::unit(p2.coords);
  const double worst = std::max({line.incidence(p1), line.incidence(p2), std::abs(cubic_form(coeffs, a)) / scale,
                                 std::abs(cubic_form(coeffs, b)) / scale});
  if (!(worst <= tol.incidence)) {
    std::ostringstream os;
    os << "known points not on line and curve: residual " << worst;
    throw Error(ErrorCode::InputsNotIncident, os.str());
  }
  const Complex c2 = dot(cubic_gradient(coeffs, a), b);
  const Complex c1 = dot(cubic_gradient(coeffs, b), a);
  if (!(std::max(std::abs(c1), std::abs(c2)) > tol.incidence * scale)) {
    throw Error(ErrorCode::LineOnCurve, "the cubic vanishes identically on the line");
  }
  return ProjectivePoint(-c1 * a[0] + c2 * b[0], -c1 * a[1] + c2 * b[1], -c1 * a[2] + c2 * b[2])
      .normalized();
}

/// The two chords carrying the divisor P2 + P3 + Q to X2 + X3 + Y.
struct ChordConstruction {
  ProjectiveLine first;   // through X1 and Q
  ProjectivePoint t;      // third point on `first`
  ProjectiveLine second;  // through P1 and T
  ProjectivePoint y;      // third point on `second`
};

inline ChordConstruction chord_construction(const CurveCoefficients& coeffs, const ProjectivePoint& p1,
                                            const ProjectivePoint& x1, const ProjectivePoint& q,
                                            const ToleranceConfig& tol = {}) {
  ChordConstruction c;
  c.first = line_through(x1, q, tol);
  c.t = third_intersection(coeffs, c.first, x1, q, tol);
  c.second = line_through(p1, c.t, tol);
  c.y = third_intersection(coeffs, c.second, p1, c.t, tol);
  return c;
}

/// Given P1 = (h1 : -1 : 0), X1 = (xi1 : 0 : -1) and the divisor point Q,
/// returns Y with P2 + P3 + Q linearly equivalent to X2 + X3 + Y.
inline ProjectivePoint chord_swap_divisor(const CurveCoefficients& coeffs, const ProjectivePoint& p1,
                                          const ProjectivePoint& x1, const ProjectivePoint& q,
                                          const ToleranceConfig& tol = {}) {
  return chord_construction(coeffs, p1, x1, q, tol).y;
}

}  // namespace spair

#endif  // SPECTRAL_PAIR_CUBIC_GEOMETRY_HPP
