#ifndef SPECTRAL_PAIR_CURVE_HPP
#define SPECTRAL_PAIR_CURVE_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <string_view>

#include "spectral_pair/numerics.hpp"

namespace spair {

/// Coefficients of the plane cubic
///
///   l^3 + d1 m^3 + d2 n^3
///     + p+ l^2 m + p- l m^2 + q+ l^2 n + q- l n^2 + r+ m^2 n + r- m n^2
///     + t l m n = 0
///
/// in homogeneous coordinates (l : m : n) = (lambda : mu : nu).
struct CurveCoefficients {
  Complex d1, d2, p_plus, p_minus, q_plus, q_minus, r_plus, r_minus, t;

  static constexpr std::array<std::string_view, 9> names = {
      "d1", "d2", "p_plus", "p_minus", "q_plus", "q_minus", "r_plus", "r_minus", "t"};

  std::array<Complex, 9> as_array() const {
    return {d1, d2, p_plus, p_minus, q_plus, q_minus, r_plus, r_minus, t};
  }

  static CurveCoefficients from_array(const std::array<Complex, 9>& a) {
    return {a[0], a[1], a[2], a[3], a[4], a[5], a[6], a[7], a[8]};
  }

  /// Largest coefficient magnitude, counting the unit l^3 coefficient.
  double scale() const {
    double s = 1.0;
    for (const auto& z : as_array()) s = std::max(s, std::abs(z));
    return s;
  }

  friend bool operator==(const CurveCoefficients&, const CurveCoefficients&) = default;
};

/// Homogeneous coordinates (lambda : mu : nu).
struct ProjectivePoint {
  Vec3 coords{};

  ProjectivePoint() = default;
  ProjectivePoint(Complex lambda, Complex mu, Complex nu) : coords{lambda, mu, nu} {}
  explicit ProjectivePoint(const Vec3& v) : coords(v) {}

  Complex lambda() const { return coords[0]; }
  Complex mu() const { return coords[1]; }
  Complex nu() const { return coords[2]; }

  /// Representative whose largest-magnitude coordinate is exactly 1.
  ProjectivePoint normalized() const {
    std::size_t k = 0;
    for (std::size_t i = 1; i < 3; ++i)
      if (std::abs(coords[i]) > std::abs(coords[k])) k = i;
    const Complex s = coords[k];
    if (s == Complex{}) return *this;
    ProjectivePoint p{coords[0] / s, coords[1] / s, coords[2] / s};
    p.coords[k] = 1.0;
    return p;
  }

  bool is_degenerate() const { return !(norm(coords) > 0.0) || !all_finite(); }
  bool all_finite() const { return is_finite(coords[0]) && is_finite(coords[1]) && is_finite(coords[2]); }
};

/// Scale-free distance: |p x q| for unit-norm representatives (the sine of the
/// angle between the two lines in C^3).
inline double projective_distance(const ProjectivePoint& p, const ProjectivePoint& q) {
  const double np = norm(p.coords), nq = norm(q.coords);
  return norm(cross(p.coords, q.coords)) / (np * nq);
}

/// Raw value of the cubic form at the coordinate vector v (no normalization).
inline Complex cubic_form(const CurveCoefficients& c, const Vec3& v) {
  const Complex l = v[0], m = v[1], n = v[2];
  return l * l * l + c.d1 * m * m * m + c.d2 * n * n * n + c.p_plus * l * l * m +
         c.p_minus * l * m * m + c.q_plus * l * l * n + c.q_minus * l * n * n +
         c.r_plus * m * m * n + c.r_minus * m * n * n + c.t * l * m * n;
}

inline Vec3 cubic_gradient(const CurveCoefficients& c, const Vec3& v) {
  const Complex l = v[0], m = v[1], n = v[2];
  return {3.0 * l * l + 2.0 * c.p_plus * l * m + c.p_minus * m * m + 2.0 * c.q_plus * l * n +
              c.q_minus * n * n + c.t * m * n,
          3.0 * c.d1 * m * m + c.p_plus * l * l + 2.0 * c.p_minus * l * m + 2.0 * c.r_plus * m * n +
              c.r_minus * n * n + c.t * l * n,
          3.0 * c.d2 * n * n + c.q_plus * l * l + 2.0 * c.q_minus * l * n + c.r_plus * m * m +
              2.0 * c.r_minus * m * n + c.t * l * m};
}

/// Value of the cubic at the normalized representative of p.
inline Complex evaluate_curve(const CurveCoefficients& c, const ProjectivePoint& p) {
  return cubic_form(c, p.normalized().coords);
}

/// |evaluate_curve| relative to the largest coefficient.
inline double curve_residual(const CurveCoefficients& c, const ProjectivePoint& p) {
  return std::abs(evaluate_curve(c, p)) / c.scale();
}

}  // namespace spair

#endif  // SPECTRAL_PAIR_CURVE_HPP
