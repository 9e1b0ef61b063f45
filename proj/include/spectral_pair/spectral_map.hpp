#ifndef SPECTRAL_PAIR_SPECTRAL_MAP_HPP
#define SPECTRAL_PAIR_SPECTRAL_MAP_HPP

// Forward map: a pair (A, B) of 3x3 matrices, up to simultaneous conjugation,
// goes to its spectral cubic det(lambda + mu A + nu B) = 0 together with the
// third zero (L : M : 1) of the first-coordinate section of the kernel bundle.
// The other two zeros are always (h2 : -1 : 0) and (h3 : -1 : 0).

#include <cmath>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "spectral_pair/curve.hpp"
#include "spectral_pair/numerics.hpp"

namespace spair {

struct MatrixPair {
  Mat3 a;
  Mat3 b;
};

/// A in its eigenbasis is diag(h); B in the same basis is u, gauge-fixed by a
/// diagonal conjugation so that u(0,1) == u(0,2) == 1 exactly.
struct NormalizedPair {
  Triple h;
  Mat3 u;

  MatrixPair as_pair() const { return {Mat3::diagonal(h), u}; }
};

/// Affine coordinates of the divisor point (L : M : 1).
struct DivisorPoint {
  Complex l;
  Complex m;

  ProjectivePoint projective() const { return {l, m, 1.0}; }
  friend bool operator==(const DivisorPoint&, const DivisorPoint&) = default;
};

struct SpectralData {
  Triple h;  // the eigenvalue ordering the data was built with
  CurveCoefficients coeffs;
  DivisorPoint divisor;
};

// Elementary symmetric functions.
inline Complex e1(const Triple& h) { return h[0] + h[1] + h[2]; }
inline Complex e2(const Triple& h) { return h[0] * h[1] + h[0] * h[2] + h[1] * h[2]; }
inline Complex e3(const Triple& h) { return h[0] * h[1] * h[2]; }

namespace detail {

inline std::string describe(const char* what, double margin, double threshold) {
  std::ostringstream os;
  os << what << " margin " << margin << " (threshold " << threshold << ")";
  return os.str();
}

/// Reorders `values` (and the matching vectors) to follow `target`: each
/// target entry is matched to its nearest computed eigenvalue.
inline void apply_ordering(Eigensystem& es, const Triple& target) {
  const double sep = std::min({std::abs(es.values[0] - es.values[1]),
                               std::abs(es.values[0] - es.values[2]),
                               std::abs(es.values[1] - es.values[2])});
  Eigensystem out;
  std::array<bool, 3> used{};
  for (std::size_t i = 0; i < 3; ++i) {
    std::size_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < 3; ++j) {
      const double d = std::abs(target[i] - es.values[j]);
      if (d < best_d) {
        best_d = d;
        best = j;
      }
    }
    if (used[best] || !(best_d < 0.5 * sep)) {
      std::ostringstream os;
      os << "requested eigenvalue " << target[i] << " matches no unique eigenvalue (distance "
         << best_d << ", separation " << sep << ")";
      throw Error(ErrorCode::OrderingMismatch, os.str());
    }
    used[best] = true;
    out.values[i] = es.values[best];
    out.vectors[i] = es.vectors[best];
  }
  es = out;
}

}  // namespace detail

/// Eigenbasis of A, B expressed in it, and the diagonal gauge u12 = u13 = 1.
/// Without `ordering` the eigenvalues come out in canonical lexicographic
/// order; otherwise in the order of the given (approximate) eigenvalues.
inline NormalizedPair normalize_pair(const MatrixPair& pair, const ToleranceConfig& tol = {},
                                     const std::optional<Triple>& ordering = std::nullopt) {
  Eigensystem es = eig3(pair.a, tol);
  if (ordering) detail::apply_ordering(es, *ordering);

  const Mat3 v = Mat3::from_columns(es.vectors[0], es.vectors[1], es.vectors[2]);
  const Mat3 u0 = inv3(v, tol) * pair.b * v;
  const double scale = u0.norm();
  const double margin = std::min(std::abs(u0(0, 1)), std::abs(u0(0, 2))) / scale;
  if (!(margin > tol.gauge)) {
    throw Error(ErrorCode::GaugeDegenerate, detail::describe("u12/u13", margin, tol.gauge));
  }

  const Triple d = {1.0, u0(0, 1), u0(0, 2)};
  NormalizedPair np{es.values, {}};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) np.u(i, j) = d[i] * u0(i, j) / d[j];
  np.u(0, 1) = 1.0;
  np.u(0, 2) = 1.0;
  return np;
}

/// Coefficients of det(lambda + mu diag(h) + nu U) = 0.
inline CurveCoefficients curve_coefficients(const NormalizedPair& np) {
  const auto& [h1, h2, h3] = np.h;
  const Mat3& u = np.u;
  const Complex m12 = u.principal_minor(0, 1);
  const Complex m13 = u.principal_minor(0, 2);
  const Complex m23 = u.principal_minor(1, 2);
  CurveCoefficients c;
  c.d1 = h1 * h2 * h3;
  c.d2 = det3(u);
  c.p_plus = h1 + h2 + h3;
  c.p_minus = h1 * h2 + h1 * h3 + h2 * h3;
  c.q_plus = u.trace();
  c.q_minus = m12 + m13 + m23;
  c.r_plus = h1 * h2 * u(2, 2) + h1 * h3 * u(1, 1) + h2 * h3 * u(0, 0);
  c.r_minus = h3 * m12 + h2 * m13 + h1 * m23;
  c.t = (h1 + h2) * u(2, 2) + (h1 + h3) * u(1, 1) + (h2 + h3) * u(0, 0);
  return c;
}

/// Third zero (L : M : 1) of the first-coordinate section. Written for a
/// general gauge (u12, u13 arbitrary); for a NormalizedPair they are 1 and
///   L + h2 M = u23 - u22,   L + h3 M = u32 - u33.
inline DivisorPoint divisor_point(const NormalizedPair& np, const ToleranceConfig& tol = {}) {
  const auto& [h1, h2, h3] = np.h;
  const Mat3& u = np.u;
  const Complex u12 = u(0, 1), u13 = u(0, 2);
  const Complex den = u12 * u13 * (h3 - h2);
  const double margin = std::abs(den) / std::max(1e-300, max_abs(np.h));
  if (!(margin > tol.divisor)) {
    throw Error(ErrorCode::DegenerateDivisor, detail::describe("u12 u13 (h3 - h2)", margin, tol.divisor));
  }
  const Complex minor_2 = u12 * u(1, 2) - u13 * u(1, 1);
  const Complex minor_3 = u12 * u(2, 2) - u13 * u(2, 1);
  return {(u12 * h3 * minor_2 + u13 * h2 * minor_3) / den, -(u12 * minor_2 + u13 * minor_3) / den};
}

/// Throws InvalidSpectralData unless h matches (p+, p-, d1) and the divisor
/// point lies on the curve.
inline void check_spectral_data(const SpectralData& sd, const ToleranceConfig& tol = {}) {
  const auto rel = [](Complex a, Complex b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); };
  const double sym = std::max({rel(e1(sd.h), sd.coeffs.p_plus), rel(e2(sd.h), sd.coeffs.p_minus),
                               rel(e3(sd.h), sd.coeffs.d1)});
  if (!(sym <= tol.symmetric)) {
    std::ostringstream os;
    os << "eigenvalues disagree with (p_plus, p_minus, d1): relative residual " << sym;
    throw Error(ErrorCode::InvalidSpectralData, os.str());
  }
  const double res = curve_residual(sd.coeffs, sd.divisor.projective());
  if (!(res <= tol.on_curve)) {
    std::ostringstream os;
    os << "divisor point off the curve: relative residual " << res;
    throw Error(ErrorCode::InvalidSpectralData, os.str());
  }
}

inline SpectralData spectral_data(const NormalizedPair& np, const ToleranceConfig& tol = {}) {
  SpectralData sd{np.h, curve_coefficients(np), divisor_point(np, tol)};
  check_spectral_data(sd, tol);
  return sd;
}

inline SpectralData spectral_data(const MatrixPair& pair, const ToleranceConfig& tol = {},
                                  const std::optional<Triple>& ordering = std::nullopt) {
  return spectral_data(normalize_pair(pair, tol, ordering), tol);
}

// General-position diagnostics ------------------------------------------------

struct GeneralPositionCheck {
  std::string name;
  bool evaluated = false;
  bool passed = false;
  double margin = std::numeric_limits<double>::quiet_NaN();
  double threshold = 0.0;
};

struct GeneralPositionReport {
  std::vector<GeneralPositionCheck> checks;

  bool all_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
  }

  const GeneralPositionCheck* first_failure() const {
    for (const auto& c : checks)
      if (!c.passed) return &c;
    return nullptr;
  }
};

/// Points where the spectral cubic meets the three coordinate axes.
inline std::array<ProjectivePoint, 9> axis_intersections(const CurveCoefficients& c,
                                                         const ToleranceConfig& tol = {}) {
  // nu = 0: (h : -1 : 0) with h a root of x^3 - p+ x^2 + p- x - d1.
  const Triple hs = solve_cubic({1.0, -c.p_plus, c.p_minus, -c.d1}, tol);
  // mu = 0: (xi : 0 : -1) with xi a root of x^3 - q+ x^2 + q- x - d2.
  const Triple xs = solve_cubic({1.0, -c.q_plus, c.q_minus, -c.d2}, tol);
  // lambda = 0: (0 : y : 1) with d1 y^3 + r+ y^2 + r- y + d2 = 0.
  const Triple ys = solve_cubic({c.d1, c.r_plus, c.r_minus, c.d2}, tol);
  std::array<ProjectivePoint, 9> pts;
  for (std::size_t i = 0; i < 3; ++i) {
    pts[i] = {hs[i], -1.0, 0.0};
    pts[3 + i] = {xs[i], 0.0, -1.0};
    pts[6 + i] = {0.0, ys[i], 1.0};
  }
  return pts;
}

/// Runs every general-position check on the pair without throwing. Checks
/// whose inputs could not be computed are reported as not evaluated (failed).
inline GeneralPositionReport general_position_report(const MatrixPair& pair,
                                                     const ToleranceConfig& tol = {}) {
  GeneralPositionReport rep;
  auto add = [&rep](std::string name, double margin, double threshold) {
    rep.checks.push_back({std::move(name), true, margin > threshold, margin, threshold});
  };
  auto skip = [&rep](std::string name, double threshold) {
    rep.checks.push_back({std::move(name), false, false, std::numeric_limits<double>::quiet_NaN(),
                          threshold});
  };

  auto det_margin = [](const Mat3& m) {
    const double n = m.norm();
    return n > 0.0 ? std::abs(det3(m)) / (n * n * n) : 0.0;
  };
  add("det_a", det_margin(pair.a), tol.singular);
  add("det_b", det_margin(pair.b), tol.singular);

  std::optional<Eigensystem> es;
  const Triple vals = solve_cubic(characteristic_polynomial(pair.a), tol);
  add("eigenvalue_separation", relative_separation(vals), tol.separation);
  if (rep.checks.back().passed) {
    try {
      es = eig3(pair.a, tol);
    } catch (const Error&) {
      rep.checks.back().passed = false;
    }
  }

  std::optional<NormalizedPair> np;
  if (es) {
    try {
      const Mat3 v = Mat3::from_columns(es->vectors[0], es->vectors[1], es->vectors[2]);
      const Mat3 u0 = inv3(v, tol) * pair.b * v;
      add("gauge", std::min(std::abs(u0(0, 1)), std::abs(u0(0, 2))) / u0.norm(), tol.gauge);
      if (rep.checks.back().passed) np = normalize_pair(pair, tol);
    } catch (const Error&) {
      skip("gauge", tol.gauge);
    }
  } else {
    skip("gauge", tol.gauge);
  }

  if (np) {
    const double den = std::abs(np->h[2] - np->h[1]) / max_abs(np->h);
    add("divisor_denominator", den, tol.divisor);
    try {
      const auto pts = axis_intersections(curve_coefficients(*np), tol);
      double dmin = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j)
          dmin = std::min(dmin, projective_distance(pts[i], pts[j]));
      add("curve_smoothness", dmin, tol.smoothness);
    } catch (const Error&) {
      skip("curve_smoothness", tol.smoothness);
    }
  } else {
    skip("divisor_denominator", tol.divisor);
    skip("curve_smoothness", tol.smoothness);
  }
  return rep;
}

}  // namespace spair

#endif  // SPECTRAL_PAIR_SPECTRAL_MAP_HPP
