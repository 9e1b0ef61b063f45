#ifndef SPECTRAL_PAIR_NUMERICS_HPP
#define SPECTRAL_PAIR_NUMERICS_HPP

// Complex scalars, closed-form cubic roots and fixed-size 3x3 complex linear
// algebra. Everything here is computed from cofactor/adjugate formulas; there
// is no pivoting and no iterative decomposition besides Newton polishing of
// cubic roots.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <sstream>
#include <utility>

#include "spectral_pair/error.hpp"
#include "spectral_pair/tolerance.hpp"

namespace spair {

using Complex = std::complex<double>;
using Vec3 = std::array<Complex, 3>;
using Triple = std::array<Complex, 3>;

inline bool is_finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

inline double norm(const Vec3& v) {
  return std::sqrt(std::norm(v[0]) + std::norm(v[1]) + std::norm(v[2]));
}

inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

inline Complex dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

inline double max_abs(const Triple& t) {
  return std::max({std::abs(t[0]), std::abs(t[1]), std::abs(t[2])});
}

/// 3x3 complex matrix, row-major.
class Mat3 {
 public:
  constexpr Mat3() = default;
  constexpr explicit Mat3(const std::array<Complex, 9>& entries) : a_(entries) {}

  static constexpr Mat3 identity() { return diagonal({1.0, 1.0, 1.0}); }

  static constexpr Mat3 diagonal(const Triple& d) {
    Mat3 m;
    m(0, 0) = d[0];
    m(1, 1) = d[1];
    m(2, 2) = d[2];
    return m;
  }

  static constexpr Mat3 from_columns(const Vec3& c0, const Vec3& c1, const Vec3& c2) {
    Mat3 m;
    for (std::size_t i = 0; i < 3; ++i) {
      m(i, 0) = c0[i];
      m(i, 1) = c1[i];
      m(i, 2) = c2[i];
    }
    return m;
  }

  constexpr Complex& operator()(std::size_t i, std::size_t j) { return a_[3 * i + j]; }
  constexpr const Complex& operator()(std::size_t i, std::size_t j) const { return a_[3 * i + j]; }

  Vec3 column(std::size_t j) const { return {(*this)(0, j), (*this)(1, j), (*this)(2, j)}; }
  const std::array<Complex, 9>& entries() const { return a_; }

  /// Frobenius norm.
  double norm() const {
    double s = 0.0;
    for (const auto& z : a_) s += std::norm(z);
    return std::sqrt(s);
  }

  double max_abs() const {
    double m = 0.0;
    for (const auto& z : a_) m = std::max(m, std::abs(z));
    return m;
  }

  bool all_finite() const {
    return std::all_of(a_.begin(), a_.end(), [](Complex z) { return is_finite(z); });
  }

  Complex trace() const { return a_[0] + a_[4] + a_[8]; }

  /// Principal 2x2 minor obtained by keeping rows/columns i and j.
  Complex principal_minor(std::size_t i, std::size_t j) const {
    const auto& m = *this;
    return m(i, i) * m(j, j) - m(i, j) * m(j, i);
  }

  Mat3& operator+=(const Mat3& o) {
    for (std::size_t k = 0; k < 9; ++k) a_[k] += o.a_[k];
    return *this;
  }
  Mat3& operator-=(const Mat3& o) {
    for (std::size_t k = 0; k < 9; ++k) a_[k] -= o.a_[k];
    return *this;
  }
  Mat3& operator*=(Complex s) {
    for (auto& z : a_) z *= s;
    return *this;
  }

  friend Mat3 operator+(Mat3 a, const Mat3& b) { return a += b; }
  friend Mat3 operator-(Mat3 a, const Mat3& b) { return a -= b; }
  friend Mat3 operator*(Mat3 a, Complex s) { return a *= s; }
  friend Mat3 operator*(Complex s, Mat3 a) { return a *= s; }

  friend Mat3 operator*(const Mat3& a, const Mat3& b) {
    Mat3 c;
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j)
        c(i, j) = a(i, 0) * b(0, j) + a(i, 1) * b(1, j) + a(i, 2) * b(2, j);
    return c;
  }

  friend Vec3 operator*(const Mat3& a, const Vec3& v) {
    return {a(0, 0) * v[0] + a(0, 1) * v[1] + a(0, 2) * v[2],
            a(1, 0) * v[0] + a(1, 1) * v[1] + a(1, 2) * v[2],
            a(2, 0) * v[0] + a(2, 1) * v[1] + a(2, 2) * v[2]};
  }

  friend bool operator==(const Mat3&, const Mat3&) = default;

 private:
  std::array<Complex, 9> a_{};
};

/// c3 x^3 + c2 x^2 + c1 x + c0.
struct CubicPoly {
  Complex c3{1.0};
  Complex c2{};
  Complex c1{};
  Complex c0{};

  Complex operator()(Complex x) const { return ((c3 * x + c2) * x + c1) * x + c0; }
  Complex derivative(Complex x) const { return (3.0 * c3 * x + 2.0 * c2) * x + c1; }
  double max_coefficient() const {
    return std::max({std::abs(c3), std::abs(c2), std::abs(c1), std::abs(c0)});
  }

  /// Monic cubic with the given roots.
  static CubicPoly from_roots(const Triple& r) {
    return {1.0, -(r[0] + r[1] + r[2]), r[0] * r[1] + r[0] * r[2] + r[1] * r[2],
            -(r[0] * r[1] * r[2])};
  }
};

// Ordering ------------------------------------------------------------------

/// Lexicographic (re, im) comparison. Real parts closer than `tie` count as
/// equal so that rounding noise in a conjugate pair cannot flip the order.
inline bool lex_less(Complex a, Complex b, double tie = 0.0) {
  if (std::abs(a.real() - b.real()) > tie) return a.real() < b.real();
  return a.imag() < b.imag();
}

/// Returns the triple sorted into the canonical lexicographic order.
inline Triple canonical_order(Triple t) {
  const double tie = 1e-9 * std::max(1.0, max_abs(t));
  std::sort(t.begin(), t.end(), [tie](Complex a, Complex b) { return lex_less(a, b, tie); });
  return t;
}

/// min |t_i - t_j| / max(|t_i|, tiny).
inline double relative_separation(const Triple& t) {
  const double d = std::min({std::abs(t[0] - t[1]), std::abs(t[0] - t[2]), std::abs(t[1] - t[2])});
  const double scale = max_abs(t);
  return scale > 0.0 ? d / scale : 0.0;
}

inline void require_separated(const Triple& t, const ToleranceConfig& tol, const char* what) {
  const double sep = relative_separation(t);
  if (!(sep > tol.separation)) {
    std::ostringstream os;
    os << what << ": relative separation " << sep << " <= " << tol.separation;
    throw Error(ErrorCode::RepeatedEigenvalues, os.str());
  }
}

// Cubic roots ---------------------------------------------------------------

namespace detail {

inline Complex principal_cbrt(Complex z) {
  if (z == Complex{}) return {};
  return std::polar(std::cbrt(std::abs(z)), std::arg(z) / 3.0);
}

}  // namespace detail

/// The three roots of p, with multiplicity, sorted lexicographically.
///
/// Cardano on the depressed cubic, choosing the square-root branch that avoids
/// cancellation, then two Newton steps per root on the original polynomial.
inline Triple solve_cubic(const CubicPoly& p, const ToleranceConfig& tol = {}) {
  const double scale = p.max_coefficient();
  if (!(std::abs(p.c3) > tol.leading * scale)) {
    std::ostringstream os;
    os << "|c3| = " << std::abs(p.c3) << " against max coefficient " << scale;
    throw Error(ErrorCode::DegenerateLeadingCoefficient, os.str());
  }
  const Complex a = p.c2 / p.c3;
  const Complex b = p.c1 / p.c3;
  const Complex c = p.c0 / p.c3;

  const Complex shift = a / 3.0;
  const Complex dp = b - a * shift;
  const Complex dq = 2.0 * shift * shift * shift - shift * b + c;

  const Complex disc = std::sqrt(dq * dq / 4.0 + dp * dp * dp / 27.0);
  Complex w = -dq / 2.0 + disc;
  const Complex w_alt = -dq / 2.0 - disc;
  if (std::abs(w_alt) > std::abs(w)) w = w_alt;

  const Complex u = detail::principal_cbrt(w);
  const Complex omega = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);

  Triple roots;
  if (u == Complex{}) {
    // w == 0 forces dp == dq == 0: a triple root at -shift.
    roots = {-shift, -shift, -shift};
  } else {
    const Complex v = -dp / (3.0 * u);
    Complex wk{1.0};
    for (std::size_t k = 0; k < 3; ++k) {
      roots[k] = wk * u + v / wk - shift;
      wk *= omega;
    }
  }

  for (auto& r : roots) {
    for (int it = 0; it < 2; ++it) {
      const Complex f = p(r);
      const Complex df = p.derivative(r);
      if (df == Complex{}) break;
      const Complex next = r - f / df;
      if (!is_finite(next) || std::abs(p(next)) > std::abs(f)) break;
      r = next;
    }
  }
  return canonical_order(roots);
}

// 3x3 algebra ----------------------------------------------------------------

inline Complex det3(const Mat3& m) {
  return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
         m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
         m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
}

/// Transposed cofactor matrix: m * adjugate(m) = det(m) * I.
inline Mat3 adjugate(const Mat3& m) {
  Mat3 adj;
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      const std::size_t r0 = (j + 1) % 3, r1 = (j + 2) % 3;
      const std::size_t c0 = (i + 1) % 3, c1 = (i + 2) % 3;
      adj(i, j) = m(r0, c0) * m(r1, c1) - m(r0, c1) * m(r1, c0);
    }
  }
  return adj;
}

inline Mat3 inv3(const Mat3& m, const ToleranceConfig& tol = {}) {
  const Complex d = det3(m);
  const double n = m.norm();
  if (!(std::abs(d) > tol.singular * n * n * n)) {
    std::ostringstream os;
    os << "|det| = " << std::abs(d) << " against ||M||^3 = " << n * n * n;
    throw Error(ErrorCode::SingularMatrix, os.str());
  }
  return adjugate(m) * (1.0 / d);
}

/// Unit vector spanning ker(m) for a numerically rank-2 matrix.
///
/// The measures |det| / ||adj|| and ||adj|| / ||m|| estimate the smallest and
/// middle singular values. The returned vector is the largest column of the
/// adjugate, normalized.
inline Vec3 kernel_vector(const Mat3& m, const ToleranceConfig& tol = {}) {
  const double n = m.norm();
  if (!(n > 0.0)) throw Error(ErrorCode::RankNotTwo, "zero matrix has rank 0");
  const Mat3 adj = adjugate(m);
  const double adj_norm = adj.norm();
  const double sigma_mid = adj_norm / n;
  if (!(sigma_mid > tol.rank * n)) {
    std::ostringstream os;
    os << "second singular measure " << sigma_mid << " below " << tol.rank << " * " << n;
    throw Error(ErrorCode::RankNotTwo, os.str());
  }
  const double sigma_min = std::abs(det3(m)) / adj_norm;
  if (!(sigma_min <= tol.rank * n)) {
    std::ostringstream os;
    os << "smallest singular measure " << sigma_min << " above " << tol.rank << " * " << n;
    throw Error(ErrorCode::RankNotTwo, os.str());
  }
  std::size_t best = 0;
  double best_norm = -1.0;
  for (std::size_t j = 0; j < 3; ++j) {
    const double cn = norm(adj.column(j));
    if (cn > best_norm) {
      best_norm = cn;
      best = j;
    }
  }
  Vec3 v = adj.column(best);
  for (auto& z : v) z /= best_norm;
  return v;
}

inline CubicPoly characteristic_polynomial(const Mat3& a) {
  const Complex minors = a.principal_minor(0, 1) + a.principal_minor(0, 2) + a.principal_minor(1, 2);
  return {1.0, -a.trace(), minors, -det3(a)};
}

struct Eigensystem {
  Triple values;
  std::array<Vec3, 3> vectors;  // unit norm, vectors[i] belongs to values[i]
};

/// Eigenvalues (canonical order) and eigenvectors of a matrix with pairwise
/// separated eigenvalues.
inline Eigensystem eig3(const Mat3& a, const ToleranceConfig& tol = {}) {
  Eigensystem es;
  es.values = solve_cubic(characteristic_polynomial(a), tol);
  require_separated(es.values, tol, "eigenvalues");
  for (std::size_t i = 0; i < 3; ++i) {
    es.vectors[i] = kernel_vector(a - Mat3::identity() * es.values[i], tol);
  }
  return es;
}

}  // namespace spair

#endif  // SPECTRAL_PAIR_NUMERICS_HPP
