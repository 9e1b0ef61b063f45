#ifndef SPECTRAL_PAIR_GROUP_ACTION_HPP
#define SPECTRAL_PAIR_GROUP_ACTION_HPP

// GL(2,Z) acting on pairs of matrices and, equivalently, on spectral data.
//
// Conventions. A word [g1, g2, ..., gk] acts on pairs left to right: first g1,
// then g2. Acting by the Nielsen automorphism phi means substituting A for c1
// and B for c2 in (phi(c1), phi(c2)), so the word realizes g1 o g2 o ... o gk
// and its matrix is the product sigma(g1) sigma(g2) ... sigma(gk), where
// sigma(phi) has in column j the exponent sums of phi(c_j):
//
//   Swap   (c1, c2) -> (c2, c1)      [[0, 1], [1, 0]]
//   Invert (c1, c2) -> (c1^-1, c2)   [[-1, 0], [0, 1]]
//   Shear  (c1, c2) -> (c1, c1 c2)   [[1, 1], [0, 1]]

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "spectral_pair/cubic_geometry.hpp"
#include "spectral_pair/reconstruction.hpp"
#include "spectral_pair/spectral_map.hpp"

namespace spair {

enum class Generator { Swap, Invert, Shear };

using GeneratorWord = std::vector<Generator>;

constexpr char letter(Generator g) {
  switch (g) {
    case Generator::Swap: return 'S';
    case Generator::Invert: return 'I';
    case Generator::Shear: return 'T';
  }
  return '?';
}

constexpr std::string_view generator_name(Generator g) {
  switch (g) {
    case Generator::Swap: return "swap";
    case Generator::Invert: return "invert";
    case Generator::Shear: return "shear";
  }
  return "?";
}

/// "S,I,T" form. The empty word is the empty string.
inline std::string to_string(const GeneratorWord& w) {
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += ',';
    s += letter(w[i]);
  }
  return s;
}

/// Parses comma-separated letters S, I, T (whitespace ignored). Throws
/// std::invalid_argument on anything else.
inline GeneratorWord parse_word(std::string_view text) {
  GeneratorWord w;
  bool expect_letter = true;
  for (char ch : text) {
    if (ch == ' ' || ch == '\t') continue;
    if (ch == ',') {
      if (expect_letter) throw std::invalid_argument("empty letter in word");
      expect_letter = true;
      continue;
    }
    if (!expect_letter) throw std::invalid_argument("letters must be comma separated");
    switch (ch) {
      case 'S': w.push_back(Generator::Swap); break;
      case 'I': w.push_back(Generator::Invert); break;
      case 'T': w.push_back(Generator::Shear); break;
      default: throw std::invalid_argument(std::string("unknown letter '") + ch + "'");
    }
    expect_letter = false;
  }
  if (expect_letter && !w.empty()) throw std::invalid_argument("trailing comma in word");
  return w;
}

// GL(2,Z) ---------------------------------------------------------------------

struct GL2ZMatrix {
  std::int64_t a = 1, b = 0, c = 0, d = 1;

  std::int64_t det() const { return a * d - b * c; }

  friend GL2ZMatrix operator*(const GL2ZMatrix& x, const GL2ZMatrix& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
  }
  friend bool operator==(const GL2ZMatrix&, const GL2ZMatrix&) = default;

  GL2ZMatrix transposed() const { return {a, c, b, d}; }
  std::int64_t max_abs() const {
    return std::max({std::llabs(a), std::llabs(b), std::llabs(c), std::llabs(d)});
  }
};

constexpr GL2ZMatrix generator_matrix(Generator g) {
  switch (g) {
    case Generator::Swap: return {0, 1, 1, 0};
    case Generator::Invert: return {-1, 0, 0, 1};
    case Generator::Shear: return {1, 1, 0, 1};
  }
  return {};
}

inline GL2ZMatrix word_matrix(const GeneratorWord& w) {
  GL2ZMatrix m;
  for (Generator g : w) m = m * generator_matrix(g);
  return m;
}

namespace detail {

// Shear^n for any integer n; negative powers via Invert Shear^|n| Invert.
inline void append_shear_power(GeneratorWord& w, std::int64_t n) {
  if (n == 0) return;
  if (n < 0) w.push_back(Generator::Invert);
  for (std::int64_t k = 0; k < std::llabs(n); ++k) w.push_back(Generator::Shear);
  if (n < 0) w.push_back(Generator::Invert);
}

// Cancels adjacent S S and I I (both involutions).
inline GeneratorWord cancel_involutions(const GeneratorWord& w) {
  GeneratorWord out;
  for (Generator g : w) {
    if (!out.empty() && out.back() == g && g != Generator::Shear) {
      out.pop_back();
    } else {
      out.push_back(g);
    }
  }
  return out;
}

// Nearest integer to x / y (ties away from zero).
inline std::int64_t nearest_quotient(std::int64_t x, std::int64_t y) {
  std::int64_t q = x / y;
  const std::int64_t r = x - q * y;
  if (2 * std::llabs(r) >= std::llabs(y)) q += ((r < 0) == (y < 0)) ? 1 : -1;
  return q;
}

}  // namespace detail

/// Word over {Swap, Invert, Shear} whose matrix product equals m.
///
/// Row reduction by left multiplication: Shear^q subtracts multiples of the
/// second row from the first (nearest-integer Euclid on the first column),
/// Swap exchanges rows, Invert and Swap Invert Swap fix the diagonal signs.
/// If E_k ... E_1 m = I then m = E_1^-1 ... E_k^-1, which is the word emitted.
inline GeneratorWord decompose_gl2z(const GL2ZMatrix& m) {
  const std::int64_t det = m.det();
  if (det != 1 && det != -1) {
    std::ostringstream os;
    os << "det [[" << m.a << "," << m.b << "],[" << m.c << "," << m.d << "]] = " << det;
    throw Error(ErrorCode::DeterminantNotUnit, os.str());
  }
  GL2ZMatrix r = m;
  GeneratorWord w;
  auto swap_rows = [&] {
    std::swap(r.a, r.c);
    std::swap(r.b, r.d);
    w.push_back(Generator::Swap);
  };
  while (r.c != 0) {
    if (std::llabs(r.a) < std::llabs(r.c)) {
      swap_rows();
      if (r.c == 0) break;
    }
    const std::int64_t q = detail::nearest_quotient(r.a, r.c);
    r.a -= q * r.c;
    r.b -= q * r.d;
    detail::append_shear_power(w, q);
  }
  if (r.a < 0) {
    r.a = -r.a;
    r.b = -r.b;
    w.push_back(Generator::Invert);
  }
  if (r.d < 0) {
    r.d = -r.d;
    w.insert(w.end(), {Generator::Swap, Generator::Invert, Generator::Swap});
  }
  detail::append_shear_power(w, r.b);
  return detail::cancel_involutions(w);
}

// Free group F2 ---------------------------------------------------------------

/// Freely reduced word in c1, c2: letters +1, -1 (c1, c1^-1), +2, -2.
struct FreeWord {
  std::vector<int> letters;

  static FreeWord generator(int i) { return {{i}}; }

  FreeWord inverse() const {
    FreeWord w;
    for (auto it = letters.rbegin(); it != letters.rend(); ++it) w.letters.push_back(-*it);
    return w;
  }

  friend FreeWord operator*(const FreeWord& x, const FreeWord& y) {
    FreeWord w = x;
    for (int l : y.letters) {
      if (!w.letters.empty() && w.letters.back() == -l) {
        w.letters.pop_back();
      } else {
        w.letters.push_back(l);
      }
    }
    return w;
  }

  /// Total exponent of c_i.
  int exponent_sum(int i) const {
    int s = 0;
    for (int l : letters) s += (l == i) - (l == -i);
    return s;
  }

  friend bool operator==(const FreeWord&, const FreeWord&) = default;
};

/// An automorphism of F2 given by the images of c1 and c2.
struct Automorphism {
  FreeWord c1 = FreeWord::generator(1);
  FreeWord c2 = FreeWord::generator(2);

  /// Image of an arbitrary word.
  FreeWord apply(const FreeWord& w) const {
    FreeWord out;
    for (int l : w.letters) {
      const FreeWord& img = std::abs(l) == 1 ? c1 : c2;
      out = out * (l > 0 ? img : img.inverse());
    }
    return out;
  }

  /// this o other.
  Automorphism compose(const Automorphism& other) const { return {apply(other.c1), apply(other.c2)}; }
};

inline Automorphism nielsen_automorphism(Generator g) {
  const FreeWord c1 = FreeWord::generator(1), c2 = FreeWord::generator(2);
  switch (g) {
    case Generator::Swap: return {c2, c1};
    case Generator::Invert: return {c1.inverse(), c2};
    case Generator::Shear: return {c1, c1 * c2};
  }
  return {};
}

/// g1 o g2 o ... o gk for the word [g1, ..., gk].
inline Automorphism word_automorphism(const GeneratorWord& w) {
  Automorphism phi;
  for (Generator g : w) phi = phi.compose(nielsen_automorphism(g));
  return phi;
}

/// Exponent-sum matrix with row i holding the exponents of phi(c_i) (the
/// layout in which an automorphism is usually written down).
inline GL2ZMatrix exponent_sum_rows(const Automorphism& phi) {
  return {phi.c1.exponent_sum(1), phi.c1.exponent_sum(2), phi.c2.exponent_sum(1), phi.c2.exponent_sum(2)};
}

/// sigma(phi): the induced map on Z^2, column j = exponent sums of phi(c_j).
inline GL2ZMatrix abelianization(const Automorphism& phi) { return exponent_sum_rows(phi).transposed(); }

// Action on matrix pairs ------------------------------------------------------

inline MatrixPair act_on_pair(Generator g, const MatrixPair& pair, const ToleranceConfig& tol = {}) {
  switch (g) {
    case Generator::Swap: return {pair.b, pair.a};
    case Generator::Invert: return {inv3(pair.a, tol), pair.b};
    case Generator::Shear: return {pair.a, pair.a * pair.b};
  }
  return pair;
}

inline MatrixPair act_word_on_pair(const GeneratorWord& w, MatrixPair pair, const ToleranceConfig& tol = {}) {
  for (Generator g : w) pair = act_on_pair(g, pair, tol);
  return pair;
}

/// Evaluates the word w at c1 = A, c2 = B.
inline Mat3 evaluate_word(const FreeWord& w, const MatrixPair& pair, const ToleranceConfig& tol = {}) {
  Mat3 out = Mat3::identity();
  std::optional<Mat3> a_inv, b_inv;
  for (int l : w.letters) {
    switch (l) {
      case 1: out = out * pair.a; break;
      case 2: out = out * pair.b; break;
      case -1:
        if (!a_inv) a_inv = inv3(pair.a, tol);
        out = out * *a_inv;
        break;
      case -2:
        if (!b_inv) b_inv = inv3(pair.b, tol);
        out = out * *b_inv;
        break;
    }
  }
  return out;
}

inline MatrixPair act_automorphism(const Automorphism& phi, const MatrixPair& pair, const ToleranceConfig& tol = {}) {
  return {evaluate_word(phi.c1, pair, tol), evaluate_word(phi.c2, pair, tol)};
}

// Action on spectral data -----------------------------------------------------

/// Transposition (A, B) -> (B, A): mu and nu trade places in the curve, and
/// the divisor point is carried by two chords (see chord_swap_divisor). The
/// result is in canonical order of the eigenvalues of B.
inline SpectralData swap_spectral(const SpectralData& sd, const ToleranceConfig& tol = {}) {
  const CurveCoefficients& c = sd.coeffs;
  SpectralData out;
  out.coeffs = {c.d2, c.d1, c.q_plus, c.q_minus, c.p_plus, c.p_minus, c.r_minus, c.r_plus, c.t};

  const Triple xi = solve_cubic({1.0, -c.q_plus, c.q_minus, -c.d2}, tol);
  if (!(relative_separation(xi) > tol.separation)) {
    throw Error(ErrorCode::SwappedPairDegenerate, "eigenvalues of B are not separated");
  }
  out.h = xi;

  const ProjectivePoint p1{sd.h[0], -1.0, 0.0};
  const ProjectivePoint x1{xi[0], 0.0, -1.0};
  const ProjectivePoint y = chord_swap_divisor(c, p1, x1, sd.divisor.projective(), tol).normalized();

  // (lambda : mu : nu) -> (lambda : nu : mu), then scale the last coordinate to 1.
  if (!(std::abs(y.mu()) > tol.divisor)) {
    throw Error(ErrorCode::SwappedPairDegenerate, "transported divisor point lies on mu = 0");
  }
  out.divisor = {y.lambda() / y.mu(), y.nu() / y.mu()};
  check_spectral_data(out, tol);
  return out;
}

/// The r- coefficient of the curve of (A^-1, B), from the spectral data of
/// (A, B). Shared by invert_spectral and shear_spectral.
inline Complex inverted_r_minus(const SpectralData& sd) {
  const CurveCoefficients& c = sd.coeffs;
  const auto& [h1, h2, h3] = sd.h;
  const Complex L = sd.divisor.l, M = sd.divisor.m;
  const Complex l_coef = c.r_plus - c.t * h1 + c.q_plus * (-h2 * h3 + h1 * h3 + h1 * h2);
  const Complex m_coef = c.r_plus * (h2 + h3 - h1) - c.t * h2 * h3 + c.q_plus * h1 * h2 * h3;
  const Complex chord = (h1 - h2) * (h1 - h3) * (L + M * h2) * (L + M * h3);
  return (L * l_coef + M * m_coef + c.q_minus * h1 * (h2 + h3) - h1 * c.r_minus - chord) / (h1 * h2 * h3);
}

namespace detail {
inline void require_invertible_a(const SpectralData& sd, const ToleranceConfig& tol) {
  const double scale = max_abs(sd.h);
  if (!(std::abs(sd.coeffs.d1) > tol.singular * scale * scale * scale)) {
    std::ostringstream os;
    os << "|d1| = " << std::abs(sd.coeffs.d1);
    throw Error(ErrorCode::SingularA, os.str());
  }
}
}  // namespace detail

/// (A, B) -> (A^-1, B). The eigenvalue order is inherited index by index:
/// h~_i = 1 / h_i (not recanonicalized).
inline SpectralData invert_spectral(const SpectralData& sd, const ToleranceConfig& tol = {}) {
  detail::require_invertible_a(sd, tol);
  const CurveCoefficients& c = sd.coeffs;
  const auto& [h1, h2, h3] = sd.h;
  SpectralData out;
  out.h = {1.0 / h1, 1.0 / h2, 1.0 / h3};
  out.coeffs.d1 = 1.0 / c.d1;
  out.coeffs.d2 = c.d2;
  out.coeffs.p_plus = c.p_minus / c.d1;
  out.coeffs.p_minus = c.p_plus / c.d1;
  out.coeffs.q_plus = c.q_plus;
  out.coeffs.q_minus = c.q_minus;
  out.coeffs.r_plus = (c.q_plus * c.p_plus - c.t) / c.d1;
  out.coeffs.r_minus = inverted_r_minus(sd);
  out.coeffs.t = (c.q_plus * c.p_minus - c.r_plus) / c.d1;
  out.divisor = {sd.divisor.l + sd.divisor.m * (h2 + h3), -h2 * h3 * sd.divisor.m};
  return out;
}

/// (A, B) -> (A, AB). Eigenvalues of A and their order are unchanged.
inline SpectralData shear_spectral(const SpectralData& sd, const ToleranceConfig& tol = {}) {
  detail::require_invertible_a(sd, tol);
  const CurveCoefficients& c = sd.coeffs;
  const auto& [h1, h2, h3] = sd.h;
  SpectralData out;
  out.h = sd.h;
  out.coeffs.d1 = c.d1;
  out.coeffs.p_plus = c.p_plus;
  out.coeffs.p_minus = c.p_minus;
  out.coeffs.d2 = c.d1 * c.d2;
  out.coeffs.q_plus = c.q_plus * c.p_plus - c.t;
  out.coeffs.q_minus = c.d1 * inverted_r_minus(sd);
  out.coeffs.r_plus = c.d1 * c.q_plus;
  out.coeffs.r_minus = c.d1 * c.q_minus;
  out.coeffs.t = c.p_minus * c.q_plus - c.r_plus;
  out.divisor = {-h2 * h3 * sd.divisor.m, sd.divisor.l + sd.divisor.m * (h2 + h3)};
  return out;
}

inline SpectralData act_on_spectral(Generator g, const SpectralData& sd, const ToleranceConfig& tol = {}) {
  switch (g) {
    case Generator::Swap: return swap_spectral(sd, tol);
    case Generator::Invert: return invert_spectral(sd, tol);
    case Generator::Shear: return shear_spectral(sd, tol);
  }
  return sd;
}

/// Left-to-right fold of the generator formulas, recanonicalizing the
/// eigenvalue order before the first letter and after every letter.
inline SpectralData act_word_spectral(const GeneratorWord& w, const SpectralData& sd,
                                      const ToleranceConfig& tol = {}) {
  SpectralData cur = canonical_form(sd, tol);
  for (std::size_t i = 0; i < w.size(); ++i) {
    try {
      cur = canonical_form(act_on_spectral(w[i], cur, tol), tol);
    } catch (const Error& e) {
      const GeneratorWord prefix(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(i) + 1);
      std::ostringstream os;
      os << "failing prefix \"" << to_string(prefix) << "\" (letter " << i << "): " << e.what();
      throw Error(ErrorCode::IntermediateDegeneracy, os.str());
    }
  }
  return cur;
}

// Comparison and verification -------------------------------------------------

/// Componentwise |x - y| / max(1, |y|) over h, the nine coefficients and (L, M).
struct SpectralResiduals {
  std::map<std::string, double> per_component;
  double max_residual = 0.0;
};

inline SpectralResiduals compare_spectral(const SpectralData& x, const SpectralData& y) {
  SpectralResiduals r;
  auto add = [&r](std::string name, Complex a, Complex b) {
    const double v = std::abs(a - b) / std::max(1.0, std::abs(b));
    r.per_component[std::move(name)] = v;
    r.max_residual = std::max(r.max_residual, std::isnan(v) ? std::numeric_limits<double>::infinity() : v);
  };
  for (std::size_t i = 0; i < 3; ++i) add("h" + std::to_string(i + 1), x.h[i], y.h[i]);
  const auto cx = x.coeffs.as_array(), cy = y.coeffs.as_array();
  for (std::size_t i = 0; i < 9; ++i) add(std::string(CurveCoefficients::names[i]), cx[i], cy[i]);
  add("L", x.divisor.l, y.divisor.l);
  add("M", x.divisor.m, y.divisor.m);
  return r;
}

struct CommutationReport {
  Generator generator;
  SpectralResiduals residuals;
};

/// Compares the generator formula on spectral data with the spectral data of
/// the transformed pair, both in canonical form.
inline CommutationReport verify_commutation(Generator g, const MatrixPair& pair, const ToleranceConfig& tol = {}) {
  const SpectralData via_spectral = canonical_form(act_on_spectral(g, spectral_data(pair, tol), tol), tol);
  const SpectralData via_matrices = canonical_form(spectral_data(act_on_pair(g, pair, tol), tol), tol);
  return {g, compare_spectral(via_spectral, via_matrices)};
}

}  // namespace spair

#endif  // SPECTRAL_PAIR_GROUP_ACTION_HPP
