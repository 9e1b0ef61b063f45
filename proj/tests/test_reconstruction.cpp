#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace spair;

namespace {

double rel(Complex a, Complex b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

double max_entry_rel(const Mat3& a, const Mat3& b) {
  double worst = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) worst = std::max(worst, rel(a(i, j), b(i, j)));
  return worst;
}

const Mat3 kFixtureU({Complex(2.0), 1.0, 1.0, Complex(3.0, 1.0), 5.0, -1.0, 0.5, Complex(2.0, -1.0), 4.0});

}  // namespace

TEST(EigenvaluesFromCoefficients, Basic) {
  CurveCoefficients c{};
  c.d1 = 6.0;
  c.p_plus = 6.0;
  c.p_minus = 11.0;
  EXPECT_LT(oracle::matched_distance(eigenvalues_from_coefficients(c), {1.0, 2.0, 3.0}), 1e-12);
}

TEST(EigenvaluesFromCoefficients, ConstructedRoots) {
  Sampler s(31);
  for (int k = 0; k < 100; ++k) {
    const Triple h = {s.annulus(0.5, 2.0), s.annulus(0.5, 2.0), s.annulus(0.5, 2.0)};
    if (relative_separation(h) < 0.05) continue;
    CurveCoefficients c{};
    c.p_plus = h[0] + h[1] + h[2];
    c.p_minus = h[0] * h[1] + h[0] * h[2] + h[1] * h[2];
    c.d1 = h[0] * h[1] * h[2];
    EXPECT_LT(oracle::matched_distance(eigenvalues_from_coefficients(c), h), 1e-9);
  }
}

TEST(EigenvaluesFromCoefficients, TripleRoot) {
  CurveCoefficients c{};
  c.d1 = 1.0;
  c.p_plus = 3.0;
  c.p_minus = 3.0;
  try {
    eigenvalues_from_coefficients(c);
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::RepeatedEigenvalues);
  }
}

TEST(DiagonalEntries, IdentityU) {
  const CurveCoefficients c{6.0, 1.0, 6.0, 11.0, 3.0, 3.0, 11.0, 6.0, 12.0};
  const Triple d = diagonal_entries(c, {1.0, 2.0, 3.0});
  for (const Complex x : d) EXPECT_LT(std::abs(x - 1.0), 1e-14);
}

TEST(DiagonalEntries, ForwardMapAndDefiningSystem) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const NormalizedPair np = normalize_pair(random_pair(seed).pair);
    const CurveCoefficients c = oracle::expansion_coefficients(np.h, np.u);
    const Triple d = diagonal_entries(c, np.h);
    for (int i = 0; i < 3; ++i) EXPECT_LT(rel(d[i], np.u(i, i)), 1e-9) << "seed " << seed;
    const auto& [h1, h2, h3] = np.h;
    EXPECT_LT(std::abs(d[0] + d[1] + d[2] - c.q_plus), 1e-10 * c.scale());
    EXPECT_LT(std::abs(h2 * h3 * d[0] + h1 * h3 * d[1] + h1 * h2 * d[2] - c.r_plus), 1e-10 * c.scale());
    EXPECT_LT(std::abs((h2 + h3) * d[0] + (h1 + h3) * d[1] + (h1 + h2) * d[2] - c.t), 1e-10 * c.scale());
  }
}

TEST(Reconstruct, Fixture) {
  const NormalizedPair np{{1.0, 2.0, 3.0}, kFixtureU};
  const SpectralData sd = spectral_data(np);
  const NormalizedPair back = reconstruct(sd);
  EXPECT_LT(max_entry_rel(back.u, kFixtureU), 1e-8);
}

TEST(Reconstruct, RoundTripA) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const MatrixPair p = random_pair(seed).pair;
    const NormalizedPair np = normalize_pair(p);
    const NormalizedPair back = reconstruct(spectral_data(p));
    for (int i = 0; i < 3; ++i) EXPECT_LT(rel(back.h[i], np.h[i]), 1e-7);
    EXPECT_LT(max_entry_rel(back.u, np.u), 1e-7) << "seed " << seed;
    EXPECT_EQ(back.u(0, 1), Complex(1.0));
    EXPECT_EQ(back.u(0, 2), Complex(1.0));
  }
}

TEST(Reconstruct, RoundTripB) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const SpectralData sd = spectral_data(random_pair(seed).pair);
    EXPECT_LT(compare_spectral(spectral_data(reconstruct(sd)), sd).max_residual, 1e-7) << "seed " << seed;
  }
}

TEST(Reconstruct, ClosedFormsAgreeWithLinearSolve) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Reconstruction r = reconstruct_detailed(spectral_data(random_pair(seed).pair));
    EXPECT_LT(r.route_residual, 1e-7) << "seed " << seed;
  }
}

TEST(Reconstruct, OffCurveDivisorIsNotProjected) {
  SpectralData sd = spectral_data(normalize_pair(random_pair(7).pair));
  sd.divisor.l += 1e-2;
  const NormalizedPair np = reconstruct(sd);
  const SpectralData again = spectral_data(np);
  EXPECT_GT(compare_spectral(again, sd).max_residual, 1e-4);
}

TEST(Reconstruct, NonOrderedHIsUsedAsGiven) {
  const SpectralData sd = spectral_data(random_pair(8).pair);
  const SpectralData swapped = spectral_data(random_pair(8).pair, {}, Triple{sd.h[0], sd.h[2], sd.h[1]});
  const NormalizedPair np = reconstruct(swapped);
  EXPECT_LT(std::abs(np.h[1] - sd.h[2]), 1e-12);
  EXPECT_LT(compare_spectral(canonical_form(swapped), canonical_form(sd)).max_residual, 1e-7);
}

TEST(Reconstruct, RepeatedEigenvalues) {
  SpectralData sd = spectral_data(random_pair(2).pair);
  sd.h[1] = sd.h[0];
  try {
    reconstruct(sd);
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::RepeatedEigenvalues);
  }
}

TEST(CanonicalForm, Idempotent) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const SpectralData sd = spectral_data(random_pair(seed).pair);
    EXPECT_LT(compare_spectral(canonical_form(sd), sd).max_residual, 1e-9);
  }
}

TEST(CanonicalForm, ConjugatePairs) {
  Sampler g(32);
  const MatrixPair p = random_pair(10).pair;
  const Mat3 c = g.well_conditioned(), ci = inv3(c);
  const SpectralData a = canonical_form(spectral_data(p));
  const SpectralData b = canonical_form(spectral_data(MatrixPair{c * p.a * ci, c * p.b * ci}));
  EXPECT_LT(compare_spectral(a, b).max_residual, 1e-7);
}

TEST(SpectralMap, JacobianHasFullRank) {
  // Finite-difference Jacobian of (h, u11, u21, u22, u23, u31, u32, u33) ->
  // (9 coefficients, L, M) at a random point.
  const NormalizedPair np = normalize_pair(random_pair(12).pair);
  auto eval = [](const NormalizedPair& x) {
    const CurveCoefficients c = curve_coefficients(x);
    const DivisorPoint q = divisor_point(x);
    Eigen::VectorXcd out(11);
    const auto a = c.as_array();
    for (int i = 0; i < 9; ++i) out(i) = a[i];
    out(9) = q.l;
    out(10) = q.m;
    return out;
  };
  const std::pair<int, int> slots[7] = {{0, 0}, {1, 0}, {1, 1}, {1, 2}, {2, 0}, {2, 1}, {2, 2}};
  Eigen::MatrixXcd jac(11, 10);
  const double step = 1e-6;
  for (int k = 0; k < 10; ++k) {
    NormalizedPair plus = np, minus = np;
    if (k < 3) {
      plus.h[k] += step;
      minus.h[k] -= step;
    } else {
      plus.u(slots[k - 3].first, slots[k - 3].second) += step;
      minus.u(slots[k - 3].first, slots[k - 3].second) -= step;
    }
    jac.col(k) = (eval(plus) - eval(minus)) / (2.0 * step);
  }
  const Eigen::VectorXd sv = Eigen::JacobiSVD<Eigen::MatrixXcd>(jac).singularValues();
  EXPECT_GE(sv(9) / sv(0), 1e-6);
}
