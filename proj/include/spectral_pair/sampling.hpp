#ifndef SPECTRAL_PAIR_SAMPLING_HPP
#define SPECTRAL_PAIR_SAMPLING_HPP

// Seeded generation of general-position matrix pairs and generator words.
// Output depends only on the seed: the engine is std::mt19937_64 and the
// conversion to doubles is done here rather than through <random>
// distributions, whose algorithms are implementation-defined.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <sstream>

#include "spectral_pair/group_action.hpp"
#include "spectral_pair/spectral_map.hpp"

namespace spair {

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  std::uint64_t below(std::uint64_t n) { return engine_() % n; }

  /// Area-uniform in the closed unit disk.
  Complex unit_disk() {
    const double r = std::sqrt(uniform());
    return std::polar(r, 2.0 * std::numbers::pi * uniform());
  }

  /// Area-uniform in the annulus r_min <= |z| <= r_max.
  Complex annulus(double r_min, double r_max) {
    const double r = std::sqrt(r_min * r_min + uniform() * (r_max * r_max - r_min * r_min));
    return std::polar(r, 2.0 * std::numbers::pi * uniform());
  }

  Mat3 unit_disk_matrix() {
    Mat3 m;
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) m(i, j) = unit_disk();
    return m;
  }

  /// Unit-disk matrix with ||M|| ||M^-1|| <= condition_bound (Frobenius).
  Mat3 well_conditioned(double condition_bound = 20.0) {
    for (;;) {
      const Mat3 m = unit_disk_matrix();
      const double n = m.norm();
      if (!(std::abs(det3(m)) > 1e-6 * n * n * n)) continue;
      if (n * inv3(m).norm() <= condition_bound) return m;
    }
  }

  GeneratorWord word(std::size_t length) {
    GeneratorWord w(length);
    for (auto& g : w) g = static_cast<Generator>(below(3));
    return w;
  }

 private:
  std::mt19937_64 engine_;
};

struct RandomPair {
  MatrixPair pair;
  int attempts = 0;  // candidates drawn, including the accepted one
};

/// True if the pair and its images under Swap, Invert and Shear all pass the
/// general-position checks at the given margins.
inline bool well_separated(const MatrixPair& pair, const ToleranceConfig& margins) {
  if (!general_position_report(pair, margins).all_passed()) return false;
  for (Generator g : {Generator::Swap, Generator::Invert, Generator::Shear}) {
    try {
      if (!general_position_report(act_on_pair(g, pair), margins).all_passed()) return false;
    } catch (const Error&) {
      return false;
    }
  }
  return true;
}

/// Deterministic general-position pair for `seed`.
///
/// A = V diag(h) V^-1 with h in the annulus 1/2 <= |h| <= 2 at pairwise
/// distance >= 0.3 and V a well-conditioned unit-disk matrix; B has unit-disk
/// entries. Candidates are rejected until the pair and its three generator
/// images pass general_position_report at the sampling margins.
inline RandomPair random_pair(std::uint64_t seed, const ToleranceConfig& margins = ToleranceConfig::sampling(),
                              int max_attempts = 1000) {
  Sampler s(seed);
  for (int attempt = 1; attempt <= max_attempts; ++attempt) {
    Triple h;
    do {
      for (auto& x : h) x = s.annulus(0.5, 2.0);
    } while (std::min({std::abs(h[0] - h[1]), std::abs(h[0] - h[2]), std::abs(h[1] - h[2])}) < 0.3);
    const Mat3 v = s.well_conditioned();
    MatrixPair pair{v * Mat3::diagonal(h) * inv3(v), s.unit_disk_matrix()};
    if (well_separated(pair, margins)) return {pair, attempt};
  }
  std::ostringstream os;
  os << "no general-position pair for seed " << seed << " after " << max_attempts << " attempts";
  throw Error(ErrorCode::IntermediateDegeneracy, os.str());
}

}  // namespace spair

#endif  // SPECTRAL_PAIR_SAMPLING_HPP
