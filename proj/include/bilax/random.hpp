#pragma once

#include <cstdint>

#include "bilax/matcore.hpp"

namespace bilax {

/// Counter-based generator: the i-th draw of stream (seed, stream) is the
/// SplitMix64 finalizer applied to key + i·0x9E3779B97F4A7C15, where key is
/// the finalizer of seed ⊕ stream·0xD1B54A32D192ED03. Only integer
/// arithmetic is involved, so sequences are identical across platforms.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t next_u64();
  /// Uniform in [0,1) with 53 random bits.
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

std::uint64_t splitmix64_mix(std::uint64_t x);

inline constexpr int kSkewResampleCap = 1000;
inline constexpr double kSimpleSpectrumGap = 1e-6;

/// Entries i.i.d. uniform in [−1,1] on and below the diagonal.
SymMatrix random_sym(std::size_t n, std::uint64_t seed);

/// Entries i.i.d. uniform in [−1,1] below the diagonal, resampled until the
/// eigenvalues ±iω_j (and 0 for odd n) are pairwise separated by more than
/// kSimpleSpectrumGap. Throws ConvergenceError after kSkewResampleCap draws.
SkewMatrix random_skew_simple(std::size_t n, std::uint64_t seed);

/// Entries i.i.d. uniform in [−1,1].
Matrix random_matrix(std::size_t n, std::uint64_t seed);

/// Orthogonal factor of a QR decomposition of random_matrix(n, seed).
Matrix random_orthogonal(std::size_t n, std::uint64_t seed);

/// Minimum distance between distinct eigenvalues of a real skew matrix,
/// treating the forced ± pairing iω, −iω as the only allowed coincidence.
/// Zero when the spectrum is not simple.
double skew_spectral_gap(const SkewMatrix& k);

}  // namespace bilax
