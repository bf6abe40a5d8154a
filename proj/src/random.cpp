#include "bilax/random.hpp"

#include <limits>

namespace bilax {

namespace {
constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
constexpr std::uint64_t kStreamMul = 0xD1B54A32D192ED03ULL;

enum Stream : std::uint64_t { kSymStream = 1, kSkewStream = 2, kGeneralStream = 3, kOrthoStream = 4 };
}  // namespace

std::uint64_t splitmix64_mix(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xBF58476D1CE4E5B9ULL;
  x ^= x >> 27;
  x *= 0x94D049BB133111EBULL;
  x ^= x >> 31;
  return x;
}

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream)
    : key_(splitmix64_mix(seed ^ (stream * kStreamMul))) {}

std::uint64_t CounterRng::next_u64() {
  ++counter_;
  return splitmix64_mix(key_ + counter_ * kGolden);
}

double CounterRng::uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

SymMatrix random_sym(std::size_t n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("random_sym: n must be positive");
  CounterRng rng(seed, kSymStream);
  SymMatrix s(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j) s.set(i, j, rng.uniform(-1.0, 1.0));
  return s;
}

double skew_spectral_gap(const SkewMatrix& k) {
  const std::size_t n = k.size();
  if (n < 2) return 0.0;
  const Matrix km = k.matrix();
  // −K² = KᵀK has eigenvalues ω_j², each twice (plus one 0 for odd n).
  const auto lam = eigenvalues_sym(SymMatrix::project(-(km * km)));
  std::vector<double> omega;
  std::size_t i = 0;
  if (n % 2 == 1) {
    omega.push_back(std::sqrt(std::max(lam[0], 0.0)));
    i = 1;
  }
  for (; i + 1 < n; i += 2) omega.push_back(std::sqrt(std::max(0.5 * (lam[i] + lam[i + 1]), 0.0)));

  double gap = std::numeric_limits<double>::infinity();
  const std::size_t first_nonzero = (n % 2 == 1) ? 1 : 0;
  for (std::size_t a = first_nonzero; a < omega.size(); ++a) gap = std::min(gap, 2.0 * omega[a]);
  for (std::size_t a = 0; a < omega.size(); ++a)
    for (std::size_t b = a + 1; b < omega.size(); ++b) gap = std::min(gap, std::abs(omega[a] - omega[b]));
  return gap;
}

SkewMatrix random_skew_simple(std::size_t n, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("random_skew_simple: n must be at least 2");
  CounterRng rng(seed, kSkewStream);
  for (int attempt = 0; attempt < kSkewResampleCap; ++attempt) {
    SkewMatrix k(n);
    for (std::size_t i = 1; i < n; ++i)
      for (std::size_t j = 0; j < i; ++j) k.set(i, j, rng.uniform(-1.0, 1.0));
    if (skew_spectral_gap(k) > kSimpleSpectrumGap) return k;
  }
  throw ConvergenceError("random_skew_simple: resample cap exceeded");
}

Matrix random_matrix(std::size_t n, std::uint64_t seed) {
  CounterRng rng(seed, kGeneralStream);
  Matrix a(n);
  for (auto& x : a.data()) x = rng.uniform(-1.0, 1.0);
  return a;
}

Matrix random_orthogonal(std::size_t n, std::uint64_t seed) {
  CounterRng rng(seed, kOrthoStream);
  std::vector<std::vector<double>> q;
  while (q.size() < n) {
    std::vector<double> v(n);
    for (auto& x : v) x = rng.uniform(-1.0, 1.0);
    // Two passes of modified Gram–Schmidt.
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& u : q) {
        double d = 0.0;
        for (std::size_t i = 0; i < n; ++i) d += u[i] * v[i];
        for (std::size_t i = 0; i < n; ++i) v[i] -= d * u[i];
      }
    double nv = 0.0;
    for (double x : v) nv += x * x;
    nv = std::sqrt(nv);
    if (nv < 1e-8) continue;
    for (auto& x : v) x /= nv;
    q.push_back(std::move(v));
  }
  Matrix o(n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) o(i, j) = q[j][i];
  return o;
}

}  // namespace bilax
