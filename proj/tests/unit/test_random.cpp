#include <doctest.h>

#include "bilax/random.hpp"
#include "oracles.hpp"

using namespace bilax;

TEST_CASE("SplitMix64 finalizer matches the reference output") {
  // First output of the reference SplitMix64 generator seeded with 0.
  CHECK(splitmix64_mix(0x9E3779B97F4A7C15ULL) == 0xE220A8397B1DCDAFULL);
}

TEST_CASE("streams are deterministic and distinct") {
  CounterRng a(42, 1), b(42, 1), c(42, 2);
  bool differs = false;
  for (int i = 0; i < 100; ++i) {
    const auto x = a.next_u64();
    CHECK(x == b.next_u64());
    differs = differs || x != c.next_u64();
  }
  CHECK(differs);
}

TEST_CASE("uniform draws stay in range") {
  CounterRng r(9);
  double lo = 1.0, hi = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const double u = r.uniform();
    lo = std::min(lo, u);
    hi = std::max(hi, u);
  }
  CHECK(lo >= 0.0);
  CHECK(hi < 1.0);
  CHECK(hi - lo > 0.99);
}

TEST_CASE("random symmetric and skew matrices") {
  const SymMatrix s = random_sym(5, 3);
  CHECK(oracle::max_abs(s.matrix()) <= 1.0);
  CHECK(random_sym(5, 3) == s);
  CHECK(!(random_sym(5, 4) == s));
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const SkewMatrix k = random_skew_simple(6, seed);
    CHECK(skew_spectral_gap(k) > kSimpleSpectrumGap);
  }
}

TEST_CASE("spectral gap detects repeated rotation frequencies") {
  SkewMatrix k(4);
  k.set(1, 0, 1.0);
  k.set(3, 2, 1.0);  // two planes rotating at the same rate
  CHECK(skew_spectral_gap(k) < 1e-12);
  k.set(3, 2, 2.0);
  CHECK(skew_spectral_gap(k) == doctest::Approx(1.0));
}

TEST_CASE("random orthogonal matrices are orthogonal") {
  const Matrix q = random_orthogonal(5, 8);
  CHECK(oracle::max_abs_diff(q.transpose() * q, Matrix::identity(5)) < 1e-14);
}
