#include <doctest.h>

#include "bilax/invariants.hpp"
#include "bilax/random.hpp"
#include "oracles.hpp"

using namespace bilax;

namespace {

BILoop random_bi(std::size_t n, std::uint64_t seed) { return {random_sym(n, seed), random_skew_simple(n, seed)}; }

}  // namespace

TEST_CASE("admissible index set") {
  for (std::size_t n = 2; n <= 12; ++n) {
    const auto idx = enumerate_indices(n);
    CHECK(idx.size() == n * n / 4);
    CHECK(std::is_sorted(idx.begin(), idx.end()));
    for (const auto i : idx) CHECK(is_admissible(i, n));
  }
  const std::vector<IntegralIndex> four{{1, 0}, {2, 0}, {3, 0}, {3, 2}};
  CHECK(enumerate_indices(4) == four);
  CHECK(!is_admissible({2, 1}, 5));   // odd l
  CHECK(!is_admissible({2, 2}, 5));   // l > k − 1
  CHECK(!is_admissible({4, 0}, 4));   // k > n − 1
  CHECK(!is_admissible({0, 0}, 4));
  CHECK_THROWS_AS(require_admissible({2, 1}, 4), std::invalid_argument);
  CHECK_THROWS(enumerate_indices(1));
  CHECK(IntegralIndex{3, 2}.name() == "H_3_2");
}

TEST_CASE("Hamiltonians against trace formulas") {
  const BILoop x = random_bi(4, 1);
  const Matrix s = x.S.matrix();
  const Matrix n = x.N.matrix();
  CHECK(hamiltonian(x, {1, 0}) == doctest::Approx(0.5 * (s * s).trace()));
  CHECK(hamiltonian(x, {2, 0}) == doctest::Approx((s * s * s).trace() / 3.0));
  // [z²] tr((S + zN)⁴) is the trace of all words with two S and two N.
  CHECK(hamiltonian(x, {3, 2}) == doctest::Approx(oracle::word_sum(s, n, 2, 2).trace() / 4.0));
}

TEST_CASE("gradient matches central differences under the pairing") {
  const BILoop x = random_bi(4, 2);
  const BILoop dir = random_bi(4, 3);
  const double eps = 1e-5;
  for (const auto idx : enumerate_indices(4)) {
    const BILoop xp{x.S + eps * dir.S, x.N + eps * dir.N};
    const BILoop xm{x.S - eps * dir.S, x.N - eps * dir.N};
    const double fd = (hamiltonian(xp, idx) - hamiltonian(xm, idx)) / (2.0 * eps);
    CHECK(pairing(gradient_loop(x, idx), dir.loop()) == doctest::Approx(fd).epsilon(1e-7));
  }
  const LaurentLoop g = gradient_loop(x, {3, 2});
  CHECK(g.lo() == -3);
  CHECK(g.hi() == 0);
}

TEST_CASE("Hamiltonians Poisson-commute") {
  for (std::size_t n = 2; n <= 5; ++n) {
    const BILoop x = random_bi(n, 10 + n);
    const auto idx = enumerate_indices(n);
    for (const auto a : idx) {
      for (const auto b : idx) {
        CHECK(std::abs(poisson_bracket(x, a, b)) <= 1e-10 * poisson_scale(x, a, b));
      }
    }
  }
  // The vanishing is not because the R-bracket itself vanishes.
  const BILoop x = random_bi(4, 3);
  CHECK(rbracket(gradient_loop(x, {2, 0}), gradient_loop(x, {3, 2})).max_coeff_norm() > 1e-3);
}

TEST_CASE("spectral curve coefficients reproduce the determinant") {
  const std::size_t n = 4;
  const BILoop x = random_bi(n, 5);
  const SpectralTable tab = spectral_coeffs(x.S, x.N);
  for (double z : {-0.7, 0.3, 1.6}) {
    for (double w : {-1.1, 0.5}) {
      const Matrix m = x.S.matrix() + z * x.N.matrix() - w * Matrix::identity(n);
      double p = 0.0;
      for (int r = 0; r <= static_cast<int>(n); ++r)
        for (int d = 0; d <= r; ++d) p += tab.coefficient(r, d) * std::pow(z, d) * std::pow(w, n - r);
      CHECK(p == doctest::Approx(oracle::leibniz_det(m)).epsilon(1e-10));
    }
  }
  CHECK(tab.odd_residual() < 1e-12);
  CHECK(tab.I(0, 0) == doctest::Approx(1.0));
  CHECK(tab.I(1, 0) == doctest::Approx(-x.S.matrix().trace()).epsilon(1e-12));
  CHECK_THROWS_AS(tab.I(2, 2), std::out_of_range);
  CHECK_THROWS_AS(spectral_coeffs(x.S, x.N, 0.0), std::invalid_argument);
}

TEST_CASE("Casimirs are constant along orbit directions") {
  const BILoop x = random_bi(5, 6);
  const auto c = casimirs(x.S, x.N);
  REQUIRE(c.size() == 3);  // l = 0, 2, 4
  CHECK(c[0] == doctest::Approx(x.S.matrix().trace()));
  // S + [N, T] with T symmetric stays on the orbit.
  const SymMatrix moved = x.S + SymMatrix::project(commutator(x.N.matrix(), random_sym(5, 9).matrix()));
  CHECK(orbit_membership(moved, x.S, x.N, 1e-12));
  CHECK(!orbit_membership(x.S + SymMatrix::identity(5), x.S, x.N, 1e-6));
}

TEST_CASE("integral independence rank") {
  for (std::size_t n = 3; n <= 6; ++n) {
    const BILoop x = random_bi(n, 20 + n);
    CHECK(integral_independence_rank(x.S, x.N) == static_cast<int>(n * n / 4));
  }
  CHECK(integral_independence_rank(random_sym(4, 1), SkewMatrix(4)) == 0);
}
