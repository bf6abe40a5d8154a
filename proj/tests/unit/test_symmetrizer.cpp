#include <doctest.h>

#include "bilax/random.hpp"
#include "bilax/symmetrizer.hpp"
#include "oracles.hpp"

using namespace bilax;

TEST_CASE("symmetrizers equal the sum over words") {
  const Matrix a = random_matrix(3, 1);
  const Matrix b = random_matrix(3, 2);
  const SymmetrizerTable t(a, b, 6);
  for (int i = 0; i <= 6; ++i)
    for (int j = 0; i + j <= 6; ++j) CHECK(oracle::max_abs_diff(t(i, j), oracle::word_sum(a, b, i, j)) < 1e-12);
  CHECK(t(0, 0) == Matrix::identity(3));
  CHECK_THROWS_AS(t(4, 3), std::out_of_range);
  CHECK_THROWS_AS(t(-1, 0), std::out_of_range);
  CHECK(oracle::max_abs_diff(sym(a, b, 1, 1), a * b + b * a) < 1e-15);
}

TEST_CASE("commutator identity between neighbouring symmetrizers") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    Matrix a = random_matrix(4, seed);
    Matrix b = random_matrix(4, seed + 50);
    a = a / frobenius_norm(a);
    b = b / frobenius_norm(b);
    for (int i = 0; i <= 6; ++i)
      for (int j = 0; i + j <= 6; ++j) CHECK(lemma_a_residual(a, b, i, j) < 1e-13);
  }
}

TEST_CASE("parity of symmetrizers of a symmetric and a skew matrix") {
  const SymMatrix s = random_sym(4, 3);
  const SkewMatrix n = random_skew_simple(4, 3);
  for (int i = 0; i <= 5; ++i)
    for (int j = 0; i + j <= 6; ++j) CHECK(parity_check(s, n, i, j));
  const Matrix m = sym(s.matrix(), n.matrix(), 1, 1);
  CHECK(oracle::max_abs(m + m.transpose()) < 1e-15);
}

TEST_CASE("degree-n symmetrizers depend on lower ones") {
  for (std::size_t n = 2; n <= 5; ++n) {
    CHECK(cayley_hamilton_dependence(random_matrix(n, n), random_matrix(n, n + 10)) < 1e-8);
  }
}

TEST_CASE("witness pair") {
  const WitnessPair w = witness_pair(3, 2.0);
  CHECK(w.a(2, 2) == 8.0);
  CHECK(w.b(1, 0) == 1.0);
  CHECK(w.b(0, 1) == 0.0);
  for (std::size_t n = 2; n <= 5; ++n) {
    const WitnessPair p = witness_pair(n, 2.0);
    const auto family = symmetrizers_below_degree(p.a, p.b);
    CHECK(family.size() == n * (n + 1) / 2);
    CHECK(numerical_rank(family) == static_cast<int>(n * (n + 1) / 2));
  }
  // With c = 1 the diagonal is the identity and everything collapses onto powers of B.
  const WitnessPair flat = witness_pair(3, 1.0);
  CHECK(numerical_rank(symmetrizers_below_degree(flat.a, flat.b)) < 6);
  CHECK_THROWS(witness_pair(3, 0.0));
}

TEST_CASE("generic independence for random data") {
  for (std::size_t n = 2; n <= 5; ++n) {
    CHECK(generic_independence(random_sym(n, 7), random_skew_simple(n, 7)) == static_cast<int>(n * (n + 1) / 2));
  }
}
