#include <doctest.h>

#include "bilax/matcore.hpp"
#include "bilax/random.hpp"
#include "oracles.hpp"

using namespace bilax;

TEST_CASE("packed symmetric storage round-trips and rejects asymmetry") {
  const Matrix a{{1.0, 2.0, 3.0}, {2.0, 4.0, 5.0}, {3.0, 5.0, 6.0}};
  const SymMatrix s = SymMatrix::checked(a);
  CHECK(s.matrix() == a);
  CHECK(s.packed().size() == 6);
  Matrix bad = a;
  bad(0, 1) = 2.5;
  CHECK_THROWS_AS(SymMatrix::checked(bad), std::invalid_argument);
  CHECK(SymMatrix::project(bad)(0, 1) == doctest::Approx(2.25));
}

TEST_CASE("packed skew storage keeps a zero diagonal") {
  SkewMatrix k(3);
  k.set(2, 0, 1.5);
  CHECK(k(0, 2) == -1.5);
  CHECK(k.matrix().transpose() == -k.matrix());
  CHECK_THROWS(k.set(1, 1, 1.0));
}

TEST_CASE("Cartan split reassembles the matrix") {
  const Matrix a = random_matrix(4, 3);
  const CartanParts p = cartan_split(a);
  CHECK(oracle::max_abs_diff(p.skew.matrix() + p.sym.matrix(), a) < 1e-15);
}

TEST_CASE("characteristic polynomial of a 2x2 matrix") {
  // det(A − wI) = w² − 5w − 2
  const auto c = char_poly(Matrix{{1.0, 2.0}, {3.0, 4.0}});
  REQUIRE(c.size() == 3);
  CHECK(c[0] == doctest::Approx(-2.0));
  CHECK(c[1] == doctest::Approx(-5.0));
  CHECK(c[2] == doctest::Approx(1.0));
}

TEST_CASE("characteristic polynomial agrees with the permutation-sum determinant") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const Matrix a = random_matrix(5, seed);
    const auto c = char_poly(a);
    for (double w : {-1.3, 0.0, 0.4, 2.2}) {
      double p = 0.0;
      for (std::size_t j = c.size(); j-- > 0;) p = p * w + c[j];
      const double det = oracle::leibniz_det(Matrix(a - w * Matrix::identity(5)));
      CHECK(p == doctest::Approx(det).epsilon(1e-11));
    }
    // Cayley–Hamilton
    CHECK(oracle::max_abs(evaluate_polynomial(c, a)) < 1e-12);
  }
}

TEST_CASE("Jacobi eigenvalues are roots of the characteristic polynomial") {
  const SymMatrix s = random_sym(6, 11);
  const auto ev = eigenvalues_sym(s);
  REQUIRE(ev.size() == 6);
  CHECK(std::is_sorted(ev.begin(), ev.end()));
  double sum = 0.0;
  for (double l : ev) {
    sum += l;
    CHECK(std::abs(oracle::leibniz_det(Matrix(s.matrix() - l * Matrix::identity(6)))) < 1e-11);
  }
  CHECK(sum == doctest::Approx(s.matrix().trace()));
  const std::vector<double> d{3.0, -1.0, 2.0};
  CHECK(eigenvalues_sym(SymMatrix::diagonal(d)) == std::vector<double>{-1.0, 2.0, 3.0});
}

TEST_CASE("singular values of orthogonal and scaled columns") {
  const auto sv = singular_values({{3.0, 0.0, 0.0}, {0.0, 0.0, -2.0}});
  REQUIRE(sv.size() == 2);
  CHECK(sv[0] == doctest::Approx(3.0));
  CHECK(sv[1] == doctest::Approx(2.0));
  const auto rank1 = singular_values({{1.0, 1.0}, {2.0, 2.0}});
  CHECK(rank1[1] < 1e-14);
}

TEST_CASE("numerical rank under the trace inner product") {
  const Matrix id = Matrix::identity(3);
  std::vector<Matrix> v{id, 2.0 * id};
  CHECK(numerical_rank(v) == 1);
  Matrix e11(3), e22(3);
  e11(0, 0) = 1.0;
  e22(1, 1) = 1.0;
  v = {e11, e22, Matrix(3), e11 + e22};
  CHECK(numerical_rank(v) == 2);
  v = {Matrix(3)};
  CHECK(numerical_rank(v) == 0);
}

TEST_CASE("least-squares residual against a span") {
  const std::vector<std::vector<double>> basis{{1.0, 0.0, 0.0}, {1.0, 1.0, 0.0}};
  CHECK(least_squares_residual(basis, std::vector<double>{2.0, -3.0, 0.0}) < 1e-15);
  CHECK(least_squares_residual(basis, std::vector<double>{0.0, 0.0, 5.0}) == doctest::Approx(1.0));
  CHECK(least_squares_residual(basis, std::vector<double>{0.0, 0.0, 0.0}) == 0.0);
}

TEST_CASE("LU solve and inverse") {
  const Matrix a = random_matrix(5, 21);
  const Matrix b = random_matrix(5, 22);
  const std::vector<double> av(a.data().begin(), a.data().end());
  const std::vector<double> bv(b.data().begin(), b.data().end());
  const Matrix x(5, lu_solve(av, 5, bv, 5));
  CHECK(oracle::max_abs_diff(a * x, b) < 1e-12);
  CHECK(oracle::max_abs_diff(inverse(a) * a, Matrix::identity(5)) < 1e-12);
  const Matrix singular{{1.0, 2.0}, {2.0, 4.0}};
  CHECK_THROWS_AS(inverse(singular), SingularSystemError);
  CHECK_THROWS_AS(lu_solve(std::vector<double>(3), 2, std::vector<double>(2), 1), DimensionError);
}

TEST_CASE("commutator and dimension checks") {
  const Matrix a = random_matrix(3, 1);
  CHECK(oracle::max_abs(commutator(a, a)) == 0.0);
  CHECK_THROWS_AS(commutator(a, Matrix(2)), DimensionError);
  const SymMatrix s = random_sym(3, 2);
  const Matrix t = random_sym(3, 3).matrix();
  // [S, T] is skew for symmetric S, T.
  const Matrix c = commutator(s.matrix(), t);
  CHECK(oracle::max_abs(c + c.transpose()) < 1e-15);
}
