#include <doctest.h>

#include <numbers>

#include "bilax/factorization.hpp"
#include "bilax/flows.hpp"
#include "bilax/random.hpp"
#include "oracles.hpp"

using namespace bilax;
using cplx = std::complex<double>;

namespace {

BILoop random_bi(std::size_t n, std::uint64_t seed) { return {random_sym(n, seed), random_skew_simple(n, seed)}; }

}  // namespace

TEST_CASE("generator loops") {
  const BILoop x = random_bi(3, 1);
  const Matrix s = x.S.matrix();
  const Matrix n = x.N.matrix();
  const LaurentLoop g1 = generator(x, {1, 0});
  CHECK(g1.lo() == -1);
  CHECK(g1.coeff(-1) == s);
  CHECK(g1.coeff(0) == n);
  const LaurentLoop g2 = generator(x, {2, 0});
  CHECK(oracle::max_abs_diff(g2.coeff(-1), s * s) < 1e-15);
  CHECK(oracle::max_abs_diff(g2.coeff(0), s * n + n * s) < 1e-15);
  CHECK(oracle::max_abs_diff(g2.coeff(1), n * n) < 1e-15);
  CHECK(sigma_residual(g2) < 1e-13);
  CHECK(sigma_residual(generator(random_bi(4, 2), {3, 2})) < 1e-13);
  CHECK_THROWS_AS(generator(x, {2, 1}), std::invalid_argument);
}

TEST_CASE("matrix exponential") {
  const double th = 7.0;  // large enough to need squaring
  const CMatrix rot{{0.0, th}, {-th, 0.0}};
  const CMatrix e = matrix_exp(rot);
  CHECK(std::abs(e(0, 0) - std::cos(th)) < 1e-13);
  CHECK(std::abs(e(0, 1) - std::sin(th)) < 1e-13);
  const CMatrix d{{cplx(0.3, 1.0), 0.0}, {0.0, -2.0}};
  const CMatrix ed = matrix_exp(d);
  CHECK(std::abs(ed(0, 0) - std::exp(cplx(0.3, 1.0))) < 1e-14);
  CHECK(std::abs(ed(1, 1) - std::exp(-2.0)) < 1e-15);
  CHECK(matrix_exp(CMatrix(3)) == CMatrix::identity(3));
}

TEST_CASE("sampling at t = 0 gives the identity loop") {
  const FourierLoop g = sample_exp(generator(random_bi(3, 1), {2, 0}), 0.0, 32);
  CHECK(frobenius_norm(g.coeff(0) - CMatrix::identity(3)) < 1e-15);
  for (int j = 1; j <= 16; ++j) CHECK(frobenius_norm(g.coeff(j)) + frobenius_norm(g.coeff(-j)) < 1e-15);
  CHECK(g.coeff(100) == CMatrix(3));
  CHECK(winding_number(g) == 0);
  CHECK_THROWS_AS(sample_exp(generator(random_bi(3, 1), {2, 0}), 0.0, 48), std::invalid_argument);
}

TEST_CASE("sampled loops satisfy the symmetry and are real") {
  const FourierLoop g = sample_exp(generator(random_bi(3, 2), {2, 0}), 0.5, 256);
  CHECK(sample_symmetry_residual(g) < 1e-10);
  CHECK(g.max_imag < 1e-10);
  CHECK(g.aliasing < 1e-10);
  CHECK(winding_number(g) == 0);
  // Too few samples for a long time leaves visible aliasing.
  CHECK_THROWS_AS(sample_exp(generator(random_bi(3, 2), {2, 0}), 5.0, 16), ConvergenceError);
}

TEST_CASE("winding number counts turns of the determinant") {
  FourierLoop g;
  g.n = 2;
  g.M = 16;
  for (int m = 0; m < 16; ++m) {
    const cplx z = std::polar(1.0, 2.0 * std::numbers::pi * m / 16);
    g.samples.push_back(CMatrix{{z * z, 0.0}, {0.0, 1.0}});
  }
  CHECK(winding_number(g) == 2);
}

TEST_CASE("factoring the identity") {
  const FourierLoop g = sample_exp(generator(random_bi(3, 1), {2, 0}), 0.0, 64);
  const BirkhoffFactors f = birkhoff(g, 4);
  CHECK(f.residual < 1e-14);
  CHECK(f.g_minus.max_coeff_norm() == doctest::Approx(std::sqrt(3.0)));
  CHECK(frobenius_norm(f.g_plus.coeff(0) - Matrix::identity(3)) < 1e-14);
  for (int m = 1; m <= f.g_plus.hi(); ++m) CHECK(oracle::max_abs(f.g_plus.coeff(m)) < 1e-14);
  CHECK_THROWS_AS(birkhoff(g, 0), std::invalid_argument);
  CHECK_THROWS_AS(birkhoff(g, 32), std::invalid_argument);
}

TEST_CASE("a plus loop is its own plus factor") {
  // γ = exp(zA) with A symmetric satisfies γ(z)γ(−z)ᵀ = I and has no negative part.
  const Matrix a = random_sym(3, 4).matrix() * 0.5;
  const FourierLoop g = sample_exp(LaurentLoop::monomial(-1.0 * a, 1), 1.0, 64);
  const BirkhoffFactors f = birkhoff(g, 8);
  for (int j = -8; j < 0; ++j) CHECK(oracle::max_abs(f.g_minus.coeff(j)) < 1e-13);
  Matrix power = Matrix::identity(3);
  double fact = 1.0;
  for (int m = 0; m <= 10; ++m) {
    if (m > 0) {
      power = power * a;
      fact *= m;
    }
    CHECK(oracle::max_abs_diff(f.g_plus.coeff(m), power / fact) < 1e-13);
  }
}

TEST_CASE("factorization of a Bloch–Iserles loop") {
  const FourierLoop g = sample_exp(generator(random_bi(3, 3), {2, 0}), 0.5, 256);
  const BirkhoffFactors f = birkhoff(g, 40);
  CHECK(f.J == 40);
  CHECK(f.residual < 1e-8);
  CHECK(f.tail < 1e-10);
  CHECK(f.max_imag < 1e-10);
  CHECK(f.sym_minus < 1e-8);
  CHECK(f.sym_plus < 1e-8);
  CHECK(f.g_minus.coeff(0) == Matrix::identity(3));

  // Uniqueness: more unknowns reproduce the same leading coefficients.
  BirkhoffOptions fixed;
  fixed.escalate = false;
  const BirkhoffFactors f1 = birkhoff(g, 24, fixed);
  const BirkhoffFactors f2 = birkhoff(g, 32, fixed);
  for (int j = 1; j <= 20; ++j) CHECK(oracle::max_abs_diff(f1.g_minus.coeff(-j), f2.g_minus.coeff(-j)) < 1e-9);
}

TEST_CASE("escalation enlarges J until the tail is small") {
  const FourierLoop g = sample_exp(generator(random_bi(3, 3), {2, 0}), 1.0, 256);
  BirkhoffOptions opts;
  opts.tail_tol = 1e-300;  // unreachable, so J climbs to its cap
  const BirkhoffFactors f = birkhoff(g, 4, opts);
  CHECK(f.J == 64);
}

TEST_CASE("trivial cases of the solution formula") {
  const BILoop x = random_bi(3, 4);
  const FactorizationSolution at0 = solve_by_factorization(x, {2, 0}, 0.0, 64, 8);
  CHECK(frobenius_norm((at0.S - x.S).matrix()) < 1e-14);
  const SymMatrix still = SymMatrix::project(x.N.matrix() * x.N.matrix());
  const FactorizationSolution comm = solve_by_factorization({still, x.N}, {2, 0}, 0.7);
  CHECK(frobenius_norm((comm.S - still).matrix()) < 1e-12);
}

TEST_CASE("factorization agrees with direct integration") {
  for (std::uint64_t seed : {5u, 6u}) {
    const BILoop x = random_bi(3, seed);
    for (double t : {0.25, 0.5, 1.0}) {
      const FactorizationSolution sol = solve_by_factorization(x, {2, 0}, t);
      const SymMatrix ode = flow_endpoint(x.S, x.N, {2, 0}, t, 1e-4);
      CHECK(frobenius_norm((sol.S - ode).matrix()) < 1e-6);
      CHECK(sol.n_residual < 1e-8);
      CHECK(sol.form_gap < 1e-7);
      CHECK(sol.winding == 0);
      CHECK(orbit_membership(sol.S, x.S, x.N, 1e-7));
    }
  }
  // Other members of the hierarchy, including an l > 0 one.
  const BILoop y = random_bi(4, 7);
  for (const IntegralIndex idx : {IntegralIndex{1, 0}, IntegralIndex{3, 0}, IntegralIndex{3, 2}}) {
    const FactorizationSolution sol = solve_by_factorization(y, idx, 0.25);
    CHECK(frobenius_norm((sol.S - flow_endpoint(y.S, y.N, idx, 0.25, 1e-4)).matrix()) < 1e-6);
  }
}

TEST_CASE("deep negative generators need more samples") {
  // z^{-3} in the generator gives the minus factor a long tail; with J capped
  // at M/4 the factorization only closes once M grows.
  const BILoop y = random_bi(4, 7);
  CHECK_THROWS_AS(solve_by_factorization(y, {3, 2}, 0.5, 256, 40), ConvergenceError);
  const FactorizationSolution sol = solve_by_factorization(y, {3, 2}, 0.5, 512, 80, {1e-7, 1e-10, true});
  CHECK(sol.factors.residual < 1e-7);
  CHECK(frobenius_norm((sol.S - flow_endpoint(y.S, y.N, {3, 2}, 0.5, 1e-4)).matrix()) < 1e-6);
}
