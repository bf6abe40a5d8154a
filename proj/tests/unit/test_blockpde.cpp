#include <doctest.h>

#include <numbers>

#include "bilax/blockpde.hpp"
#include "bilax/flows.hpp"
#include "bilax/random.hpp"
#include "oracles.hpp"

using namespace bilax;
using namespace bilax::blockpde;

namespace {

constexpr double kPi = std::numbers::pi;

BlockState random_block(std::size_t n, std::uint64_t seed, double scale = 1.0) {
  return extract(SymMatrix::project(random_matrix(n, seed) * scale));
}

// Block form read directly off the matrix commutator [N, Sᵖ].
BlockState commutator_oracle(const BlockState& bs, int p) {
  const Matrix s = embed(bs).matrix();
  Matrix q = s;
  for (int i = 1; i < p; ++i) q = q * s;
  return extract(SymMatrix::checked(commutator(n0(bs.n()).matrix(), q), 1e-12));
}

double block_diff(const BlockState& x, const BlockState& y) {
  return oracle::max_abs_diff(embed(x).matrix(), embed(y).matrix());
}

double vec_diff(const Vec& x, const Vec& y) {
  double m = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) m = std::max(m, std::abs(x[i] - y[i]));
  return m;
}

}  // namespace

TEST_CASE("block layout") {
  const BlockState z = BlockState::zero(5);
  CHECK(z.n() == 5);
  CHECK(z.u.size() == 3);
  CHECK(z.B.size() == 3);
  CHECK_THROWS(BlockState::zero(2));

  const SymMatrix s = random_sym(5, 1);
  const BlockState bs = extract(s);
  CHECK(bs.a == s(0, 0));
  CHECK(bs.b == s(0, 1));
  CHECK(bs.c == s(1, 1));
  CHECK(bs.u[2] == s(4, 0));
  CHECK(bs.v[0] == s(2, 1));
  CHECK(bs.B(1, 0) == s(3, 2));
  CHECK(embed(bs) == s);

  const Matrix n = n0(4).matrix();
  CHECK(n(0, 1) == 1.0);
  CHECK(n(1, 0) == -1.0);
  CHECK(oracle::max_abs(n) == 1.0);
  CHECK(frobenius_norm(n) == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("block right-hand sides match the matrix commutator") {
  for (std::size_t n = 3; n <= 6; ++n) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const BlockState bs = random_block(n, seed);
      CHECK(block_diff(rhs_quadratic(bs), commutator_oracle(bs, 2)) < 1e-13);
      CHECK(block_diff(rhs_cubic(bs), commutator_oracle(bs, 3)) < 1e-12);
      const BlockState q = rhs_quadratic(bs);
      CHECK(q.c == -q.a);
      CHECK(oracle::max_abs(q.B.matrix()) == 0.0);
    }
  }
}

TEST_CASE("displayed cubic system needs c = -a") {
  BlockState bs = random_block(5, 3);
  CHECK(block_diff(rhs_cubic_printed(bs), rhs_cubic(bs)) > 1e-3);
  bs.c = -bs.a;
  CHECK(block_diff(rhs_cubic_printed(bs), rhs_cubic(bs)) < 1e-12);
}

TEST_CASE("reduced system is the cubic flow with an empty corner") {
  BlockState bs = random_block(6, 4);
  bs.a = bs.b = bs.c = 0.0;
  const BlockState full = rhs_cubic(bs);
  const UV red = rhs_reduced(bs.u, bs.v, bs.B);
  CHECK(vec_diff(red.u, full.u) < 1e-13);
  CHECK(vec_diff(red.v, full.v) < 1e-13);

  // dE/dt = 2⟨u,u̇⟩ + 2⟨v,v̇⟩ vanishes only for the consistent sign.
  auto energy_rate = [&](ReducedSign sign) {
    const UV d = rhs_reduced(bs.u, bs.v, bs.B, sign);
    return 2.0 * (dot(bs.u, d.u) + dot(bs.v, d.v));
  };
  CHECK(std::abs(energy_rate(ReducedSign::kConsistent)) < 1e-13);
  CHECK(std::abs(energy_rate(ReducedSign::kAsPrinted)) > 1e-3);
}

TEST_CASE("block integrations conserve the trace and Casimirs") {
  const BlockState bs = random_block(5, 6, 0.5);
  for (const BlockFlow flow : {BlockFlow::kQuadratic, BlockFlow::kCubic}) {
    const BlockRun run = integrate_block(bs, flow, 1.0, 1e-3);
    CHECK(run.max_trace_drift < 1e-10);
    CHECK(run.max_casimir_drift < 1e-10);
  }
}

TEST_CASE("block integration agrees with the matrix flow") {
  const std::size_t n = 6;
  const BlockState bs = random_block(n, 8, 0.5);
  const SymMatrix s0 = embed(bs);
  const SymMatrix quad = flow_endpoint(s0, n0(n), {2, 0}, 1.0, 1e-3);
  const SymMatrix cubic = flow_endpoint(s0, n0(n), {3, 0}, 1.0, 1e-3);
  CHECK(block_diff(integrate_block(bs, BlockFlow::kQuadratic, 1.0, 1e-3).final_state, extract(quad)) < 1e-9);
  CHECK(block_diff(integrate_block(bs, BlockFlow::kCubic, 1.0, 1e-3).final_state, extract(cubic)) < 1e-9);
}

TEST_CASE("reduced integration conserves energy") {
  const BlockState bs = random_block(6, 9, 0.5);
  const ReducedRun run = integrate_reduced(bs.u, bs.v, bs.B, 2.0, 1e-3);
  CHECK(run.max_energy_drift < 1e-10);
}

TEST_CASE("Fourier representation") {
  const PDEState st = pde_from_modes(16, Parity::kEven, {0.5, 1.0, 0.0, -2.0}, {0.0, 0.0, 3.0});
  CHECK(st.u_hat.size() == 16);
  CHECK(PDEState::wavenumber(15, 16) == -1);
  CHECK(PDEState::wavenumber(7, 16) == 7);
  CHECK(reality_defect(st) == 0.0);
  CHECK(parity_leakage(st) == 0.0);
  for (double x : {0.0, 0.3, 2.0, 5.5}) {
    CHECK(field_at(st.u_hat, x) == doctest::Approx(0.5 + std::cos(x) - 2.0 * std::cos(3 * x)));
    CHECK(field_at(st.v_hat, x) == doctest::Approx(3.0 * std::cos(2 * x)));
  }
  const PDEState odd = pde_from_modes(16, Parity::kOdd, {9.0, 1.0}, {0.0, 0.0, 2.0});
  CHECK(field_at(odd.u_hat, 0.7) == doctest::Approx(std::sin(0.7)));
  CHECK(field_at(odd.v_hat, 0.7) == doctest::Approx(2.0 * std::sin(1.4)));
  CHECK_THROWS(pde_from_modes(2, Parity::kEven, {1.0}, {1.0}));
  CHECK_THROWS(pde_from_modes(15, Parity::kEven, {1.0}, {1.0}));
}

TEST_CASE("L2 inner product matches quadrature") {
  const PDEState st = pde_from_modes(16, Parity::kEven, {0.5, 1.0, 0.0, -2.0}, {0.2, 0.7, 3.0, 0.0, 1.0});
  const int pts = 64;  // exact for these trigonometric polynomials
  double q = 0.0;
  for (int i = 0; i < pts; ++i) {
    const double x = 2.0 * kPi * i / pts;
    q += field_at(st.u_hat, x) * field_at(st.v_hat, x);
  }
  q *= 2.0 * kPi / pts;
  CHECK(l2_inner(st.u_hat, st.v_hat) == doctest::Approx(q).epsilon(1e-13));
  const PDEState one = pde_from_modes(8, Parity::kEven, {0.0, 1.0}, {0.0, 0.0, 1.0});
  CHECK(l2_inner(one.u_hat, one.u_hat) == doctest::Approx(kPi));
  CHECK(l2_inner(one.u_hat, one.v_hat) == doctest::Approx(0.0));
  CHECK(l2_energy(one) == doctest::Approx(2.0 * kPi));
}

TEST_CASE("PDE right-hand side on single modes") {
  // u = cos x, v = cos 2x: ⟨u,v⟩ = 0, ⟨u,u⟩ = ⟨v,v⟩ = π.
  const PDEState st = pde_from_modes(16, Parity::kEven, {0.0, 1.0}, {0.0, 0.0, 1.0});
  const PDEState d = pde_rhs(st);
  for (double x : {0.0, 0.4, 1.9}) {
    CHECK(field_at(d.u_hat, x) == doctest::Approx((kPi + 4.0) * std::cos(2 * x)));
    CHECK(field_at(d.v_hat, x) == doctest::Approx(-(kPi + 1.0) * std::cos(x)));
  }
  const PDEState p = pde_rhs(st, ReducedSign::kAsPrinted);
  CHECK(field_at(p.v_hat, 0.4) == doctest::Approx((kPi - 1.0) * std::cos(0.4)));
}

TEST_CASE("PDE integration") {
  const PDEState even = pde_from_modes(32, Parity::kEven, {0.1, 0.5, 0.2}, {0.0, 0.3, 0.0, 0.1});
  const PDERun run = integrate_pde(even, 1.0, 1e-3);
  CHECK(run.max_energy_drift < 1e-8);
  CHECK(run.max_parity_leakage < 1e-12);
  CHECK(reality_defect(run.final_state) < 1e-12);

  const PDEState odd = pde_from_modes(32, Parity::kOdd, {0.0, 0.5, 0.2}, {0.0, 0.3, 0.0, 0.1});
  const PDERun orun = integrate_pde(odd, 1.0, 1e-3);
  CHECK(orun.max_energy_drift < 1e-8);
  CHECK(orun.max_parity_leakage < 1e-12);

  // The printed sign does not conserve the energy.
  CHECK(integrate_pde(even, 0.1, 1e-3, ReducedSign::kAsPrinted).max_energy_drift > 1e-4);
}
