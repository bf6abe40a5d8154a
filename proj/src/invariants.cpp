#include "bilax/invariants.hpp"

#include <algorithm>
#include <numbers>
#include <stdexcept>

#include "bilax/symmetrizer.hpp"

namespace bilax {

bool is_admissible(IntegralIndex idx, std::size_t n) {
  const int nn = static_cast<int>(n);
  return idx.k >= 1 && idx.k <= nn - 1 && idx.l >= 0 && idx.l % 2 == 0 && idx.l <= std::min(idx.k - 1, nn - 2);
}

void require_admissible(IntegralIndex idx, std::size_t n) {
  if (!is_admissible(idx, n)) {
    throw std::invalid_argument("index (" + std::to_string(idx.k) + "," + std::to_string(idx.l) +
                                ") is not admissible for n=" + std::to_string(n));
  }
}

std::vector<IntegralIndex> enumerate_indices(std::size_t n) {
  if (n < 2) throw std::invalid_argument("enumerate_indices: n must be at least 2");
  std::vector<IntegralIndex> out;
  const int nn = static_cast<int>(n);
  for (int k = 1; k <= nn - 1; ++k)
    for (int l = 0; l <= std::min(k - 1, nn - 2); l += 2) out.push_back({k, l});
  return out;
}

namespace {

LaurentLoop loop_power(const LaurentLoop& x, int p) {
  LaurentLoop acc = LaurentLoop::identity(x.dim());
  for (int i = 0; i < p; ++i) acc = mul(acc, x);
  return acc;
}

}  // namespace

double hamiltonian(const BILoop& x, IntegralIndex idx) {
  require_admissible(idx, x.dim());
  // The contour integral picks out the z^ℓ coefficient.
  const LaurentLoop p = loop_power(x.loop(), idx.k + 1);
  return p.coeff(idx.l).trace() / static_cast<double>(idx.k + 1);
}

LaurentLoop gradient_loop(const BILoop& x, IntegralIndex idx) {
  require_admissible(idx, x.dim());
  const LaurentLoop shift = LaurentLoop::monomial(Matrix::identity(x.dim()), -(idx.l + 1));
  return mul(loop_power(x.loop(), idx.k), shift);
}

double poisson_bracket(const BILoop& x, IntegralIndex a, IntegralIndex b) {
  const LaurentLoop da = gradient_loop(x, a);
  const LaurentLoop db = gradient_loop(x, b);
  return pairing(x.loop(), rbracket(da, db));
}

double poisson_scale(const BILoop& x, IntegralIndex a, IntegralIndex b) {
  const double s = x.loop().max_coeff_norm() * gradient_loop(x, a).max_coeff_norm() *
                   gradient_loop(x, b).max_coeff_norm();
  return std::max(1.0, s);
}

SpectralTable::SpectralTable(std::size_t n, std::vector<std::vector<double>> coeffs)
    : n_(n), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != n_ + 1) throw DimensionError("SpectralTable: expected n+1 rows");
}

double SpectralTable::coefficient(int r, int d) const {
  if (r < 0 || r > static_cast<int>(n_) || d < 0 || d > r) throw std::out_of_range("SpectralTable: (r,d)");
  return coeffs_[static_cast<std::size_t>(r)][static_cast<std::size_t>(d)];
}

double SpectralTable::I(int r, int k) const {
  if (k < 0 || 2 * k > r) throw std::out_of_range("SpectralTable: (r,k)");
  return coefficient(r, 2 * k);
}

double SpectralTable::odd_residual() const {
  double m = 0.0;
  for (std::size_t r = 0; r <= n_; ++r)
    for (std::size_t d = 1; d <= r; d += 2) m = std::max(m, std::abs(coeffs_[r][d]));
  return m;
}

SpectralTable spectral_coeffs(const SymMatrix& s, const SkewMatrix& n, double node_radius) {
  require_same_dim(s.size(), n.size(), "spectral_coeffs");
  if (!(node_radius > 1e-3) || !std::isfinite(node_radius)) {
    throw std::invalid_argument("spectral_coeffs: node spread too small for stable interpolation");
  }
  const std::size_t dim = s.size();
  const std::size_t nodes = dim + 1;
  const Matrix sm = s.matrix();
  const Matrix nm = n.matrix();

  // values[i][j] = [w^j] det(S + z_i N − wI)
  std::vector<double> z(nodes);
  std::vector<std::vector<double>> values(nodes);
  for (std::size_t i = 0; i < nodes; ++i) {
    z[i] = node_radius * std::cos(std::numbers::pi * (2.0 * i + 1.0) / (2.0 * nodes));
    values[i] = char_poly(sm + z[i] * nm);
  }

  // Vandermonde V(i, d) = z_i^d, solved for all w-powers at once.
  std::vector<double> v(nodes * nodes);
  for (std::size_t i = 0; i < nodes; ++i) {
    double p = 1.0;
    for (std::size_t d = 0; d < nodes; ++d) {
      v[i * nodes + d] = p;
      p *= z[i];
    }
  }
  std::vector<double> rhs(nodes * nodes);
  for (std::size_t i = 0; i < nodes; ++i)
    for (std::size_t j = 0; j < nodes; ++j) rhs[i * nodes + j] = values[i][j];
  const auto sol = lu_solve(std::move(v), nodes, std::move(rhs), nodes);  // sol(d, j)

  std::vector<std::vector<double>> table(dim + 1);
  for (std::size_t r = 0; r <= dim; ++r) {
    const std::size_t j = dim - r;  // power of w
    table[r].resize(r + 1);
    for (std::size_t d = 0; d <= r; ++d) table[r][d] = sol[d * nodes + j];
  }
  return SpectralTable(dim, std::move(table));
}

std::vector<double> casimirs(const SymMatrix& s, const SkewMatrix& n) {
  require_same_dim(s.size(), n.size(), "casimirs");
  const Matrix sm = s.matrix();
  const Matrix nm = n.matrix();
  const Matrix n2 = nm * nm;
  std::vector<double> out;
  Matrix p = Matrix::identity(s.size());
  for (std::size_t l = 0; l + 1 <= s.size(); l += 2) {
    out.push_back((sm * p).trace());
    p = p * n2;
  }
  return out;
}

bool orbit_membership(const SymMatrix& s, const SymMatrix& s0, const SkewMatrix& n0, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("orbit_membership: tol must be positive");
  const auto c = casimirs(s, n0);
  const auto c0 = casimirs(s0, n0);
  for (std::size_t i = 0; i < c.size(); ++i)
    if (std::abs(c[i] - c0[i]) > tol * std::max(1.0, std::abs(c0[i]))) return false;
  return true;
}

int integral_independence_rank(const SymMatrix& s, const SkewMatrix& n) {
  const Matrix sm = s.matrix();
  const Matrix nm = n.matrix();
  const SymmetrizerTable t(sm, nm, static_cast<int>(s.size()));
  std::vector<Matrix> fields;
  for (const auto idx : enumerate_indices(s.size())) fields.push_back(-commutator(t(idx.k - idx.l, idx.l), nm));
  return numerical_rank(fields);
}

}  // namespace bilax
