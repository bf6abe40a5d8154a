#include "bilax/symmetrizer.hpp"

#include <stdexcept>

namespace bilax {

SymmetrizerTable::SymmetrizerTable(Matrix a, Matrix b, int degree_cap)
    : a_(std::move(a)), b_(std::move(b)), cap_(degree_cap) {
  require_same_dim(a_.size(), b_.size(), "SymmetrizerTable");
  if (cap_ < 0) throw std::invalid_argument("SymmetrizerTable: negative degree cap");
  const std::size_t n = a_.size();
  table_.assign(static_cast<std::size_t>((cap_ + 1) * (cap_ + 2) / 2), Matrix(n));
  for (int d = 0; d <= cap_; ++d)
    for (int i = d; i >= 0; --i) {
      const int j = d - i;
      Matrix& out = table_[slot(i, j)];
      if (d == 0) {
        out = Matrix::identity(n);
        continue;
      }
      if (i > 0) out += a_ * table_[slot(i - 1, j)];
      if (j > 0) out += b_ * table_[slot(i, j - 1)];
    }
}

std::size_t SymmetrizerTable::slot(int i, int j) const {
  const int d = i + j;
  return static_cast<std::size_t>(d * (d + 1) / 2 + j);
}

const Matrix& SymmetrizerTable::operator()(int i, int j) const {
  if (i < 0 || j < 0 || i + j > cap_) throw std::out_of_range("SymmetrizerTable: index outside table");
  return table_[slot(i, j)];
}

Matrix sym(const Matrix& a, const Matrix& b, int i, int j) {
  if (i < 0 || j < 0) throw std::invalid_argument("sym: negative index");
  return SymmetrizerTable(a, b, i + j)(i, j);
}

double lemma_a_residual(const Matrix& a, const Matrix& b, int i, int j) {
  const SymmetrizerTable t(a, b, i + j + 1);
  return frobenius_norm(commutator(t(i, j + 1), a) + commutator(t(i + 1, j), b));
}

bool parity_check(const SymMatrix& s, const SkewMatrix& n, int i, int j) {
  const Matrix m = sym(s.matrix(), n.matrix(), i, j);
  const Matrix defect = (j % 2 == 0) ? m - m.transpose() : m + m.transpose();
  return 0.5 * frobenius_norm(defect) <= 1e-13 * std::max(1.0, frobenius_norm(m));
}

double cayley_hamilton_dependence(const Matrix& a, const Matrix& b) {
  const int n = static_cast<int>(a.size());
  const SymmetrizerTable t(a, b, n);
  std::vector<std::vector<double>> basis;
  for (int d = 0; d < n; ++d)
    for (int s = 0; s <= d; ++s) basis.push_back(vectorize(t(d - s, s)));
  double worst = 0.0;
  for (int l = 0; l <= n; ++l) {
    const auto target = vectorize(t(n - l, l));
    worst = std::max(worst, least_squares_residual(basis, target));
  }
  return worst;
}

WitnessPair witness_pair(std::size_t n, double c) {
  if (!(c > 0.0)) throw std::invalid_argument("witness_pair: c must be positive");
  WitnessPair w{Matrix(n), Matrix(n)};
  double p = 1.0;
  for (std::size_t r = 0; r < n; ++r) {
    p *= c;
    w.a(r, r) = p;
    if (r > 0) w.b(r, r - 1) = 1.0;
  }
  return w;
}

std::vector<Matrix> symmetrizers_below_degree(const Matrix& a, const Matrix& b) {
  const int n = static_cast<int>(a.size());
  const SymmetrizerTable t(a, b, std::max(n - 1, 0));
  std::vector<Matrix> out;
  for (int k = 0; k < n; ++k)
    for (int l = 0; l <= k; ++l) out.push_back(t(k - l, l));
  return out;
}

int generic_independence(const SymMatrix& s, const SkewMatrix& n) {
  return numerical_rank(symmetrizers_below_degree(s.matrix(), n.matrix()));
}

}  // namespace bilax
