#include "bilax/findim.hpp"

#include <vector>

namespace bilax::findim {

namespace {

void place(Matrix& big, std::size_t bi, std::size_t bj, const Matrix& blk, double scale = 1.0) {
  const std::size_t n = blk.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) big(bi * n + i, bj * n + j) = scale * blk(i, j);
}

}  // namespace

Matrix materialize(const GroupElem& g) {
  require_same_dim(g.S.size(), g.N.size(), "materialize");
  const std::size_t n = g.S.size();
  const Matrix s = g.S.matrix();
  Matrix out = Matrix::identity(3 * n);
  place(out, 0, 1, s);
  place(out, 1, 2, s);
  place(out, 0, 2, 0.5 * (s * s) + g.N.matrix());
  return out;
}

Matrix materialize(const AlgElem& x) {
  require_same_dim(x.S.size(), x.N.size(), "materialize");
  const std::size_t n = x.S.size();
  Matrix out(3 * n);
  place(out, 0, 1, x.S.matrix());
  place(out, 1, 2, x.S.matrix());
  place(out, 0, 2, x.N.matrix());
  return out;
}

Matrix materialize(const DualElem& a) {
  require_same_dim(a.S.size(), a.N.size(), "materialize");
  const std::size_t n = a.S.size();
  Matrix out(3 * n);
  place(out, 1, 0, a.S.matrix());
  place(out, 2, 1, a.S.matrix());
  place(out, 2, 0, a.N.matrix(), 2.0);
  return out;
}

GroupElem group_mul(const GroupElem& g1, const GroupElem& g2) {
  require_same_dim(g1.S.size(), g2.S.size(), "group_mul");
  const SkewMatrix half = SkewMatrix::project(commutator(g1.S.matrix(), g2.S.matrix())) * 0.5;
  return {g1.S + g2.S, g1.N + g2.N + half};
}

GroupElem group_inverse(const GroupElem& g) { return {g.S * -1.0, g.N * -1.0}; }

AlgElem alg_bracket(const AlgElem& x1, const AlgElem& x2) {
  require_same_dim(x1.S.size(), x2.S.size(), "alg_bracket");
  const std::size_t n = x1.S.size();
  return {SymMatrix(n), SkewMatrix::project(commutator(x1.S.matrix(), x2.S.matrix()))};
}

double pairing_f(const AlgElem& x, const DualElem& a) {
  require_same_dim(x.S.size(), a.S.size(), "pairing_f");
  return 2.0 * frobenius_dot(x.S.matrix(), a.S.matrix()) - 2.0 * frobenius_dot(x.N.matrix(), a.N.matrix());
}

DualElem coadjoint_f(const GroupElem& g, const DualElem& a) {
  require_same_dim(g.S.size(), a.S.size(), "coadjoint_f");
  return {a.S + SymMatrix::project(commutator(a.N.matrix(), g.S.matrix())), a.N};
}

DualElem coadjoint_infinitesimal(const AlgElem& x, const DualElem& a) {
  require_same_dim(x.S.size(), a.S.size(), "coadjoint_infinitesimal");
  return {SymMatrix::project(commutator(a.N.matrix(), x.S.matrix())), SkewMatrix(a.S.size())};
}

double hamiltonian_f(const DualElem& a) {
  const Matrix s = a.S.matrix();
  return (2.0 / 3.0) * (s * s * s).trace();
}

AlgElem gradient_f(const DualElem& a) {
  const Matrix s = a.S.matrix();
  return {SymMatrix::project(s * s), SkewMatrix(a.S.size())};
}

DualElem induced_flow_rhs(const DualElem& a) { return coadjoint_infinitesimal(gradient_f(a), a); }

int orbit_dimension_f(const SkewMatrix& n, double tol) {
  const std::size_t dim = n.size();
  const Matrix nm = n.matrix();
  std::vector<Matrix> images;
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      Matrix e(dim);
      e(i, j) = 1.0;
      e(j, i) = 1.0;
      images.push_back(commutator(nm, e));
    }
  }
  return numerical_rank(images, tol);
}

}  // namespace bilax::findim
