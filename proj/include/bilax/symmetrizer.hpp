#pragma once

// sym_{ij}(A, B): the sum of all words with i letters A and j letters B,
// and executable forms of the identities it satisfies.

#include <vector>

#include "bilax/matcore.hpp"

namespace bilax {

/// All sym_{ij}(A, B) with i + j ≤ degree_cap, built eagerly by
/// sym_{i,j} = A·sym_{i−1,j} + B·sym_{i,j−1}.
class SymmetrizerTable {
 public:
  SymmetrizerTable(Matrix a, Matrix b, int degree_cap);

  /// Throws std::out_of_range for i + j > degree_cap or negative indices.
  const Matrix& operator()(int i, int j) const;
  int degree_cap() const noexcept { return cap_; }
  std::size_t dim() const noexcept { return a_.size(); }

 private:
  std::size_t slot(int i, int j) const;

  Matrix a_;
  Matrix b_;
  int cap_;
  std::vector<Matrix> table_;
};

Matrix sym(const Matrix& a, const Matrix& b, int i, int j);

/// ‖[sym_{i,j+1}, A] + [sym_{i+1,j}, B]‖_F.
double lemma_a_residual(const Matrix& a, const Matrix& b, int i, int j);

/// sym_{ij}(S, N) is symmetric for j even and skew for j odd, to 1e−13
/// relative to max(1, ‖sym_{ij}‖).
bool parity_check(const SymMatrix& s, const SkewMatrix& n, int i, int j);

/// Worst relative least-squares residual, over ℓ = 0..n, of sym_{n−ℓ,ℓ}(A, B)
/// against span{sym_{r,s} : r + s < n}.
double cayley_hamilton_dependence(const Matrix& a, const Matrix& b);

struct WitnessPair {
  Matrix a;  ///< diag(c, c², …, cⁿ)
  Matrix b;  ///< ones on the subdiagonal r − s = 1
};

WitnessPair witness_pair(std::size_t n, double c);

/// {sym_{k−ℓ,ℓ}(A, B) : 0 ≤ ℓ ≤ k ≤ n − 1}, ordered by k then ℓ; n(n+1)/2 items.
std::vector<Matrix> symmetrizers_below_degree(const Matrix& a, const Matrix& b);

/// numerical_rank of symmetrizers_below_degree(S, N) at the default tolerance.
int generic_independence(const SymMatrix& s, const SkewMatrix& n);

}  // namespace bilax
