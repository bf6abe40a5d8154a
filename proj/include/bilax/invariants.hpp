#pragma once

// Conserved quantities of the hierarchy on loops S + zN: the Hamiltonians
// H_{kℓ}, their gradients and Lie–Poisson brackets, the spectral-curve
// coefficients I_{rk}, and the orbit Casimirs tr(S Nˡ).

#include <compare>
#include <string>
#include <vector>

#include "bilax/laurent.hpp"

namespace bilax {

/// Label (k, ℓ) of H_{kℓ}. Admissible for dimension n when 1 ≤ k ≤ n−1,
/// ℓ even and 0 ≤ ℓ ≤ min(k−1, n−2).
struct IntegralIndex {
  int k = 1;
  int l = 0;

  friend auto operator<=>(const IntegralIndex&, const IntegralIndex&) = default;
  std::string name() const { return "H_" + std::to_string(k) + "_" + std::to_string(l); }
};

bool is_admissible(IntegralIndex idx, std::size_t n);
/// Throws std::invalid_argument unless admissible.
void require_admissible(IntegralIndex idx, std::size_t n);

/// All admissible indices for dimension n (n ≥ 2), ordered by k then ℓ.
/// There are exactly ⌊n²/4⌋ of them.
std::vector<IntegralIndex> enumerate_indices(std::size_t n);

/// (1/(k+1)) · [z^ℓ] tr((S + zN)^{k+1}).
double hamiltonian(const BILoop& x, IntegralIndex idx);

/// (S + zN)^k z^{−(ℓ+1)}, window [−(ℓ+1), k−ℓ−1].
LaurentLoop gradient_loop(const BILoop& x, IntegralIndex idx);

/// (X, [dH₁, dH₂]_R), evaluated with rbracket and pairing.
double poisson_bracket(const BILoop& x, IntegralIndex a, IntegralIndex b);

/// Natural size of a bracket: max(1, ‖X‖·‖dH_a‖·‖dH_b‖) with max-coefficient norms.
double poisson_scale(const BILoop& x, IntegralIndex a, IntegralIndex b);

/// Coefficients of p(z, w) = det(S + zN − wI) = Σ_r Σ_d c_{r,d} z^d w^{n−r}.
/// I_{rk} = c_{r,2k}; the odd-d coefficients vanish in exact arithmetic.
class SpectralTable {
 public:
  SpectralTable(std::size_t n, std::vector<std::vector<double>> coeffs);

  std::size_t dim() const noexcept { return n_; }
  /// c_{r,d} for 0 ≤ d ≤ r ≤ n.
  double coefficient(int r, int d) const;
  /// I_{rk} for 0 ≤ k ≤ ⌊r/2⌋.
  double I(int r, int k) const;
  /// max |c_{r,d}| over odd d.
  double odd_residual() const;

 private:
  std::size_t n_;
  std::vector<std::vector<double>> coeffs_;
};

/// Evaluates det(S + zN − wI) with char_poly at n+1 Chebyshev nodes
/// z ∈ [−radius, radius] and interpolates each w-coefficient in z. Throws
/// std::invalid_argument when radius is not a usable node spread.
SpectralTable spectral_coeffs(const SymMatrix& s, const SkewMatrix& n, double node_radius = 1.0);

/// tr(S Nˡ) for even ℓ, 0 ≤ ℓ ≤ n−1.
std::vector<double> casimirs(const SymMatrix& s, const SkewMatrix& n);

/// All Casimirs of S agree with those of S0 (relative to max(1, |value|)) within tol.
bool orbit_membership(const SymMatrix& s, const SymMatrix& s0, const SkewMatrix& n0, double tol);

/// Rank of {−[sym_{k−ℓ,ℓ}(S, N), N]} over admissible indices.
int integral_independence_rank(const SymMatrix& s, const SkewMatrix& n);

}  // namespace bilax
