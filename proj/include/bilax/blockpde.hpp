#pragma once

// Rank-two N: the symmetric matrix is split into a 2×2 corner (a, b, c), two
// coupling vectors (u, v) and a trailing block B, and the flows Ṡ = [N, S²]
// and Ṡ = [N, S³] become systems in these pieces. With a = b = c = 0 and B
// replaced by i∂ₓ on 2π-periodic functions the cubic flow turns into an
// integro-differential system, integrated here in Fourier space.

#include <complex>
#include <vector>

#include "bilax/matcore.hpp"

namespace bilax::blockpde {

using Vec = std::vector<double>;

double dot(const Vec& x, const Vec& y);

struct BlockState {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  Vec u;
  Vec v;
  SymMatrix B;

  /// Zero state for matrix dimension n ≥ 3.
  static BlockState zero(std::size_t n);
  std::size_t n() const noexcept { return u.size() + 2; }

  BlockState& operator+=(const BlockState& o);
  BlockState& operator*=(double s);
  friend BlockState operator+(BlockState x, const BlockState& y) { return x += y; }
  friend BlockState operator*(double s, BlockState x) { return x *= s; }
  friend BlockState operator*(BlockState x, double s) { return x *= s; }
};

/// S = [a, b, uᵀ; b, c, vᵀ; u, v, B].
SymMatrix embed(const BlockState& bs);
BlockState extract(const SymMatrix& s);
/// N with N₁₂ = 1, N₂₁ = −1 and zeros elsewhere.
SkewMatrix n0(std::size_t n);

/// [N, Sᵖ] read back in block form: ȧ = 2Q₁₂, ḃ = Q₂₂ − Q₁₁, ċ = −ȧ,
/// u̇ = Q_{·2}, v̇ = −Q_{·1}, Ḃ = 0 with Q = Sᵖ.
BlockState rhs_quadratic(const BlockState& bs);
BlockState rhs_cubic(const BlockState& bs);

/// The cubic system in its commonly displayed form. It drops every term
/// proportional to a + c, so it is exact only when c = −a.
BlockState rhs_cubic_printed(const BlockState& bs);

enum class ReducedSign {
  kConsistent,  ///< v̇ contains −⟨u,u⟩u; conserves ⟨u,u⟩ + ⟨v,v⟩
  kAsPrinted,   ///< v̇ contains +⟨u,u⟩u
};

struct UV {
  Vec u;
  Vec v;
};

/// u̇ = ⟨u,v⟩u + ⟨v,v⟩v + B²v, v̇ = ∓⟨u,u⟩u − ⟨u,v⟩v − B²u.
UV rhs_reduced(const Vec& u, const Vec& v, const SymMatrix& B, ReducedSign sign = ReducedSign::kConsistent);

enum class Parity { kEven, kOdd };

/// Real 2π-periodic fields by their Fourier coefficients. Slot q holds
/// wavenumber q for q < K/2 and q − K above; the Nyquist slot stays zero.
struct PDEState {
  int K = 0;
  Parity parity = Parity::kEven;
  std::vector<std::complex<double>> u_hat;
  std::vector<std::complex<double>> v_hat;

  static int wavenumber(int q, int K) { return q < K / 2 ? q : q - K; }

  PDEState& operator+=(const PDEState& o);
  PDEState& operator*=(double s);
  friend PDEState operator+(PDEState x, const PDEState& y) { return x += y; }
  friend PDEState operator*(double s, PDEState x) { return x *= s; }
};

/// u = Σ u_m cos(mx) (even) or Σ u_m sin(mx) (odd), m = 1, 2, …; index 0 of
/// the amplitude lists is the constant mode and is ignored for odd parity.
PDEState pde_from_modes(int K, Parity parity, const Vec& u_modes, const Vec& v_modes);

/// ∫₀^{2π} f g dx from Fourier coefficients.
double l2_inner(const std::vector<std::complex<double>>& f, const std::vector<std::complex<double>>& g);
double l2_energy(const PDEState& st);  ///< ⟨u,u⟩ + ⟨v,v⟩

/// Field value at x.
double field_at(const std::vector<std::complex<double>>& f, double x);

/// Largest coefficient of the wrong parity component in u or v.
double parity_leakage(const PDEState& st);
/// Largest |f̂_{−k} − conj f̂_k|.
double reality_defect(const PDEState& st);
/// Restores f̂_{−k} = conj f̂_k and zeroes the Nyquist slot.
void project_real(PDEState& st);

/// u_t = ⟨u,v⟩u + ⟨v,v⟩v − v_xx, v_t = ∓⟨u,u⟩u − ⟨u,v⟩v + u_xx.
PDEState pde_rhs(const PDEState& st, ReducedSign sign = ReducedSign::kConsistent);

enum class BlockFlow { kQuadratic, kCubic };

struct BlockRun {
  BlockState final_state;
  double max_trace_drift = 0.0;    ///< |(a + c)(t) − (a + c)(0)|
  double max_casimir_drift = 0.0;  ///< casimirs of (embed, n0), relative to max(1, |value|)
};

BlockRun integrate_block(const BlockState& bs0, BlockFlow flow, double t_final, double h);

struct ReducedRun {
  UV final_state;
  double max_energy_drift = 0.0;  ///< |E(t) − E(0)| / max(1, E(0))
};

ReducedRun integrate_reduced(const Vec& u0, const Vec& v0, const SymMatrix& B, double t_final, double h,
                             ReducedSign sign = ReducedSign::kConsistent);

struct PDERun {
  PDEState final_state;
  double max_energy_drift = 0.0;
  double max_parity_leakage = 0.0;
};

PDERun integrate_pde(const PDEState& st0, double t_final, double h, ReducedSign sign = ReducedSign::kConsistent);

}  // namespace bilax::blockpde
