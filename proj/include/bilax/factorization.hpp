#pragma once

// Solving the hierarchy by factorization: sample γ(z) = exp(−t f(X₀(z), z))
// on the unit circle, split it as γ = g₊ g₋⁻¹ with g₋(∞) = I, and conjugate
// the initial loop by g₋.

#include <vector>

#include "bilax/invariants.hpp"

namespace bilax {

/// Samples of a matrix loop at z_m = e^{2πim/M} and its Fourier coefficients
/// Γ_j for −M/2 ≤ j ≤ M/2 (the Nyquist term is split evenly between ±M/2).
struct FourierLoop {
  std::size_t n = 0;
  int M = 0;
  std::vector<CMatrix> samples;
  std::vector<CMatrix> coeffs;
  double aliasing = 0.0;   ///< max ‖Γ_j‖ over the top eighth of the band
  double max_imag = 0.0;   ///< max |Im Γ_j| entrywise

  /// Zero outside [−M/2, M/2].
  CMatrix coeff(int j) const;
};

/// X₀(z)^k z^{−(ℓ+1)}. Throws std::invalid_argument for odd or negative ℓ, or k < 0.
LaurentLoop generator(const BILoop& x0, IntegralIndex idx);

/// max_j ‖(δ − σδ)_j‖_F, i.e. the failure of δ(z) + δ(−z)ᵀ = 0.
double sigma_residual(const LaurentLoop& x);

/// Scaling and squaring around a 13-term Taylor core at scaled norm ≤ 1/2.
CMatrix matrix_exp(const CMatrix& a);

inline constexpr double kAliasingTol = 1e-10;

/// Samples exp(−t·gen(z_m)) and transforms. M must be a power of two ≥ 8.
/// Throws ConvergenceError when the aliasing estimate exceeds kAliasingTol.
FourierLoop sample_exp(const LaurentLoop& gen, double t, int M);

/// max_m ‖γ(z_m) γ(−z_m)ᵀ − I‖_F.
double sample_symmetry_residual(const FourierLoop& g);

/// Turns of det γ(z_m) around 0 along the samples.
int winding_number(const FourierLoop& g);

struct BirkhoffOptions {
  double residual_tol = 1e-8;
  double tail_tol = 1e-10;
  bool escalate = true;  ///< double J while the tail exceeds tail_tol
};

struct BirkhoffFactors {
  LaurentLoop g_minus;  ///< window [−J, 0], constant term I
  LaurentLoop g_plus;   ///< window [0, M/2 − J]
  int J = 0;
  double residual = 0.0;    ///< max_m ‖γ − g₊ g₋⁻¹‖_F on samples
  double tail = 0.0;        ///< ‖c_J‖_F
  double max_imag = 0.0;    ///< largest imaginary part among the c_j before they are made real
  double sym_minus = 0.0;   ///< max_m ‖g₋(z)g₋(−z)ᵀ − I‖_F on samples
  double sym_plus = 0.0;
};

/// Solves Π₋(γ g₋) = 0 for g₋ = I + Σ_{j=1..J} c_j z^{−j} as one block
/// Toeplitz system, and sets g₊ = Π₊(γ g₋). J escalates by doubling up to
/// min(256, M/4) while the tail is too large. Throws SingularSystemError if
/// the system is singular and ConvergenceError if the residual exceeds
/// options.residual_tol.
BirkhoffFactors birkhoff(const FourierLoop& gamma, int J, const BirkhoffOptions& options = {});

struct FactorizationSolution {
  SymMatrix S;          ///< z⁰ coefficient of g₋(−z)ᵀ X₀ g₋
  SymMatrix S_plus;     ///< the same from g₊: G₀ᵀ S₀ G₀ with G₀ = g₊(0)
  double n_residual = 0.0;  ///< ‖z¹ coefficient − N‖_F
  double form_gap = 0.0;    ///< ‖S − S_plus‖_F
  double aliasing = 0.0;
  int winding = 0;
  double gamma_symmetry = 0.0;
  BirkhoffFactors factors;
};

inline constexpr int kDefaultSamples = 256;
inline constexpr int kDefaultToeplitzBlocks = 40;

/// S(t) along the flow of idx from X₀.
FactorizationSolution solve_by_factorization(const BILoop& x0, IntegralIndex idx, double t,
                                             int M = kDefaultSamples, int J = kDefaultToeplitzBlocks,
                                             const BirkhoffOptions& options = {});

}  // namespace bilax
