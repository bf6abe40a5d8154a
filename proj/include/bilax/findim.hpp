#pragma once

// A 3n×3n unipotent matrix group carrying the same Lie–Poisson dynamics as
// the loop picture. Elements are stored as (S, N) block data; the full
// matrices are only built on request.

#include "bilax/matcore.hpp"

namespace bilax::findim {

/// [I, S, S²/2 + N; 0, I, S; 0, 0, I]
struct GroupElem {
  SymMatrix S;
  SkewMatrix N;
};

/// [0, S, N; 0, 0, S; 0, 0, 0]
struct AlgElem {
  SymMatrix S;
  SkewMatrix N;
};

/// [0, 0, 0; S, 0, 0; 2N, S, 0]
struct DualElem {
  SymMatrix S;
  SkewMatrix N;
};

Matrix materialize(const GroupElem& g);
Matrix materialize(const AlgElem& x);
Matrix materialize(const DualElem& a);

/// g(S, N)·g(T, M) = g(S + T, N + M + [S, T]/2).
GroupElem group_mul(const GroupElem& g1, const GroupElem& g2);
GroupElem group_inverse(const GroupElem& g);

/// [X(S₁, N₁), X(S₂, N₂)] = X(0, [S₁, S₂]).
AlgElem alg_bracket(const AlgElem& x1, const AlgElem& x2);

/// tr(X A) = 2 tr(S S̃) + 2 tr(N Ñ).
double pairing_f(const AlgElem& x, const DualElem& a);

/// Ad*_{g(T, M)} A(S, N) = A(S + [N, T], N), characterised by
/// pairing_f(X, Ad*_g A) = tr(g X g⁻¹ A).
DualElem coadjoint_f(const GroupElem& g, const DualElem& a);

/// Derivative of coadjoint_f along g(εT, ·): A([N, T], 0).
DualElem coadjoint_infinitesimal(const AlgElem& x, const DualElem& a);

/// (2/3) tr S³; the constant makes the induced flow match [N, S²] exactly.
double hamiltonian_f(const DualElem& a);

/// X(S², 0), the gradient of hamiltonian_f under pairing_f.
AlgElem gradient_f(const DualElem& a);

/// Lie–Poisson vector field of hamiltonian_f: A([N, S²], 0).
DualElem induced_flow_rhs(const DualElem& a);

/// Rank of T ↦ [N, T] on symmetric matrices: the coadjoint orbit dimension.
int orbit_dimension_f(const SkewMatrix& n, double tol = 1e-8);

}  // namespace bilax::findim
