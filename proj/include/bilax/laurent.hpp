#pragma once

// Finite matrix Laurent series X(z) = Σ_{lo ≤ j ≤ hi} X_j z^j and the loop
// algebra structure built on them: the involution σ, the splitting Π₊/Π₋,
// the residue pairing, the R-bracket and the coadjoint action of factorized
// group elements.

#include <complex>
#include <span>
#include <stdexcept>
#include <vector>

#include "bilax/matcore.hpp"

namespace bilax {

/// Products whose degree span (hi − lo) would exceed the cap throw instead of
/// truncating.
inline constexpr int kDefaultMaxSpan = 64;

class WindowOverflow : public std::length_error {
 public:
  using std::length_error::length_error;
};

struct Window {
  int lo;
  int hi;
};

class LaurentLoop {
 public:
  LaurentLoop() = default;
  /// The zero loop of matrix dimension n.
  explicit LaurentLoop(std::size_t n);
  /// Coefficients for degrees lo, lo+1, ...; trimmed canonically.
  LaurentLoop(int lo, std::vector<Matrix> coeffs);

  static LaurentLoop monomial(Matrix c, int degree);
  static LaurentLoop constant(Matrix c) { return monomial(std::move(c), 0); }
  static LaurentLoop identity(std::size_t n) { return constant(Matrix::identity(n)); }

  std::size_t dim() const noexcept { return n_; }
  /// Degree window. The zero loop reports [0,0].
  int lo() const noexcept { return lo_; }
  int hi() const noexcept { return lo_ + static_cast<int>(coeffs_.size()) - 1; }
  int span() const noexcept { return hi() - lo(); }
  bool is_zero() const noexcept;

  /// X_j; the zero matrix outside the window.
  Matrix coeff(int j) const;
  std::span<const Matrix> coeffs() const noexcept { return coeffs_; }

  /// Keeps degrees inside [lo, hi].
  LaurentLoop restricted(int lo, int hi) const;

  CMatrix evaluate(std::complex<double> z) const;

  /// z ↦ X(−z)ᵀ.
  LaurentLoop reflect_transpose() const;

  /// max_j ‖X_j‖_F.
  double max_coeff_norm() const;

  LaurentLoop& operator+=(const LaurentLoop& o);
  LaurentLoop& operator-=(const LaurentLoop& o);
  LaurentLoop& operator*=(double s);
  friend LaurentLoop operator+(LaurentLoop a, const LaurentLoop& b) { return a += b; }
  friend LaurentLoop operator-(LaurentLoop a, const LaurentLoop& b) { return a -= b; }
  friend LaurentLoop operator-(LaurentLoop a) { return a *= -1.0; }
  friend LaurentLoop operator*(LaurentLoop a, double s) { return a *= s; }
  friend LaurentLoop operator*(double s, LaurentLoop a) { return a *= s; }
  friend LaurentLoop operator*(const LaurentLoop& a, const LaurentLoop& b);
  friend bool operator==(const LaurentLoop&, const LaurentLoop&) = default;

 private:
  void trim();

  std::size_t n_ = 0;
  int lo_ = 0;
  std::vector<Matrix> coeffs_;
};

/// The loop S + zN; lies in the dual parity pattern by construction.
struct BILoop {
  SymMatrix S;
  SkewMatrix N;

  std::size_t dim() const noexcept { return S.size(); }
  LaurentLoop loop() const;
};

/// Cauchy product; throws WindowOverflow if the result's span exceeds max_span.
LaurentLoop mul(const LaurentLoop& x, const LaurentLoop& y, int max_span = kDefaultMaxSpan);

/// Pointwise commutator X(z)Y(z) − Y(z)X(z).
LaurentLoop loop_commutator(const LaurentLoop& x, const LaurentLoop& y, int max_span = kDefaultMaxSpan);

/// Degrees ≥ 0.
LaurentLoop proj_plus(const LaurentLoop& x);
/// Degrees < 0.
LaurentLoop proj_minus(const LaurentLoop& x);

/// (σX)(z) = −X(−z)ᵀ: coefficient j ↦ (−1)^{j+1} X_jᵀ.
LaurentLoop sigma(const LaurentLoop& x);

/// Even coefficients skew and odd coefficients symmetric (the Lie algebra
/// pattern). Each coefficient's defect is measured relative to max(1, ‖X_j‖).
bool is_sigma_fixed(const LaurentLoop& x, double tol);
/// Even coefficients symmetric and odd coefficients skew (the dual pattern).
bool is_sigma_star(const LaurentLoop& x, double tol);

/// (X, Y) = Σ_j tr(X_j Y_{−j−1}).
double pairing(const LaurentLoop& x, const LaurentLoop& y);

/// R = Π₊ − Π₋.
LaurentLoop r_operator(const LaurentLoop& x);

/// [Π₊X, Π₊Y] − [Π₋X, Π₋Y].
LaurentLoop rbracket(const LaurentLoop& x, const LaurentLoop& y, int max_span = kDefaultMaxSpan);
/// ½([RX, Y] + [X, RY]); equal to rbracket.
LaurentLoop rbracket_via_r(const LaurentLoop& x, const LaurentLoop& y, int max_span = kDefaultMaxSpan);
/// [RX, RY] − R([RX, Y] + [X, RY]) + [X, Y], which vanishes identically.
LaurentLoop mybe_defect(const LaurentLoop& x, const LaurentLoop& y, int max_span = kDefaultMaxSpan);

inline constexpr int kExpTermCap = 200;

/// Σ_m Xᵐ/m! with every partial product restricted to the window. X must be
/// one-sided: strictly negative degrees, or degrees ≥ 0, so that restriction
/// commutes with the products. Terms are added until the next one has window
/// norm below 1e−14·max(1, ‖sum‖).
LaurentLoop exp_truncated(const LaurentLoop& x, Window window);

/// max over degrees in g's window of ‖(g(z)g(−z)ᵀ − I)_j‖_F.
double symmetry_residual(const LaurentLoop& g);

/// z ↦ g(−z)ᵀ, which inverts g when g(z)g(−z)ᵀ = I. Throws
/// std::invalid_argument if symmetry_residual(g) exceeds tol.
LaurentLoop loop_inverse_by_symmetry(const LaurentLoop& g, double tol = 1e-10);

/// Π₋(g₊⁻¹ X g₊) + Π₊(g₋⁻¹ X g₋) for the element g = g₊g₋⁻¹. g₊ must have
/// degrees ≥ 0; g₋ degrees ≤ 0 with constant term I.
LaurentLoop coadjoint(const LaurentLoop& g_plus, const LaurentLoop& g_minus, const LaurentLoop& x,
                      int max_span = kDefaultMaxSpan);

}  // namespace bilax
