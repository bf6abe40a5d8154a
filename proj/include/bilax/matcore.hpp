#pragma once

// Dense real/complex matrices, symmetric and skew-symmetric storage types,
// and the small set of linear-algebra kernels the rest of the library needs
// (characteristic polynomials, Jacobi eigenvalues, numerical rank, LU).

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

namespace bilax {

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SingularSystemError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline void require_same_dim(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw DimensionError(std::string(what) + ": dimension mismatch (" + std::to_string(a) +
                         " vs " + std::to_string(b) + ")");
  }
}

/// Square n×n matrix, row-major.
template <typename T>
class BasicMatrix {
 public:
  using value_type = T;

  BasicMatrix() = default;
  explicit BasicMatrix(std::size_t n) : n_(n), data_(n * n, T{}) {}
  BasicMatrix(std::size_t n, std::vector<T> data) : n_(n), data_(std::move(data)) {
    if (data_.size() != n * n) throw DimensionError("BasicMatrix: data size is not n*n");
  }
  BasicMatrix(std::initializer_list<std::initializer_list<T>> rows) : n_(rows.size()) {
    data_.reserve(n_ * n_);
    for (const auto& r : rows) {
      if (r.size() != n_) throw DimensionError("BasicMatrix: ragged initializer");
      data_.insert(data_.end(), r.begin(), r.end());
    }
  }

  static BasicMatrix identity(std::size_t n) {
    BasicMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T{1};
    return m;
  }
  static BasicMatrix zero(std::size_t n) { return BasicMatrix(n); }

  std::size_t size() const noexcept { return n_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

  std::span<T> data() noexcept { return data_; }
  std::span<const T> data() const noexcept { return data_; }

  BasicMatrix transpose() const {
    BasicMatrix t(n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  T trace() const {
    T s{};
    for (std::size_t i = 0; i < n_; ++i) s += (*this)(i, i);
    return s;
  }

  bool is_finite() const {
    return std::all_of(data_.begin(), data_.end(), [](const T& x) {
      if constexpr (std::is_floating_point_v<T>) {
        return std::isfinite(x);
      } else {
        return std::isfinite(x.real()) && std::isfinite(x.imag());
      }
    });
  }

  BasicMatrix& operator+=(const BasicMatrix& o) {
    require_same_dim(n_, o.n_, "matrix +");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
  }
  BasicMatrix& operator-=(const BasicMatrix& o) {
    require_same_dim(n_, o.n_, "matrix -");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
  }
  BasicMatrix& operator*=(T s) {
    for (auto& x : data_) x *= s;
    return *this;
  }
  BasicMatrix& operator/=(T s) {
    for (auto& x : data_) x /= s;
    return *this;
  }

  friend BasicMatrix operator+(BasicMatrix a, const BasicMatrix& b) { return a += b; }
  friend BasicMatrix operator-(BasicMatrix a, const BasicMatrix& b) { return a -= b; }
  friend BasicMatrix operator-(BasicMatrix a) {
    for (auto& x : a.data_) x = -x;
    return a;
  }
  friend BasicMatrix operator*(BasicMatrix a, T s) { return a *= s; }
  friend BasicMatrix operator*(T s, BasicMatrix a) { return a *= s; }
  friend BasicMatrix operator/(BasicMatrix a, T s) { return a /= s; }

  friend BasicMatrix operator*(const BasicMatrix& a, const BasicMatrix& b) {
    require_same_dim(a.n_, b.n_, "matrix *");
    const std::size_t n = a.n_;
    BasicMatrix c(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k) {
        const T aik = a(i, k);
        for (std::size_t j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }

  friend bool operator==(const BasicMatrix& a, const BasicMatrix& b) = default;

 private:
  std::size_t n_ = 0;
  std::vector<T> data_;
};

using Matrix = BasicMatrix<double>;
using CMatrix = BasicMatrix<std::complex<double>>;

template <typename T>
double frobenius_norm(const BasicMatrix<T>& a) {
  double s = 0.0;
  for (const auto& x : a.data()) s += std::norm(x);
  return std::sqrt(s);
}

/// Trace inner product tr(AᵀB).
inline double frobenius_dot(const Matrix& a, const Matrix& b) {
  require_same_dim(a.size(), b.size(), "frobenius_dot");
  double s = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i) s += a.data()[i] * b.data()[i];
  return s;
}

CMatrix to_complex(const Matrix& a);

/// Symmetric matrix stored as its packed lower triangle.
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(std::size_t n) : n_(n), lower_(n * (n + 1) / 2, 0.0) {}

  /// Symmetric part (A+Aᵀ)/2.
  static SymMatrix project(const Matrix& a);
  /// Throws if A is not symmetric within tol (absolute, entrywise).
  static SymMatrix checked(const Matrix& a, double tol = 0.0);
  static SymMatrix diagonal(std::span<const double> d);
  static SymMatrix identity(std::size_t n);

  std::size_t size() const noexcept { return n_; }
  double operator()(std::size_t i, std::size_t j) const { return lower_[index(i, j)]; }
  void set(std::size_t i, std::size_t j, double v) { lower_[index(i, j)] = v; }

  Matrix matrix() const;
  std::span<const double> packed() const noexcept { return lower_; }

  SymMatrix& operator+=(const SymMatrix& o);
  SymMatrix& operator-=(const SymMatrix& o);
  SymMatrix& operator*=(double s);
  friend SymMatrix operator+(SymMatrix a, const SymMatrix& b) { return a += b; }
  friend SymMatrix operator-(SymMatrix a, const SymMatrix& b) { return a -= b; }
  friend SymMatrix operator*(SymMatrix a, double s) { return a *= s; }
  friend SymMatrix operator*(double s, SymMatrix a) { return a *= s; }
  friend bool operator==(const SymMatrix&, const SymMatrix&) = default;

 private:
  static std::size_t index(std::size_t i, std::size_t j) {
    if (i < j) std::swap(i, j);
    return i * (i + 1) / 2 + j;
  }
  std::size_t n_ = 0;
  std::vector<double> lower_;
};

/// Skew-symmetric matrix stored as its packed strict lower triangle.
class SkewMatrix {
 public:
  SkewMatrix() = default;
  explicit SkewMatrix(std::size_t n) : n_(n), lower_(n * (n - (n > 0 ? 1 : 0)) / 2, 0.0) {}

  /// Skew part (A−Aᵀ)/2.
  static SkewMatrix project(const Matrix& a);
  static SkewMatrix checked(const Matrix& a, double tol = 0.0);

  std::size_t size() const noexcept { return n_; }
  double operator()(std::size_t i, std::size_t j) const {
    if (i == j) return 0.0;
    return i > j ? lower_[index(i, j)] : -lower_[index(j, i)];
  }
  /// Sets entry (i,j) and, implicitly, (j,i) = −v. i ≠ j.
  void set(std::size_t i, std::size_t j, double v);

  Matrix matrix() const;
  std::span<const double> packed() const noexcept { return lower_; }

  SkewMatrix& operator+=(const SkewMatrix& o);
  SkewMatrix& operator-=(const SkewMatrix& o);
  SkewMatrix& operator*=(double s);
  friend SkewMatrix operator+(SkewMatrix a, const SkewMatrix& b) { return a += b; }
  friend SkewMatrix operator-(SkewMatrix a, const SkewMatrix& b) { return a -= b; }
  friend SkewMatrix operator*(SkewMatrix a, double s) { return a *= s; }
  friend SkewMatrix operator*(double s, SkewMatrix a) { return a *= s; }
  friend bool operator==(const SkewMatrix&, const SkewMatrix&) = default;

 private:
  static std::size_t index(std::size_t i, std::size_t j) { return i * (i - 1) / 2 + j; }
  std::size_t n_ = 0;
  std::vector<double> lower_;
};

template <typename T>
BasicMatrix<T> commutator(const BasicMatrix<T>& a, const BasicMatrix<T>& b) {
  require_same_dim(a.size(), b.size(), "commutator");
  return a * b - b * a;
}

struct CartanParts {
  SkewMatrix skew;
  SymMatrix sym;
};

/// A = K + P with K = (A−Aᵀ)/2 ∈ 𝔨 and P = (A+Aᵀ)/2 ∈ 𝔭.
CartanParts cartan_split(const Matrix& a);

/// Coefficients c[0..n] of det(A − wI) = Σ c_j w^j (ascending; c[n] = (−1)ⁿ),
/// by Faddeev–LeVerrier.
std::vector<double> char_poly(const Matrix& a);

/// p(A) for ascending coefficients (Horner).
Matrix evaluate_polynomial(std::span<const double> coeffs, const Matrix& a);

inline constexpr int kJacobiSweepCap = 100;

/// Ascending eigenvalues by cyclic Jacobi rotations. Terminates once the
/// off-diagonal Frobenius norm is ≤ 1e−12·‖S‖; throws ConvergenceError after
/// kJacobiSweepCap sweeps.
std::vector<double> eigenvalues_sym(const SymMatrix& s);

/// Singular values (descending) of the matrix whose columns are given, by
/// one-sided Jacobi (Hestenes) orthogonalization.
std::vector<double> singular_values(std::vector<std::vector<double>> columns);

inline constexpr double kDefaultRankTol = 1e-8;

/// Rank of the span of the given matrices under the trace inner product:
/// each is vectorized and normalized, then singular values above
/// tol·(largest) are counted. Inputs whose norm is below tol times the largest
/// input norm count as zero.
int numerical_rank(std::span<const Matrix> vectors, double tol = kDefaultRankTol);

/// ‖target − Π target‖ / ‖target‖ where Π is the orthogonal projector onto
/// span(basis) (Householder QR least squares). Returns 0 for a zero target.
double least_squares_residual(std::span<const std::vector<double>> basis,
                              std::span<const double> target);

std::vector<double> vectorize(const Matrix& a);

/// Solves A X = B for square A (dim×dim, row-major) and B (dim×rhs_cols),
/// by LU with partial pivoting. Throws SingularSystemError on a pivot below
/// 1e−14 times the largest entry of A.
template <typename T>
std::vector<T> lu_solve(std::vector<T> a, std::size_t dim, std::vector<T> b, std::size_t rhs_cols) {
  if (a.size() != dim * dim || b.size() != dim * rhs_cols) {
    throw DimensionError("lu_solve: inconsistent sizes");
  }
  double scale = 0.0;
  for (const auto& x : a) scale = std::max(scale, std::abs(x));
  const double tiny = 1e-14 * (scale > 0.0 ? scale : 1.0);
  for (std::size_t col = 0; col < dim; ++col) {
    std::size_t piv = col;
    double best = std::abs(a[col * dim + col]);
    for (std::size_t r = col + 1; r < dim; ++r) {
      const double v = std::abs(a[r * dim + col]);
      if (v > best) {
        best = v;
        piv = r;
      }
    }
    if (best <= tiny) throw SingularSystemError("lu_solve: matrix is numerically singular");
    if (piv != col) {
      for (std::size_t j = 0; j < dim; ++j) std::swap(a[col * dim + j], a[piv * dim + j]);
      for (std::size_t j = 0; j < rhs_cols; ++j) std::swap(b[col * rhs_cols + j], b[piv * rhs_cols + j]);
    }
    const T inv = T{1} / a[col * dim + col];
    for (std::size_t r = col + 1; r < dim; ++r) {
      const T f = a[r * dim + col] * inv;
      if (f == T{}) continue;
      for (std::size_t j = col; j < dim; ++j) a[r * dim + j] -= f * a[col * dim + j];
      for (std::size_t j = 0; j < rhs_cols; ++j) b[r * rhs_cols + j] -= f * b[col * rhs_cols + j];
    }
  }
  for (std::size_t col = dim; col-- > 0;) {
    const T inv = T{1} / a[col * dim + col];
    for (std::size_t j = 0; j < rhs_cols; ++j) {
      T acc = b[col * rhs_cols + j];
      for (std::size_t k = col + 1; k < dim; ++k) acc -= a[col * dim + k] * b[k * rhs_cols + j];
      b[col * rhs_cols + j] = acc * inv;
    }
  }
  return b;
}

template <typename T>
BasicMatrix<T> inverse(const BasicMatrix<T>& a) {
  const std::size_t n = a.size();
  auto id = BasicMatrix<T>::identity(n);
  std::vector<T> av(a.data().begin(), a.data().end());
  std::vector<T> bv(id.data().begin(), id.data().end());
  return BasicMatrix<T>(n, lu_solve(std::move(av), n, std::move(bv), n));
}

}  // namespace bilax
