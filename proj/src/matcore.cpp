#include "bilax/matcore.hpp"

#include <numeric>

namespace bilax {

CMatrix to_complex(const Matrix& a) {
  CMatrix c(a.size());
  for (std::size_t i = 0; i < a.data().size(); ++i) c.data()[i] = a.data()[i];
  return c;
}

// ---------------------------------------------------------------------------
// SymMatrix / SkewMatrix

SymMatrix SymMatrix::project(const Matrix& a) {
  SymMatrix s(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j <= i; ++j) s.lower_[index(i, j)] = 0.5 * (a(i, j) + a(j, i));
  return s;
}

SymMatrix SymMatrix::checked(const Matrix& a, double tol) {
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (std::abs(a(i, j) - a(j, i)) > tol) throw std::invalid_argument("SymMatrix: input is not symmetric");
  return project(a);
}

SymMatrix SymMatrix::diagonal(std::span<const double> d) {
  SymMatrix s(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) s.set(i, i, d[i]);
  return s;
}

SymMatrix SymMatrix::identity(std::size_t n) {
  SymMatrix s(n);
  for (std::size_t i = 0; i < n; ++i) s.set(i, i, 1.0);
  return s;
}

Matrix SymMatrix::matrix() const {
  Matrix m(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      const double v = lower_[index(i, j)];
      m(i, j) = v;
      m(j, i) = v;
    }
  return m;
}

SymMatrix& SymMatrix::operator+=(const SymMatrix& o) {
  require_same_dim(n_, o.n_, "SymMatrix +");
  for (std::size_t i = 0; i < lower_.size(); ++i) lower_[i] += o.lower_[i];
  return *this;
}
SymMatrix& SymMatrix::operator-=(const SymMatrix& o) {
  require_same_dim(n_, o.n_, "SymMatrix -");
  for (std::size_t i = 0; i < lower_.size(); ++i) lower_[i] -= o.lower_[i];
  return *this;
}
SymMatrix& SymMatrix::operator*=(double s) {
  for (auto& x : lower_) x *= s;
  return *this;
}

SkewMatrix SkewMatrix::project(const Matrix& a) {
  SkewMatrix k(a.size());
  for (std::size_t i = 1; i < a.size(); ++i)
    for (std::size_t j = 0; j < i; ++j) k.lower_[index(i, j)] = 0.5 * (a(i, j) - a(j, i));
  return k;
}

SkewMatrix SkewMatrix::checked(const Matrix& a, double tol) {
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j <= i; ++j)
      if (std::abs(a(i, j) + a(j, i)) > tol) throw std::invalid_argument("SkewMatrix: input is not skew-symmetric");
  return project(a);
}

void SkewMatrix::set(std::size_t i, std::size_t j, double v) {
  if (i == j) throw std::invalid_argument("SkewMatrix::set: diagonal entries are zero");
  if (i > j) {
    lower_[index(i, j)] = v;
  } else {
    lower_[index(j, i)] = -v;
  }
}

Matrix SkewMatrix::matrix() const {
  Matrix m(n_);
  for (std::size_t i = 1; i < n_; ++i)
    for (std::size_t j = 0; j < i; ++j) {
      const double v = lower_[index(i, j)];
      m(i, j) = v;
      m(j, i) = -v;
    }
  return m;
}

SkewMatrix& SkewMatrix::operator+=(const SkewMatrix& o) {
  require_same_dim(n_, o.n_, "SkewMatrix +");
  for (std::size_t i = 0; i < lower_.size(); ++i) lower_[i] += o.lower_[i];
  return *this;
}
SkewMatrix& SkewMatrix::operator-=(const SkewMatrix& o) {
  require_same_dim(n_, o.n_, "SkewMatrix -");
  for (std::size_t i = 0; i < lower_.size(); ++i) lower_[i] -= o.lower_[i];
  return *this;
}
SkewMatrix& SkewMatrix::operator*=(double s) {
  for (auto& x : lower_) x *= s;
  return *this;
}

CartanParts cartan_split(const Matrix& a) { return {SkewMatrix::project(a), SymMatrix::project(a)}; }

// ---------------------------------------------------------------------------
// Characteristic polynomial

std::vector<double> char_poly(const Matrix& a) {
  const std::size_t n = a.size();
  if (n == 0) throw DimensionError("char_poly: empty matrix");
  // Monic det(wI − A) = Σ m_j w^j.
  std::vector<double> monic(n + 1, 0.0);
  monic[n] = 1.0;
  Matrix mk(n);
  const Matrix id = Matrix::identity(n);
  for (std::size_t k = 1; k <= n; ++k) {
    mk = a * mk + monic[n - k + 1] * id;
    monic[n - k] = -(a * mk).trace() / static_cast<double>(k);
  }
  const double sign = (n % 2 == 0) ? 1.0 : -1.0;
  for (auto& c : monic) c *= sign;
  return monic;
}

Matrix evaluate_polynomial(std::span<const double> coeffs, const Matrix& a) {
  const std::size_t n = a.size();
  Matrix acc(n);
  const Matrix id = Matrix::identity(n);
  for (std::size_t j = coeffs.size(); j-- > 0;) acc = acc * a + coeffs[j] * id;
  return acc;
}

// ---------------------------------------------------------------------------
// Symmetric eigenvalues

namespace {

double off_diagonal_norm(const Matrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j)
      if (i != j) s += a(i, j) * a(i, j);
  return std::sqrt(s);
}

}  // namespace

std::vector<double> eigenvalues_sym(const SymMatrix& s) {
  Matrix a = s.matrix();
  const std::size_t n = a.size();
  const double target = 1e-12 * frobenius_norm(a);
  int sweep = 0;
  while (off_diagonal_norm(a) > target) {
    if (sweep++ >= kJacobiSweepCap) throw ConvergenceError("eigenvalues_sym: Jacobi sweep cap exceeded");
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(1.0 + theta * theta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double sn = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - sn * akq;
          a(k, q) = sn * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - sn * aqk;
          a(q, k) = sn * apk + c * aqk;
        }
      }
  }
  std::vector<double> ev(n);
  for (std::size_t i = 0; i < n; ++i) ev[i] = a(i, i);
  std::sort(ev.begin(), ev.end());
  return ev;
}

// ---------------------------------------------------------------------------
// Singular values, rank, least squares

std::vector<double> singular_values(std::vector<std::vector<double>> cols) {
  const std::size_t m = cols.size();
  if (m == 0) return {};
  const std::size_t rows = cols.front().size();
  for (const auto& c : cols)
    if (c.size() != rows) throw DimensionError("singular_values: ragged columns");

  auto dot = [rows](const std::vector<double>& x, const std::vector<double>& y) {
    double s = 0.0;
    for (std::size_t i = 0; i < rows; ++i) s += x[i] * y[i];
    return s;
  };

  for (int sweep = 0; sweep < 100; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < m; ++p)
      for (std::size_t q = p + 1; q < m; ++q) {
        const double alpha = dot(cols[p], cols[p]);
        const double beta = dot(cols[q], cols[q]);
        const double gamma = dot(cols[p], cols[q]);
        if (gamma == 0.0 || std::abs(gamma) <= 1e-15 * std::sqrt(alpha * beta)) continue;
        rotated = true;
        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        for (std::size_t i = 0; i < rows; ++i) {
          const double x = cols[p][i];
          const double y = cols[q][i];
          cols[p][i] = c * x - s * y;
          cols[q][i] = s * x + c * y;
        }
      }
    if (!rotated) break;
  }

  std::vector<double> sv(m);
  for (std::size_t j = 0; j < m; ++j) sv[j] = std::sqrt(dot(cols[j], cols[j]));
  std::sort(sv.begin(), sv.end(), std::greater<>());
  return sv;
}

std::vector<double> vectorize(const Matrix& a) { return {a.data().begin(), a.data().end()}; }

int numerical_rank(std::span<const Matrix> vectors, double tol) {
  if (vectors.empty()) return 0;
  if (!(tol > 0.0)) throw std::invalid_argument("numerical_rank: tol must be positive");
  const std::size_t n = vectors.front().size();
  double max_norm = 0.0;
  std::vector<double> norms;
  norms.reserve(vectors.size());
  for (const auto& v : vectors) {
    require_same_dim(n, v.size(), "numerical_rank");
    norms.push_back(frobenius_norm(v));
    max_norm = std::max(max_norm, norms.back());
  }
  if (max_norm == 0.0) return 0;
  std::vector<std::vector<double>> cols;
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    if (norms[i] <= tol * max_norm) continue;
    auto c = vectorize(vectors[i]);
    for (auto& x : c) x /= norms[i];
    cols.push_back(std::move(c));
  }
  const auto sv = singular_values(std::move(cols));
  if (sv.empty()) return 0;
  return static_cast<int>(std::count_if(sv.begin(), sv.end(), [&](double s) { return s > tol * sv.front(); }));
}

double least_squares_residual(std::span<const std::vector<double>> basis, std::span<const double> target) {
  const std::size_t rows = target.size();
  double tnorm = 0.0;
  for (double x : target) tnorm += x * x;
  tnorm = std::sqrt(tnorm);
  if (tnorm == 0.0) return 0.0;

  std::vector<std::vector<double>> cols;
  for (const auto& b : basis) {
    if (b.size() != rows) throw DimensionError("least_squares_residual: ragged basis");
    double nb = 0.0;
    for (double x : b) nb += x * x;
    nb = std::sqrt(nb);
    if (nb == 0.0) continue;
    std::vector<double> c(b);
    for (auto& x : c) x /= nb;
    cols.push_back(std::move(c));
  }
  std::vector<double> rhs(target.begin(), target.end());

  // Householder QR with column pivoting; stop at numerical rank.
  const std::size_t p = cols.size();
  std::vector<double> colnorm2(p);
  for (std::size_t j = 0; j < p; ++j)
    colnorm2[j] = std::inner_product(cols[j].begin(), cols[j].end(), cols[j].begin(), 0.0);
  std::size_t rank = 0;
  for (std::size_t k = 0; k < std::min(p, rows); ++k) {
    std::size_t piv = k;
    double best = -1.0;
    for (std::size_t j = k; j < p; ++j) {
      double s = 0.0;
      for (std::size_t i = k; i < rows; ++i) s += cols[j][i] * cols[j][i];
      colnorm2[j] = s;
      if (s > best) {
        best = s;
        piv = j;
      }
    }
    if (std::sqrt(best) <= 1e-13) break;
    std::swap(cols[k], cols[piv]);
    auto& x = cols[k];
    const double alpha = (x[k] >= 0.0 ? -1.0 : 1.0) * std::sqrt(best);
    std::vector<double> v(rows, 0.0);
    for (std::size_t i = k; i < rows; ++i) v[i] = x[i];
    v[k] -= alpha;
    double vnorm2 = 0.0;
    for (std::size_t i = k; i < rows; ++i) vnorm2 += v[i] * v[i];
    auto reflect = [&](std::vector<double>& y) {
      if (vnorm2 == 0.0) return;
      double d = 0.0;
      for (std::size_t i = k; i < rows; ++i) d += v[i] * y[i];
      const double f = 2.0 * d / vnorm2;
      for (std::size_t i = k; i < rows; ++i) y[i] -= f * v[i];
    };
    for (std::size_t j = k; j < p; ++j) reflect(cols[j]);
    reflect(rhs);
    rank = k + 1;
  }
  double res = 0.0;
  for (std::size_t i = rank; i < rows; ++i) res += rhs[i] * rhs[i];
  return std::sqrt(res) / tnorm;
}

}  // namespace bilax
