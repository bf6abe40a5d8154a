#include "bilax/laurent.hpp"

#include <algorithm>
#include <string>

namespace bilax {

namespace {

bool all_zero(const Matrix& m) {
  return std::all_of(m.data().begin(), m.data().end(), [](double x) { return x == 0.0; });
}

double parity_defect(const Matrix& c, bool want_symmetric) {
  const Matrix d = want_symmetric ? c - c.transpose() : c + c.transpose();
  return 0.5 * frobenius_norm(d) / std::max(1.0, frobenius_norm(c));
}

bool parity_pattern(const LaurentLoop& x, double tol, bool even_symmetric) {
  if (tol < 0.0) throw std::invalid_argument("parity check: tol must be nonnegative");
  for (int j = x.lo(); j <= x.hi(); ++j) {
    const bool even = (j % 2 == 0);
    const bool want_symmetric = even ? even_symmetric : !even_symmetric;
    if (parity_defect(x.coeff(j), want_symmetric) > tol) return false;
  }
  return true;
}

}  // namespace

LaurentLoop::LaurentLoop(std::size_t n) : n_(n), lo_(0), coeffs_{Matrix(n)} {}

LaurentLoop::LaurentLoop(int lo, std::vector<Matrix> coeffs) : lo_(lo), coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw std::invalid_argument("LaurentLoop: at least one coefficient required");
  n_ = coeffs_.front().size();
  for (const auto& c : coeffs_) require_same_dim(n_, c.size(), "LaurentLoop");
  trim();
}

LaurentLoop LaurentLoop::monomial(Matrix c, int degree) {
  std::vector<Matrix> v;
  v.push_back(std::move(c));
  return LaurentLoop(degree, std::move(v));
}

void LaurentLoop::trim() {
  std::size_t first = 0;
  while (first < coeffs_.size() && all_zero(coeffs_[first])) ++first;
  if (first == coeffs_.size()) {
    lo_ = 0;
    coeffs_.assign(1, Matrix(n_));
    return;
  }
  std::size_t last = coeffs_.size();
  while (last > first && all_zero(coeffs_[last - 1])) --last;
  coeffs_ = std::vector<Matrix>(coeffs_.begin() + static_cast<std::ptrdiff_t>(first),
                                coeffs_.begin() + static_cast<std::ptrdiff_t>(last));
  lo_ += static_cast<int>(first);
}

bool LaurentLoop::is_zero() const noexcept { return coeffs_.size() == 1 && all_zero(coeffs_.front()); }

Matrix LaurentLoop::coeff(int j) const {
  if (j < lo() || j > hi()) return Matrix(n_);
  return coeffs_[static_cast<std::size_t>(j - lo_)];
}

LaurentLoop LaurentLoop::restricted(int lo, int hi) const {
  const int a = std::max(lo, this->lo());
  const int b = std::min(hi, this->hi());
  if (a > b) return LaurentLoop(n_);
  std::vector<Matrix> v;
  for (int j = a; j <= b; ++j) v.push_back(coeff(j));
  return LaurentLoop(a, std::move(v));
}

CMatrix LaurentLoop::evaluate(std::complex<double> z) const {
  // Horner in z from the top degree, then scale by z^lo.
  CMatrix acc(n_);
  for (int j = hi(); j >= lo(); --j) {
    acc *= z;
    acc += to_complex(coeffs_[static_cast<std::size_t>(j - lo_)]);
  }
  acc *= std::pow(z, lo_);
  return acc;
}

LaurentLoop LaurentLoop::reflect_transpose() const {
  std::vector<Matrix> v;
  v.reserve(coeffs_.size());
  for (int j = lo(); j <= hi(); ++j) {
    Matrix t = coeff(j).transpose();
    if (j % 2 != 0) t *= -1.0;
    v.push_back(std::move(t));
  }
  return LaurentLoop(lo_, std::move(v));
}

double LaurentLoop::max_coeff_norm() const {
  double m = 0.0;
  for (const auto& c : coeffs_) m = std::max(m, frobenius_norm(c));
  return m;
}

LaurentLoop& LaurentLoop::operator+=(const LaurentLoop& o) {
  require_same_dim(n_, o.n_, "LaurentLoop +");
  const int a = std::min(lo(), o.lo());
  const int b = std::max(hi(), o.hi());
  std::vector<Matrix> v;
  v.reserve(static_cast<std::size_t>(b - a + 1));
  for (int j = a; j <= b; ++j) v.push_back(coeff(j) + o.coeff(j));
  *this = LaurentLoop(a, std::move(v));
  return *this;
}

LaurentLoop& LaurentLoop::operator-=(const LaurentLoop& o) { return *this += -o; }

LaurentLoop& LaurentLoop::operator*=(double s) {
  for (auto& c : coeffs_) c *= s;
  trim();
  return *this;
}

LaurentLoop operator*(const LaurentLoop& a, const LaurentLoop& b) { return mul(a, b); }

LaurentLoop BILoop::loop() const {
  std::vector<Matrix> v{S.matrix(), N.matrix()};
  return LaurentLoop(0, std::move(v));
}

LaurentLoop mul(const LaurentLoop& x, const LaurentLoop& y, int max_span) {
  require_same_dim(x.dim(), y.dim(), "LaurentLoop mul");
  if (x.is_zero() || y.is_zero()) return LaurentLoop(x.dim());
  const int lo = x.lo() + y.lo();
  const int hi = x.hi() + y.hi();
  if (hi - lo > max_span) {
    throw WindowOverflow("LaurentLoop mul: degree span " + std::to_string(hi - lo) + " exceeds cap " +
                         std::to_string(max_span));
  }
  std::vector<Matrix> v(static_cast<std::size_t>(hi - lo + 1), Matrix(x.dim()));
  const auto xc = x.coeffs();
  const auto yc = y.coeffs();
  for (std::size_t i = 0; i < xc.size(); ++i)
    for (std::size_t j = 0; j < yc.size(); ++j) v[i + j] += xc[i] * yc[j];
  return LaurentLoop(lo, std::move(v));
}

LaurentLoop loop_commutator(const LaurentLoop& x, const LaurentLoop& y, int max_span) {
  return mul(x, y, max_span) - mul(y, x, max_span);
}

LaurentLoop proj_plus(const LaurentLoop& x) { return x.restricted(0, std::max(x.hi(), 0)); }

LaurentLoop proj_minus(const LaurentLoop& x) { return x.restricted(std::min(x.lo(), -1), -1); }

LaurentLoop sigma(const LaurentLoop& x) { return -x.reflect_transpose(); }

bool is_sigma_fixed(const LaurentLoop& x, double tol) { return parity_pattern(x, tol, /*even_symmetric=*/false); }

bool is_sigma_star(const LaurentLoop& x, double tol) { return parity_pattern(x, tol, /*even_symmetric=*/true); }

double pairing(const LaurentLoop& x, const LaurentLoop& y) {
  require_same_dim(x.dim(), y.dim(), "pairing");
  double s = 0.0;
  for (int j = x.lo(); j <= x.hi(); ++j) {
    const int k = -j - 1;
    if (k < y.lo() || k > y.hi()) continue;
    // tr(AB) = Σ_{i,l} A_il B_li
    const Matrix a = x.coeff(j);
    const Matrix b = y.coeff(k);
    const std::size_t n = a.size();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t l = 0; l < n; ++l) s += a(i, l) * b(l, i);
  }
  return s;
}

LaurentLoop r_operator(const LaurentLoop& x) { return proj_plus(x) - proj_minus(x); }

LaurentLoop rbracket(const LaurentLoop& x, const LaurentLoop& y, int max_span) {
  return loop_commutator(proj_plus(x), proj_plus(y), max_span) -
         loop_commutator(proj_minus(x), proj_minus(y), max_span);
}

LaurentLoop rbracket_via_r(const LaurentLoop& x, const LaurentLoop& y, int max_span) {
  return 0.5 * (loop_commutator(r_operator(x), y, max_span) + loop_commutator(x, r_operator(y), max_span));
}

LaurentLoop mybe_defect(const LaurentLoop& x, const LaurentLoop& y, int max_span) {
  const LaurentLoop rx = r_operator(x);
  const LaurentLoop ry = r_operator(y);
  return loop_commutator(rx, ry, max_span) -
         r_operator(loop_commutator(rx, y, max_span) + loop_commutator(x, ry, max_span)) +
         loop_commutator(x, y, max_span);
}

LaurentLoop exp_truncated(const LaurentLoop& x, Window window) {
  if (window.lo > window.hi) throw std::invalid_argument("exp_truncated: empty window");
  const bool negative = x.is_zero() || x.hi() < 0;
  const bool nonnegative = x.is_zero() || x.lo() >= 0;
  if (!negative && !nonnegative) {
    throw std::invalid_argument("exp_truncated: exponent must be strictly negative or nonnegative in degree");
  }
  const std::size_t n = x.dim();
  const int span_cap = (window.hi - window.lo) + std::max(x.span(), 0) + 1;
  LaurentLoop term = LaurentLoop::identity(n).restricted(window.lo, window.hi);
  LaurentLoop sum = term;
  for (int m = 1; m <= kExpTermCap; ++m) {
    term = mul(term, x, span_cap).restricted(window.lo, window.hi) * (1.0 / m);
    if (term.is_zero()) return sum;
    sum += term;
    if (term.max_coeff_norm() < 1e-14 * std::max(1.0, sum.max_coeff_norm())) return sum;
  }
  throw ConvergenceError("exp_truncated: series did not converge within the term cap");
}

double symmetry_residual(const LaurentLoop& g) {
  const LaurentLoop prod = mul(g, g.reflect_transpose(), 2 * g.span() + 1);
  const Matrix id = Matrix::identity(g.dim());
  double r = 0.0;
  for (int j = g.lo(); j <= g.hi(); ++j) {
    Matrix c = prod.coeff(j);
    if (j == 0) c -= id;
    r = std::max(r, frobenius_norm(c));
  }
  if (g.lo() > 0 || g.hi() < 0) r = std::max(r, frobenius_norm(prod.coeff(0) - id));
  return r;
}

LaurentLoop loop_inverse_by_symmetry(const LaurentLoop& g, double tol) {
  const double r = symmetry_residual(g);
  if (r > tol) {
    throw std::invalid_argument("loop_inverse_by_symmetry: g(z)g(-z)^T != I (residual " + std::to_string(r) + ")");
  }
  return g.reflect_transpose();
}

LaurentLoop coadjoint(const LaurentLoop& g_plus, const LaurentLoop& g_minus, const LaurentLoop& x, int max_span) {
  require_same_dim(g_plus.dim(), x.dim(), "coadjoint");
  require_same_dim(g_minus.dim(), x.dim(), "coadjoint");
  if (!g_plus.is_zero() && g_plus.lo() < 0) throw std::invalid_argument("coadjoint: g_plus has negative degrees");
  if (g_minus.hi() > 0) throw std::invalid_argument("coadjoint: g_minus has positive degrees");
  if (frobenius_norm(g_minus.coeff(0) - Matrix::identity(x.dim())) > 1e-12) {
    throw std::invalid_argument("coadjoint: g_minus must have constant term I");
  }
  const LaurentLoop gp_inv = loop_inverse_by_symmetry(g_plus);
  const LaurentLoop gm_inv = loop_inverse_by_symmetry(g_minus);
  const LaurentLoop minus_part = proj_minus(mul(mul(gp_inv, x, max_span), g_plus, max_span));
  const LaurentLoop plus_part = proj_plus(mul(mul(gm_inv, x, max_span), g_minus, max_span));
  return minus_part + plus_part;
}

}  // namespace bilax
