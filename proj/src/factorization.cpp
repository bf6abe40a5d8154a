#include "bilax/factorization.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace bilax {

namespace {

using cplx = std::complex<double>;

bool is_power_of_two(int m) { return m > 0 && (m & (m - 1)) == 0; }

double max_abs_imag(const CMatrix& a) {
  double m = 0.0;
  for (const auto& x : a.data()) m = std::max(m, std::abs(x.imag()));
  return m;
}

Matrix real_part(const CMatrix& a) {
  Matrix r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) r(i, j) = a(i, j).real();
  return r;
}

cplx determinant(const CMatrix& a) {
  const std::size_t n = a.size();
  std::vector<cplx> m(a.data().begin(), a.data().end());
  cplx det = 1.0;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(m[r * n + col]) > std::abs(m[piv * n + col])) piv = r;
    if (m[piv * n + col] == cplx{}) return 0.0;
    if (piv != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m[col * n + j], m[piv * n + j]);
      det = -det;
    }
    det *= m[col * n + col];
    for (std::size_t r = col + 1; r < n; ++r) {
      const cplx f = m[r * n + col] / m[col * n + col];
      for (std::size_t j = col; j < n; ++j) m[r * n + j] -= f * m[col * n + j];
    }
  }
  return det;
}

cplx unit_root(int m, int M) { return std::polar(1.0, 2.0 * std::numbers::pi * m / M); }

double pair_symmetry(const std::vector<CMatrix>& values) {
  // values[m] = g(z_m); −z_m is sample m + M/2.
  const std::size_t M = values.size();
  const CMatrix id = CMatrix::identity(values.front().size());
  double r = 0.0;
  for (std::size_t m = 0; m < M; ++m) {
    const CMatrix& opp = values[(m + M / 2) % M];
    r = std::max(r, frobenius_norm(values[m] * opp.transpose() - id));
  }
  return r;
}

std::vector<CMatrix> evaluate_on_circle(const LaurentLoop& g, int M) {
  std::vector<CMatrix> v;
  v.reserve(static_cast<std::size_t>(M));
  for (int m = 0; m < M; ++m) v.push_back(g.evaluate(unit_root(m, M)));
  return v;
}

BirkhoffFactors factor_once(const FourierLoop& gamma, int J) {
  const std::size_t n = gamma.n;
  const std::size_t dim = static_cast<std::size_t>(J) * n;
  std::vector<cplx> a(dim * dim);
  std::vector<cplx> b(dim * n);
  // Block row r is degree m = −(r+1); block column c is unknown c_{c+1}.
  for (int r = 0; r < J; ++r) {
    for (int c = 0; c < J; ++c) {
      const CMatrix blk = gamma.coeff(c - r);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a[(r * n + i) * dim + c * n + j] = blk(i, j);
    }
    const CMatrix rhs = gamma.coeff(-(r + 1));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) b[(r * n + i) * n + j] = -rhs(i, j);
  }
  const std::vector<cplx> x = lu_solve(std::move(a), dim, std::move(b), n);

  BirkhoffFactors f;
  f.J = J;
  std::vector<CMatrix> c(static_cast<std::size_t>(J) + 1, CMatrix(n));
  c[0] = CMatrix::identity(n);
  for (int j = 1; j <= J; ++j) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t l = 0; l < n; ++l) c[j](i, l) = x[((j - 1) * n + i) * n + l];
    f.max_imag = std::max(f.max_imag, max_abs_imag(c[j]));
  }
  f.tail = frobenius_norm(real_part(c[J]));

  std::vector<Matrix> minus;
  for (int j = J; j >= 0; --j) minus.push_back(real_part(c[j]));
  f.g_minus = LaurentLoop(-J, std::move(minus));

  const int j_plus = gamma.M / 2 - J;
  std::vector<Matrix> plus;
  for (int m = 0; m <= j_plus; ++m) {
    CMatrix p(n);
    for (int j = 0; j <= J; ++j) p += gamma.coeff(m + j) * c[j];
    plus.push_back(real_part(p));
  }
  f.g_plus = LaurentLoop(0, std::move(plus));

  const auto gm = evaluate_on_circle(f.g_minus, gamma.M);
  const auto gp = evaluate_on_circle(f.g_plus, gamma.M);
  for (std::size_t m = 0; m < gm.size(); ++m) {
    f.residual = std::max(f.residual, frobenius_norm(gamma.samples[m] - gp[m] * inverse(gm[m])));
  }
  f.sym_minus = pair_symmetry(gm);
  f.sym_plus = pair_symmetry(gp);
  return f;
}

}  // namespace

CMatrix FourierLoop::coeff(int j) const {
  if (j < -M / 2 || j > M / 2) return CMatrix(n);
  return coeffs[static_cast<std::size_t>(j + M / 2)];
}

LaurentLoop generator(const BILoop& x0, IntegralIndex idx) {
  if (idx.k < 0) throw std::invalid_argument("generator: k must be nonnegative");
  if (idx.l < 0 || idx.l % 2 != 0) throw std::invalid_argument("generator: l must be even and nonnegative");
  const LaurentLoop x = x0.loop();
  LaurentLoop p = LaurentLoop::identity(x0.dim());
  for (int i = 0; i < idx.k; ++i) p = mul(p, x, idx.k + 1);
  return LaurentLoop(p.lo() - (idx.l + 1), std::vector<Matrix>(p.coeffs().begin(), p.coeffs().end()));
}

double sigma_residual(const LaurentLoop& x) { return (x - sigma(x)).max_coeff_norm(); }

CMatrix matrix_exp(const CMatrix& a) {
  const double norm = frobenius_norm(a);
  int squarings = 0;
  if (norm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
  const CMatrix scaled = a * cplx(std::ldexp(1.0, -squarings));
  CMatrix term = CMatrix::identity(a.size());
  CMatrix sum = term;
  for (int k = 1; k <= 13; ++k) {
    term = term * scaled * cplx(1.0 / k);
    sum += term;
  }
  for (int s = 0; s < squarings; ++s) sum = sum * sum;
  return sum;
}

FourierLoop sample_exp(const LaurentLoop& gen, double t, int M) {
  if (!is_power_of_two(M) || M < 8) throw std::invalid_argument("sample_exp: M must be a power of two >= 8");
  const std::size_t n = gen.dim();
  FourierLoop g;
  g.n = n;
  g.M = M;
  g.samples.reserve(static_cast<std::size_t>(M));
  for (int m = 0; m < M; ++m) g.samples.push_back(matrix_exp(gen.evaluate(unit_root(m, M)) * cplx(-t)));

  std::vector<cplx> twiddle(static_cast<std::size_t>(M));
  for (int m = 0; m < M; ++m) twiddle[m] = unit_root(-m, M);
  g.coeffs.assign(static_cast<std::size_t>(M) + 1, CMatrix(n));
  for (int q = 0; q < M; ++q) {
    CMatrix acc(n);
    for (int m = 0; m < M; ++m) acc += g.samples[m] * twiddle[(static_cast<long>(q) * m) % M];
    acc *= cplx(1.0 / M);
    if (q == M / 2) {
      g.coeffs.front() = acc * cplx(0.5);
      g.coeffs.back() = acc * cplx(0.5);
    } else {
      const int j = q < M / 2 ? q : q - M;
      g.coeffs[static_cast<std::size_t>(j + M / 2)] = acc;
    }
  }
  for (int j = -M / 2; j <= M / 2; ++j) {
    const CMatrix c = g.coeff(j);
    g.max_imag = std::max(g.max_imag, max_abs_imag(c));
    if (std::abs(j) >= 3 * M / 8) g.aliasing = std::max(g.aliasing, frobenius_norm(c));
  }
  if (g.aliasing > kAliasingTol) {
    throw ConvergenceError("sample_exp: aliasing estimate " + std::to_string(g.aliasing) + " too large; increase M");
  }
  return g;
}

double sample_symmetry_residual(const FourierLoop& g) { return pair_symmetry(g.samples); }

int winding_number(const FourierLoop& g) {
  double turns = 0.0;
  cplx prev = determinant(g.samples.back());
  for (const auto& s : g.samples) {
    const cplx d = determinant(s);
    if (d == cplx{} || prev == cplx{}) throw SingularSystemError("winding_number: singular sample");
    turns += std::arg(d / prev);
    prev = d;
  }
  return static_cast<int>(std::lround(turns / (2.0 * std::numbers::pi)));
}

BirkhoffFactors birkhoff(const FourierLoop& gamma, int J, const BirkhoffOptions& options) {
  if (J < 1 || J >= gamma.M / 2) throw std::invalid_argument("birkhoff: need 1 <= J < M/2");
  const int cap = std::min(256, gamma.M / 4);
  BirkhoffFactors f = factor_once(gamma, J);
  while (options.escalate && f.tail > options.tail_tol && f.J < cap) f = factor_once(gamma, std::min(2 * f.J, cap));
  if (f.residual > options.residual_tol) {
    throw ConvergenceError("birkhoff: residual " + std::to_string(f.residual) + " above threshold");
  }
  return f;
}

FactorizationSolution solve_by_factorization(const BILoop& x0, IntegralIndex idx, double t, int M, int J,
                                             const BirkhoffOptions& options) {
  const FourierLoop gamma = sample_exp(generator(x0, idx), t, M);
  FactorizationSolution sol;
  sol.aliasing = gamma.aliasing;
  sol.winding = winding_number(gamma);
  sol.gamma_symmetry = sample_symmetry_residual(gamma);
  sol.factors = birkhoff(gamma, J, options);

  const LaurentLoop& gm = sol.factors.g_minus;
  const int span = 2 * gm.span() + 2;
  const LaurentLoop xt = mul(mul(gm.reflect_transpose(), x0.loop(), span), gm, span);
  sol.S = SymMatrix::project(xt.coeff(0));
  sol.n_residual = frobenius_norm(xt.coeff(1) - x0.N.matrix());
  const Matrix g0 = sol.factors.g_plus.coeff(0);
  sol.S_plus = SymMatrix::project(g0.transpose() * x0.S.matrix() * g0);
  sol.form_gap = frobenius_norm((sol.S - sol.S_plus).matrix());
  return sol;
}

}  // namespace bilax
