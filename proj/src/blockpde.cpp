#include "bilax/blockpde.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "bilax/flows.hpp"
#include "bilax/invariants.hpp"
#include "bilax/rk4.hpp"

namespace bilax::blockpde {

namespace {

using cplx = std::complex<double>;

Vec axpy(double s, const Vec& x, const Vec& y) {
  Vec out(y);
  for (std::size_t i = 0; i < x.size(); ++i) out[i] += s * x[i];
  return out;
}

Vec mat_vec(const SymMatrix& m, const Vec& x) {
  Vec out(x.size(), 0.0);
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j) out[i] += m(i, j) * x[j];
  return out;
}

void check_finite(double norm, const char* what) {
  if (!std::isfinite(norm) || norm > kBlowUpNorm) throw BlowUpError(std::string(what) + ": state blew up");
}

double uv_norm(const UV& x) { return std::sqrt(dot(x.u, x.u) + dot(x.v, x.v)); }

struct Pair {
  UV x;
  Pair& operator+=(const Pair& o) {
    x.u = axpy(1.0, o.x.u, x.u);
    x.v = axpy(1.0, o.x.v, x.v);
    return *this;
  }
};

Pair operator+(Pair a, const Pair& b) { return a += b; }

Pair operator*(double s, Pair a) {
  for (auto& e : a.x.u) e *= s;
  for (auto& e : a.x.v) e *= s;
  return a;
}

}  // namespace

double dot(const Vec& x, const Vec& y) {
  if (x.size() != y.size()) throw DimensionError("dot: size mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

BlockState BlockState::zero(std::size_t n) {
  if (n < 3) throw DimensionError("BlockState: n must be at least 3");
  BlockState s;
  s.u.assign(n - 2, 0.0);
  s.v.assign(n - 2, 0.0);
  s.B = SymMatrix(n - 2);
  return s;
}

BlockState& BlockState::operator+=(const BlockState& o) {
  if (u.size() != o.u.size()) throw DimensionError("BlockState +: size mismatch");
  a += o.a;
  b += o.b;
  c += o.c;
  u = axpy(1.0, o.u, u);
  v = axpy(1.0, o.v, v);
  B += o.B;
  return *this;
}

BlockState& BlockState::operator*=(double s) {
  a *= s;
  b *= s;
  c *= s;
  for (auto& x : u) x *= s;
  for (auto& x : v) x *= s;
  B *= s;
  return *this;
}

SymMatrix embed(const BlockState& bs) {
  const std::size_t n = bs.n();
  if (bs.v.size() != n - 2 || bs.B.size() != n - 2) throw DimensionError("embed: inconsistent block sizes");
  SymMatrix s(n);
  s.set(0, 0, bs.a);
  s.set(1, 0, bs.b);
  s.set(1, 1, bs.c);
  for (std::size_t i = 2; i < n; ++i) {
    s.set(i, 0, bs.u[i - 2]);
    s.set(i, 1, bs.v[i - 2]);
    for (std::size_t j = 2; j <= i; ++j) s.set(i, j, bs.B(i - 2, j - 2));
  }
  return s;
}

BlockState extract(const SymMatrix& s) {
  BlockState bs = BlockState::zero(s.size());
  bs.a = s(0, 0);
  bs.b = s(1, 0);
  bs.c = s(1, 1);
  for (std::size_t i = 2; i < s.size(); ++i) {
    bs.u[i - 2] = s(i, 0);
    bs.v[i - 2] = s(i, 1);
    for (std::size_t j = 2; j <= i; ++j) bs.B.set(i - 2, j - 2, s(i, j));
  }
  return bs;
}

SkewMatrix n0(std::size_t n) {
  if (n < 3) throw DimensionError("n0: n must be at least 3");
  SkewMatrix m(n);
  m.set(1, 0, -1.0);
  return m;
}

BlockState rhs_quadratic(const BlockState& bs) {
  const auto& [a, b, c, u, v, B] = bs;
  const Vec p1 = axpy(b, v, axpy(a, u, mat_vec(B, u)));
  const Vec p2 = axpy(c, v, axpy(b, u, mat_vec(B, v)));
  BlockState d = BlockState::zero(bs.n());
  const double p11 = a * a + b * b + dot(u, u);
  const double p12 = a * b + b * c + dot(u, v);
  const double p22 = b * b + c * c + dot(v, v);
  d.a = 2.0 * p12;
  d.b = p22 - p11;
  d.c = -d.a;
  d.u = p2;
  for (std::size_t i = 0; i < p1.size(); ++i) d.v[i] = -p1[i];
  return d;
}

BlockState rhs_cubic(const BlockState& bs) {
  const auto& [a, b, c, u, v, B] = bs;
  const double p11 = a * a + b * b + dot(u, u);
  const double p12 = a * b + b * c + dot(u, v);
  const double p22 = b * b + c * c + dot(v, v);
  const Vec p1 = axpy(b, v, axpy(a, u, mat_vec(B, u)));
  const Vec p2 = axpy(c, v, axpy(b, u, mat_vec(B, v)));
  const double q11 = a * p11 + b * p12 + dot(u, p1);
  const double q12 = a * p12 + b * p22 + dot(u, p2);
  const double q22 = b * p12 + c * p22 + dot(v, p2);
  const Vec q1 = axpy(p12, v, axpy(p11, u, mat_vec(B, p1)));
  const Vec q2 = axpy(p22, v, axpy(p12, u, mat_vec(B, p2)));
  BlockState d = BlockState::zero(bs.n());
  d.a = 2.0 * q12;
  d.b = q22 - q11;
  d.c = -d.a;
  d.u = q2;
  for (std::size_t i = 0; i < q1.size(); ++i) d.v[i] = -q1[i];
  return d;
}

BlockState rhs_cubic_printed(const BlockState& bs) {
  const auto& [a, b, c, u, v, B] = bs;
  const double uu = dot(u, u);
  const double uv = dot(u, v);
  const double vv = dot(v, v);
  const Vec bu = mat_vec(B, u);
  const Vec bv = mat_vec(B, v);
  const Vec bbu = mat_vec(B, bu);
  const Vec bbv = mat_vec(B, bv);
  const double r = a * a + b * b;
  BlockState d = BlockState::zero(bs.n());
  d.a = 2.0 * b * b * b + 2.0 * b * a * a + 2.0 * b * (vv + uu) + 2.0 * dot(u, bv);
  d.b = -2.0 * a * a * a - 2.0 * a * b * b - 2.0 * a * (uu + vv) + dot(v, bv) - dot(u, bu);
  d.c = -d.a;
  for (std::size_t i = 0; i < u.size(); ++i) {
    d.u[i] = r * v[i] + b * bu[i] - a * bv[i] + uv * u[i] + vv * v[i] + bbv[i];
    d.v[i] = -r * u[i] - a * bu[i] - b * bv[i] - uu * u[i] - uv * v[i] - bbu[i];
  }
  return d;
}

UV rhs_reduced(const Vec& u, const Vec& v, const SymMatrix& B, ReducedSign sign) {
  if (u.size() != v.size() || B.size() != u.size()) throw DimensionError("rhs_reduced: size mismatch");
  const double uu = dot(u, u);
  const double uv = dot(u, v);
  const double vv = dot(v, v);
  const Vec bbu = mat_vec(B, mat_vec(B, u));
  const Vec bbv = mat_vec(B, mat_vec(B, v));
  const double s = sign == ReducedSign::kConsistent ? -1.0 : 1.0;
  UV d{Vec(u.size()), Vec(u.size())};
  for (std::size_t i = 0; i < u.size(); ++i) {
    d.u[i] = uv * u[i] + vv * v[i] + bbv[i];
    d.v[i] = s * uu * u[i] - uv * v[i] - bbu[i];
  }
  return d;
}

PDEState& PDEState::operator+=(const PDEState& o) {
  if (K != o.K) throw DimensionError("PDEState +: mode count mismatch");
  for (std::size_t q = 0; q < u_hat.size(); ++q) {
    u_hat[q] += o.u_hat[q];
    v_hat[q] += o.v_hat[q];
  }
  return *this;
}

PDEState& PDEState::operator*=(double s) {
  for (auto& x : u_hat) x *= s;
  for (auto& x : v_hat) x *= s;
  return *this;
}

PDEState pde_from_modes(int K, Parity parity, const Vec& u_modes, const Vec& v_modes) {
  if (K < 4 || K % 2 != 0) throw std::invalid_argument("pde_from_modes: K must be even and at least 4");
  if (static_cast<int>(std::max(u_modes.size(), v_modes.size())) > K / 2) {
    throw std::invalid_argument("pde_from_modes: too many modes for K");
  }
  PDEState st{K, parity, std::vector<cplx>(K), std::vector<cplx>(K)};
  auto fill = [&](std::vector<cplx>& hat, const Vec& amp) {
    for (std::size_t m = 0; m < amp.size(); ++m) {
      const int k = static_cast<int>(m);
      if (k == 0) {
        if (parity == Parity::kEven) hat[0] = amp[0];
        continue;
      }
      // cos(kx) = (e^{ikx} + e^{−ikx})/2, sin(kx) = (e^{ikx} − e^{−ikx})/(2i).
      const cplx pos = parity == Parity::kEven ? cplx(amp[m] / 2, 0.0) : cplx(0.0, -amp[m] / 2);
      hat[k] = pos;
      hat[K - k] = std::conj(pos);
    }
  };
  fill(st.u_hat, u_modes);
  fill(st.v_hat, v_modes);
  return st;
}

double l2_inner(const std::vector<cplx>& f, const std::vector<cplx>& g) {
  if (f.size() != g.size()) throw DimensionError("l2_inner: size mismatch");
  double s = 0.0;
  for (std::size_t q = 0; q < f.size(); ++q) s += (f[q] * std::conj(g[q])).real();
  return 2.0 * std::numbers::pi * s;
}

double l2_energy(const PDEState& st) { return l2_inner(st.u_hat, st.u_hat) + l2_inner(st.v_hat, st.v_hat); }

double field_at(const std::vector<cplx>& f, double x) {
  const int K = static_cast<int>(f.size());
  cplx s = 0.0;
  for (int q = 0; q < K; ++q) s += f[q] * std::polar(1.0, PDEState::wavenumber(q, K) * x);
  return s.real();
}

double parity_leakage(const PDEState& st) {
  const int K = st.K;
  const double sign = st.parity == Parity::kEven ? -1.0 : 1.0;
  double m = 0.0;
  for (const auto* hat : {&st.u_hat, &st.v_hat}) {
    for (int q = 0; q < K; ++q) {
      const int mirror = (K - q) % K;
      m = std::max(m, 0.5 * std::abs((*hat)[q] + sign * (*hat)[mirror]));
    }
  }
  return m;
}

double reality_defect(const PDEState& st) {
  const int K = st.K;
  double m = 0.0;
  for (const auto* hat : {&st.u_hat, &st.v_hat})
    for (int q = 0; q < K; ++q) m = std::max(m, std::abs((*hat)[(K - q) % K] - std::conj((*hat)[q])));
  return m;
}

void project_real(PDEState& st) {
  const int K = st.K;
  for (auto* hat : {&st.u_hat, &st.v_hat}) {
    (*hat)[0] = (*hat)[0].real();
    (*hat)[K / 2] = 0.0;
    for (int q = 1; q < K / 2; ++q) {
      const cplx avg = 0.5 * ((*hat)[q] + std::conj((*hat)[K - q]));
      (*hat)[q] = avg;
      (*hat)[K - q] = std::conj(avg);
    }
  }
}

PDEState pde_rhs(const PDEState& st, ReducedSign sign) {
  // The nonlinearity only multiplies fields by scalars, so it never creates
  // new wavenumbers and needs no dealiasing.
  const double uu = l2_inner(st.u_hat, st.u_hat);
  const double uv = l2_inner(st.u_hat, st.v_hat);
  const double vv = l2_inner(st.v_hat, st.v_hat);
  const double s = sign == ReducedSign::kConsistent ? -1.0 : 1.0;
  PDEState d{st.K, st.parity, std::vector<cplx>(st.K), std::vector<cplx>(st.K)};
  for (int q = 0; q < st.K; ++q) {
    const double k = PDEState::wavenumber(q, st.K);
    d.u_hat[q] = uv * st.u_hat[q] + vv * st.v_hat[q] + k * k * st.v_hat[q];
    d.v_hat[q] = s * uu * st.u_hat[q] - uv * st.v_hat[q] - k * k * st.u_hat[q];
  }
  return d;
}

BlockRun integrate_block(const BlockState& bs0, BlockFlow flow, double t_final, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("integrate_block: step must be positive");
  const long steps = step_count(t_final, h);
  const double dt = steps > 0 ? t_final / static_cast<double>(steps) : 0.0;
  const SkewMatrix nm = n0(bs0.n());
  const auto cas0 = casimirs(embed(bs0), nm);
  const double trace0 = bs0.a + bs0.c;
  auto field = [flow](const BlockState& y) { return flow == BlockFlow::kQuadratic ? rhs_quadratic(y) : rhs_cubic(y); };
  BlockRun run{bs0};
  for (long i = 0; i < steps; ++i) {
    run.final_state = rk4_step(run.final_state, dt, field);
    const SymMatrix s = embed(run.final_state);
    check_finite(frobenius_norm(s.matrix()), "integrate_block");
    run.max_trace_drift = std::max(run.max_trace_drift, std::abs(run.final_state.a + run.final_state.c - trace0));
    const auto cas = casimirs(s, nm);
    for (std::size_t j = 0; j < cas.size(); ++j) {
      run.max_casimir_drift =
          std::max(run.max_casimir_drift, std::abs(cas[j] - cas0[j]) / std::max(1.0, std::abs(cas0[j])));
    }
  }
  return run;
}

ReducedRun integrate_reduced(const Vec& u0, const Vec& v0, const SymMatrix& B, double t_final, double h,
                             ReducedSign sign) {
  if (!(h > 0.0)) throw std::invalid_argument("integrate_reduced: step must be positive");
  const long steps = step_count(t_final, h);
  const double dt = steps > 0 ? t_final / static_cast<double>(steps) : 0.0;
  const double e0 = dot(u0, u0) + dot(v0, v0);
  auto field = [&](const Pair& y) { return Pair{rhs_reduced(y.x.u, y.x.v, B, sign)}; };
  Pair y{{u0, v0}};
  ReducedRun run;
  for (long i = 0; i < steps; ++i) {
    y = rk4_step(y, dt, field);
    check_finite(uv_norm(y.x), "integrate_reduced");
    const double e = dot(y.x.u, y.x.u) + dot(y.x.v, y.x.v);
    run.max_energy_drift = std::max(run.max_energy_drift, std::abs(e - e0) / std::max(1.0, e0));
  }
  run.final_state = y.x;
  return run;
}

PDERun integrate_pde(const PDEState& st0, double t_final, double h, ReducedSign sign) {
  if (!(h > 0.0)) throw std::invalid_argument("integrate_pde: step must be positive");
  const long steps = step_count(t_final, h);
  const double dt = steps > 0 ? t_final / static_cast<double>(steps) : 0.0;
  PDERun run{st0};
  project_real(run.final_state);
  const double e0 = l2_energy(run.final_state);
  run.max_parity_leakage = parity_leakage(run.final_state);
  auto field = [sign](const PDEState& y) { return pde_rhs(y, sign); };
  for (long i = 0; i < steps; ++i) {
    run.final_state = rk4_step(run.final_state, dt, field);
    project_real(run.final_state);
    const double e = l2_energy(run.final_state);
    check_finite(e, "integrate_pde");
    run.max_energy_drift = std::max(run.max_energy_drift, std::abs(e - e0) / std::max(1.0, e0));
    run.max_parity_leakage = std::max(run.max_parity_leakage, parity_leakage(run.final_state));
  }
  return run;
}

}  // namespace bilax::blockpde
