#include "bilax/flows.hpp"

#include <algorithm>

#include "bilax/rk4.hpp"
#include "bilax/symmetrizer.hpp"

namespace bilax {

SymMatrix vector_field(const SymMatrix& s, const SkewMatrix& n, IntegralIndex idx) {
  require_admissible(idx, s.size());
  const Matrix nm = n.matrix();
  const Matrix p = sym(s.matrix(), nm, idx.k - idx.l, idx.l);
  return SymMatrix::project(commutator(nm, p));
}

SymMatrix vector_field_shifted(const SymMatrix& s, const SkewMatrix& n, IntegralIndex idx) {
  require_admissible(idx, s.size());
  const Matrix sm = s.matrix();
  const Matrix p = sym(sm, n.matrix(), idx.k - idx.l - 1, idx.l + 1);
  return SymMatrix::project(commutator(p, sm));
}

SymMatrix bi_rhs(const SymMatrix& s, const SkewMatrix& n) {
  require_same_dim(s.size(), n.size(), "bi_rhs");
  const Matrix sm = s.matrix();
  const Matrix nm = n.matrix();
  return SymMatrix::project(commutator(Matrix(nm * sm + sm * nm), sm));
}

namespace {

void guard(const SymMatrix& s) {
  const Matrix m = s.matrix();
  if (!m.is_finite() || frobenius_norm(m) > kBlowUpNorm) throw BlowUpError("integrate: state blew up");
}

template <typename OnStep>
SymMatrix run_flow(const SymMatrix& s0, const SkewMatrix& n, IntegralIndex idx, double t_final, double h,
                   OnStep&& on_step) {
  if (!(h > 0.0)) throw std::invalid_argument("integrate: step must be positive");
  if (!(t_final >= 0.0)) throw std::invalid_argument("integrate: t_final must be nonnegative");
  require_same_dim(s0.size(), n.size(), "integrate");
  require_admissible(idx, s0.size());
  const long steps = step_count(t_final, h);
  const double dt = steps > 0 ? t_final / static_cast<double>(steps) : 0.0;
  SymMatrix s = s0;
  auto field = [&](const SymMatrix& y) { return vector_field(y, n, idx); };
  for (long i = 1; i <= steps; ++i) {
    // The packed storage keeps S exactly symmetric after every stage.
    s = rk4_step(s, dt, field);
    guard(s);
    on_step(dt * static_cast<double>(i), s);
  }
  return s;
}

}  // namespace

Trajectory integrate(const SymMatrix& s0, const SkewMatrix& n, IntegralIndex idx, double t_final, double h) {
  Trajectory traj{{0.0}, {s0}, n, idx};
  run_flow(s0, n, idx, t_final, h, [&](double t, const SymMatrix& s) {
    traj.times.push_back(t);
    traj.states.push_back(s);
  });
  return traj;
}

SymMatrix flow_endpoint(const SymMatrix& s0, const SkewMatrix& n, IntegralIndex idx, double t_final, double h) {
  return run_flow(s0, n, idx, t_final, h, [](double, const SymMatrix&) {});
}

double DriftReport::max_drift() const {
  double m = 0.0;
  for (const auto& e : entries) m = std::max(m, e.max_drift);
  return m;
}

const DriftEntry* DriftReport::find(const std::string& name) const {
  for (const auto& e : entries)
    if (e.name == name) return &e;
  return nullptr;
}

std::vector<DriftEntry> monitored_values(const SymMatrix& s, const SkewMatrix& n) {
  std::vector<DriftEntry> out;
  const BILoop x{s, n};
  for (const auto idx : enumerate_indices(s.size())) out.push_back({idx.name(), hamiltonian(x, idx), 0.0});
  const auto cas = casimirs(s, n);
  for (std::size_t i = 0; i < cas.size(); ++i) out.push_back({"casimir_" + std::to_string(2 * i), cas[i], 0.0});
  const auto spec = spectral_coeffs(s, n);
  for (int r = 0; r <= static_cast<int>(s.size()); ++r)
    for (int k = 0; 2 * k <= r; ++k)
      out.push_back({"I_" + std::to_string(r) + "_" + std::to_string(k), spec.I(r, k), 0.0});
  const auto ev = eigenvalues_sym(s);
  for (std::size_t i = 0; i < ev.size(); ++i) out.push_back({"eig_" + std::to_string(i), ev[i], 0.0});
  return out;
}

DriftReport drift_report(const Trajectory& traj) {
  if (traj.states.empty()) throw std::invalid_argument("drift_report: empty trajectory");
  DriftReport rep{monitored_values(traj.states.front(), traj.N)};
  for (std::size_t i = 1; i < traj.states.size(); ++i) {
    const auto now = monitored_values(traj.states[i], traj.N);
    for (std::size_t j = 0; j < now.size(); ++j) {
      auto& e = rep.entries[j];
      const double d = std::abs(now[j].initial - e.initial) / std::max(1.0, std::abs(e.initial));
      e.max_drift = std::max(e.max_drift, d);
    }
  }
  return rep;
}

double flow_commutation(const SymMatrix& s0, const SkewMatrix& n, IntegralIndex a, IntegralIndex b, double s,
                        double t, double h) {
  require_admissible(a, s0.size());
  require_admissible(b, s0.size());
  const SymMatrix ab = flow_endpoint(flow_endpoint(s0, n, b, t, h), n, a, s, h);
  const SymMatrix ba = flow_endpoint(flow_endpoint(s0, n, a, s, h), n, b, t, h);
  return frobenius_norm((ab - ba).matrix());
}

Matrix m_rhs(const Matrix& m, MEquationSign sign) {
  const Matrix mt = m.transpose();
  const Matrix inner = mt * m + m * mt + mt * mt;
  const double c = (sign == MEquationSign::kConsistent) ? -0.25 : 0.25;
  return c * commutator(inner, m);
}

MFlowResult integrate_m(const Matrix& m0, double t_final, double h, MEquationSign sign) {
  if (!(h > 0.0)) throw std::invalid_argument("integrate_m: step must be positive");
  const long steps = step_count(t_final, h);
  const double dt = steps > 0 ? t_final / static_cast<double>(steps) : 0.0;
  const Matrix skew0 = m0 - m0.transpose();
  MFlowResult res{m0, 0.0};
  auto field = [sign](const Matrix& y) { return m_rhs(y, sign); };
  for (long i = 0; i < steps; ++i) {
    res.final_state = rk4_step(res.final_state, dt, field);
    if (!res.final_state.is_finite() || frobenius_norm(res.final_state) > kBlowUpNorm) {
      throw BlowUpError("integrate_m: state blew up");
    }
    const Matrix skew = res.final_state - res.final_state.transpose();
    res.max_skew_drift = std::max(res.max_skew_drift, frobenius_norm(skew - skew0));
  }
  return res;
}

}  // namespace bilax
