#pragma once

// Hamiltonian vector fields of the H_{kℓ} hierarchy on S (N fixed), the
// Bloch–Iserles right-hand side, fixed-step RK4 integration and conservation
// monitoring.

#include <stdexcept>
#include <string>
#include <vector>

#include "bilax/invariants.hpp"

namespace bilax {

class BlowUpError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kBlowUpNorm = 1e8;

/// Ṡ = −[sym_{k−ℓ,ℓ}(S, N), N].
SymMatrix vector_field(const SymMatrix& s, const SkewMatrix& n, IntegralIndex idx);
/// Ṡ = [sym_{k−ℓ−1,ℓ+1}(S, N), S]; the same field written the other way.
SymMatrix vector_field_shifted(const SymMatrix& s, const SkewMatrix& n, IntegralIndex idx);

/// [NS + SN, S].
SymMatrix bi_rhs(const SymMatrix& s, const SkewMatrix& n);

struct Trajectory {
  std::vector<double> times;
  std::vector<SymMatrix> states;
  SkewMatrix N;
  IntegralIndex idx;
};

/// Fixed-step RK4 on the field of idx; the step is t_final / ceil(t_final/h).
/// S is re-symmetrized after each step and every step is recorded. Throws
/// BlowUpError on a non-finite state or ‖S‖ > kBlowUpNorm.
Trajectory integrate(const SymMatrix& s0, const SkewMatrix& n, IntegralIndex idx, double t_final, double h);

/// Endpoint of integrate() without recording.
SymMatrix flow_endpoint(const SymMatrix& s0, const SkewMatrix& n, IntegralIndex idx, double t_final, double h);

struct DriftEntry {
  std::string name;
  double initial = 0.0;
  double max_drift = 0.0;  ///< max_t |v(t) − v(0)| / max(1, |v(0)|)
};

struct DriftReport {
  std::vector<DriftEntry> entries;
  double max_drift() const;
  const DriftEntry* find(const std::string& name) const;
};

/// Monitored quantities along a trajectory: every admissible H_{kℓ}
/// ("H_k_l"), every Casimir ("casimir_l"), every I_{rk} ("I_r_k") and every
/// eigenvalue of S ("eig_i").
std::vector<DriftEntry> monitored_values(const SymMatrix& s, const SkewMatrix& n);

DriftReport drift_report(const Trajectory& traj);

/// ‖Φ_s^{a}(Φ_t^{b}(S0)) − Φ_t^{b}(Φ_s^{a}(S0))‖_F with RK4 step h.
double flow_commutation(const SymMatrix& s0, const SkewMatrix& n, IntegralIndex a, IntegralIndex b, double s,
                        double t, double h);

enum class MEquationSign {
  kConsistent,  ///< −¼[(MᵀM + MMᵀ) + (Mᵀ)², M]; equals [N, S²] for M = S + N
  kAsPrinted,   ///< +¼[(MᵀM + MMᵀ) + (Mᵀ)², M]; the time-reversed flow
};

Matrix m_rhs(const Matrix& m, MEquationSign sign = MEquationSign::kConsistent);

struct MFlowResult {
  Matrix final_state;
  double max_skew_drift = 0.0;  ///< max_t ‖(M − Mᵀ)(t) − (M − Mᵀ)(0)‖_F
};

MFlowResult integrate_m(const Matrix& m0, double t_final, double h, MEquationSign sign = MEquationSign::kConsistent);

}  // namespace bilax
