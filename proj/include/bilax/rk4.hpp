#pragma once

namespace bilax {

/// One classical Runge–Kutta step for any state with +, and scalar *.
template <typename State, typename Rhs>
State rk4_step(const State& y, double h, Rhs&& f) {
  const State k1 = f(y);
  const State k2 = f(y + (0.5 * h) * k1);
  const State k3 = f(y + (0.5 * h) * k2);
  const State k4 = f(y + h * k3);
  return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

/// Number of equal steps of size ≤ h covering [0, t_final].
inline long step_count(double t_final, double h) {
  if (t_final <= 0.0) return 0;
  const double q = t_final / h;
  const long n = static_cast<long>(q);
  return (q - static_cast<double>(n) > 1e-9) ? n + 1 : (n > 0 ? n : 1);
}

}  // namespace bilax
