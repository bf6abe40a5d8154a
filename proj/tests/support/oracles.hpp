#pragma once

// Slow, independent reference computations used by the unit tests.

#include <algorithm>
#include <bit>
#include <complex>
#include <numeric>
#include <vector>

#include "bilax/matcore.hpp"

namespace oracle {

/// Determinant by the Leibniz permutation sum.
template <typename T>
T leibniz_det(const bilax::BasicMatrix<T>& a) {
  const std::size_t n = a.size();
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  T total{};
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (p[i] > p[j]) ++inversions;
    T term = inversions % 2 == 0 ? T{1} : T{-1};
    for (std::size_t i = 0; i < n; ++i) term *= a(i, p[i]);
    total += term;
  } while (std::next_permutation(p.begin(), p.end()));
  return total;
}

/// Sum over every word with i letters A and j letters B.
inline bilax::Matrix word_sum(const bilax::Matrix& a, const bilax::Matrix& b, int i, int j) {
  const std::size_t n = a.size();
  bilax::Matrix total(n);
  const int len = i + j;
  for (unsigned mask = 0; mask < (1u << len); ++mask) {
    if (std::popcount(mask) != j) continue;
    bilax::Matrix w = bilax::Matrix::identity(n);
    for (int pos = 0; pos < len; ++pos) w = w * (((mask >> pos) & 1u) ? b : a);
    total += w;
  }
  return total;
}

inline double max_abs(const bilax::Matrix& a) {
  double m = 0.0;
  for (double x : a.data()) m = std::max(m, std::abs(x));
  return m;
}

inline double max_abs_diff(const bilax::Matrix& a, const bilax::Matrix& b) { return max_abs(a - b); }

}  // namespace oracle
