#pragma once

#include <cassert>
#include <vector>

#include "convexlab/finite_diff.hpp"

namespace cvx {

/// Partial (exponential) Bell polynomial B_{n,k}(x_1, ..., x_{n-k+1}),
/// evaluated over any ring T supporting +, * and scaling by double.
/// `x` is 1-based conceptually: x[i-1] holds x_i and must have length >= n.
/// The binomial weights are exact in double for n <= 40.
template <class T>
T bell_partial(int n, int k, const std::vector<T>& x, const T& zero, const T& one) {
  assert(n >= 0 && k >= 0 && static_cast<int>(x.size()) >= n);
  // table[i][j] = B_{i,j}
  std::vector<std::vector<T>> table(static_cast<size_t>(n) + 1);
  for (int i = 0; i <= n; ++i)
    table[static_cast<size_t>(i)].assign(static_cast<size_t>(k) + 1, zero);
  table[0][0] = one;
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= std::min(i, k); ++j) {
      T acc = zero;
      for (int p = 1; p <= i - j + 1; ++p) {
        const double w = binomial(i - 1, p - 1);
        acc = acc + (x[static_cast<size_t>(p - 1)] * w) *
                        table[static_cast<size_t>(i - p)][static_cast<size_t>(j - 1)];
      }
      table[static_cast<size_t>(i)][static_cast<size_t>(j)] = acc;
    }
  }
  return table[static_cast<size_t>(n)][static_cast<size_t>(k)];
}

/// Exact integer partial Bell coefficients as a dense table, used by the
/// derivative-bound assembly.  Entries fit __int128 for n <= 32; past that
/// the generic double-ring evaluation above is used instead.
struct BellCoefficientTable {
  int max_n;
  // value[n][k] of B_{n,k}(1,1,...,1) = Stirling numbers of the second kind,
  // a cheap cross-check target for tests.
  std::vector<std::vector<unsigned long long>> stirling2;

  explicit BellCoefficientTable(int max_n) : max_n(max_n) {
    stirling2.assign(static_cast<size_t>(max_n) + 1,
                     std::vector<unsigned long long>(static_cast<size_t>(max_n) + 1, 0));
    stirling2[0][0] = 1;
    for (int n = 1; n <= max_n && n <= 25; ++n)
      for (int k = 1; k <= n; ++k)
        stirling2[static_cast<size_t>(n)][static_cast<size_t>(k)] =
            static_cast<unsigned long long>(k) * stirling2[static_cast<size_t>(n - 1)][static_cast<size_t>(k)] +
            stirling2[static_cast<size_t>(n - 1)][static_cast<size_t>(k - 1)];
  }
};

}  // namespace cvx
