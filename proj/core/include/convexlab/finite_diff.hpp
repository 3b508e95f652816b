#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

namespace cvx {

inline double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
  return r;
}

struct DerivEstimate {
  double value = 0.0;
  double error = std::numeric_limits<double>::infinity();
};

/// Central-difference estimate of the order-n derivative with step h.
/// The stencil is the n-fold central difference; for odd n it evaluates at
/// half-integer multiples of h.
template <class F>
double central_difference(F&& f, double x, int n, double h) {
  double acc = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double w = (i % 2 == 0 ? 1.0 : -1.0) * binomial(n, i);
    acc += w * f(x + (0.5 * n - i) * h);
  }
  return acc / std::pow(h, n);
}

/// Richardson-extrapolated derivative of order n.  Builds a Neville tableau
/// over halved steps and returns the entry with the smallest disagreement
/// against its neighbours, which doubles as the error estimate.
template <class F>
DerivEstimate fd_derivative(F&& f, double x, int n, double h0 = 0.4, int levels = 5) {
  std::vector<std::vector<double>> t(static_cast<size_t>(levels));
  DerivEstimate best;
  double h = h0;
  for (int k = 0; k < levels; ++k, h *= 0.5) {
    auto& row = t[static_cast<size_t>(k)];
    row.resize(static_cast<size_t>(k) + 1);
    row[0] = central_difference(f, x, n, h);
    double fac = 4.0;
    for (int j = 1; j <= k; ++j, fac *= 4.0) {
      row[static_cast<size_t>(j)] =
          (fac * row[static_cast<size_t>(j - 1)] - t[static_cast<size_t>(k - 1)][static_cast<size_t>(j - 1)]) /
          (fac - 1.0);
      const double err =
          std::fabs(row[static_cast<size_t>(j)] - row[static_cast<size_t>(j - 1)]) +
          std::fabs(row[static_cast<size_t>(j)] - t[static_cast<size_t>(k - 1)][static_cast<size_t>(j - 1)]);
      if (err <= best.error) {
        best.error = err;
        best.value = row[static_cast<size_t>(j)];
      }
    }
    // Abort once the tableau starts diverging badly (non-smooth input).
    if (k > 1 && std::fabs(row.back() - t[static_cast<size_t>(k - 1)].back()) > 4.0 * best.error &&
        best.error < std::numeric_limits<double>::infinity()) {
      break;
    }
  }
  if (levels == 1 || best.error == std::numeric_limits<double>::infinity()) {
    best.value = t[0][0];
  }
  return best;
}

}  // namespace cvx
