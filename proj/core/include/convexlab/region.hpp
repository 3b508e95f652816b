#pragma once

#include "convexlab/kernels.hpp"

namespace cvx::cex {

struct PointR2 {
  double x = 0.0;
  double y = 0.0;
};

/// X = { y > 0 } union { (x, 0) : x >= 0 }: convex, not locally closed at
/// the origin, and the domain of the series f.
inline bool in_X(PointR2 p) { return p.y > 0.0 || (p.y == 0.0 && p.x >= 0.0); }

/// U_m = { h_m > 0 }, the open set where the m-th series term is smooth.
/// The sets increase in m and exhaust { y >= 0 } minus the origin's left side.
inline bool in_U(int m, PointR2 p) {
  return kernels::h_value<double>(m, p.x, p.y) > 0.0;
}

}  // namespace cvx::cex
