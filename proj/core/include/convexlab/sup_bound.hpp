#pragma once

#include <cstdint>
#include <queue>
#include <vector>

#include "convexlab/interval.hpp"

namespace cvx::bounds {

using Box = std::vector<Interval>;

struct SupBoundCertificate {
  double upper = 0.0;      // sound upper bound for sup |F|
  double witness = 0.0;    // largest |F| value actually witnessed
  std::int64_t boxes = 0;  // boxes processed
  bool converged = false;  // upper - witness <= tol reached within budget
};

namespace detail_bb {

struct Entry {
  double ub;
  std::int64_t seq;  // deterministic tie-break
  Box box;
  friend bool operator<(const Entry& a, const Entry& b) {
    if (a.ub != b.ub) return a.ub < b.ub;
    return a.seq < b.seq;  // later boxes win ties, still deterministic
  }
};

}  // namespace detail_bb

/// Certified sup of |F| over a box by interval branch and bound.  `f` maps a
/// Box to an enclosure of F over it.  Splits the widest axis, always expands
/// the box with the largest upper bound, and stops once the gap between the
/// global upper bound and the best witnessed value drops below
/// tol + rel_tol * witness.  The returned upper bound is sound even when the
/// budget runs out.
template <class F>
SupBoundCertificate sup_abs_on_box(F&& f, const Box& start, double tol, double rel_tol = 0.0,
                                   std::int64_t budget = 1000000) {
  SupBoundCertificate cert;
  std::priority_queue<detail_bb::Entry> queue;
  std::int64_t seq = 0;
  auto push = [&](Box b) {
    const Interval v = f(b);
    const double ub = abs(v).mag();
    Box mid;
    mid.reserve(b.size());
    for (const auto& c : b) mid.emplace_back(c.mid());
    const double wit = abs(f(mid)).mig();
    if (wit > cert.witness) cert.witness = wit;
    queue.push(detail_bb::Entry{ub, seq++, std::move(b)});
  };
  push(start);
  while (!queue.empty()) {
    detail_bb::Entry top = queue.top();
    queue.pop();
    ++cert.boxes;
    cert.upper = top.ub;
    if (top.ub - cert.witness <= tol + rel_tol * cert.witness) {
      cert.converged = true;
      return cert;
    }
    if (cert.boxes >= budget) return cert;
    int axis = 0;
    for (size_t i = 1; i < top.box.size(); ++i)
      if (top.box[i].width() > top.box[static_cast<size_t>(axis)].width())
        axis = static_cast<int>(i);
    const Interval c = top.box[static_cast<size_t>(axis)];
    const double m = c.mid();
    Box left = top.box, right = top.box;
    left[static_cast<size_t>(axis)] = Interval(c.lo(), m);
    right[static_cast<size_t>(axis)] = Interval(m, c.hi());
    push(std::move(left));
    push(std::move(right));
  }
  cert.converged = true;  // queue drained: upper is exact sup of the pieces
  return cert;
}

}  // namespace cvx::bounds
