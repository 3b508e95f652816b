#include "convexlab/descriptor.hpp"

#include <cassert>
#include <cmath>
#include <random>

#include "convexlab/errors.hpp"

namespace cvx::structures {

double HalfSpace::eval(const std::vector<double>& p) const {
  assert(p.size() == normal.size());
  double s = offset;
  for (size_t i = 0; i < normal.size(); ++i) s += normal[i] * p[i];
  return s;
}

bool HalfSpace::holds(const std::vector<double>& p) const {
  const double v = eval(p);
  return strict ? v > 0.0 : v >= 0.0;
}

bool Cell::contains(const std::vector<double>& p) const {
  for (const auto& c : constraints)
    if (!c.holds(p)) return false;
  return true;
}

Cell Cell::closure() const {
  Cell r = *this;
  for (auto& c : r.constraints) c.strict = false;
  return r;
}

bool ConvexDescriptor::contains(const std::vector<double>& p) const {
  if (static_cast<int>(p.size()) != dim) throw PreconditionError("point dimension mismatch");
  if (cells.empty()) return true;  // unconstrained ambient space
  for (const auto& c : cells)
    if (c.contains(p)) return true;
  return false;
}

bool ConvexDescriptor::is_open() const {
  for (const auto& c : cells)
    for (const auto& h : c.constraints)
      if (!h.strict) return false;
  return true;
}

bool ConvexDescriptor::is_closed() const {
  for (const auto& c : cells)
    for (const auto& h : c.constraints)
      if (h.strict) return false;
  return true;
}

ConvexDescriptor ConvexDescriptor::closure() const {
  ConvexDescriptor r = *this;
  r.name = name.empty() ? name : name + "-closure";
  for (auto& c : r.cells) c = c.closure();
  return r;
}

std::optional<std::vector<double>> ConvexDescriptor::interior_point(double margin) const {
  if (static_cast<int>(box.size()) != dim)
    throw PreconditionError("descriptor needs a sampling box");
  if (cells.empty()) {
    std::vector<double> mid(static_cast<size_t>(dim));
    for (int i = 0; i < dim; ++i)
      mid[static_cast<size_t>(i)] = 0.5 * (box[static_cast<size_t>(i)].first +
                                           box[static_cast<size_t>(i)].second);
    return mid;
  }
  auto margin_of = [&](const std::vector<double>& p) {
    double best = -1.0;
    for (const auto& c : cells) {
      double m = 1e300;
      for (const auto& h : c.constraints) m = std::min(m, h.eval(p));
      best = std::max(best, m);
    }
    return best;
  };
  std::mt19937 rng(99u);
  std::vector<double> best_p;
  double best_m = 0.0;
  for (int trial = 0; trial < 4000; ++trial) {
    std::vector<double> p(static_cast<size_t>(dim));
    for (int i = 0; i < dim; ++i) {
      const auto& [a, b] = box[static_cast<size_t>(i)];
      p[static_cast<size_t>(i)] =
          a + (b - a) * std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    }
    const double m = margin_of(p);
    if (m > best_m) {
      best_m = m;
      best_p = p;
    }
  }
  if (best_m > margin) return best_p;
  return std::nullopt;
}

bool ConvexDescriptor::validate_convexity(int trials, unsigned seed) const {
  if (static_cast<int>(box.size()) != dim)
    throw PreconditionError("descriptor needs a sampling box");
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  auto draw = [&] {
    std::vector<double> p(static_cast<size_t>(dim));
    for (int i = 0; i < dim; ++i) {
      const auto& [a, b] = box[static_cast<size_t>(i)];
      p[static_cast<size_t>(i)] = a + (b - a) * u(rng);
    }
    return p;
  };
  int done = 0;
  int attempts = 0;
  while (done < trials && attempts < 200 * trials) {
    ++attempts;
    const auto p = draw();
    if (!contains(p)) continue;
    const auto q = draw();
    if (!contains(q)) continue;
    const double t = u(rng);
    std::vector<double> mid(static_cast<size_t>(dim));
    for (int i = 0; i < dim; ++i)
      mid[static_cast<size_t>(i)] =
          (1.0 - t) * p[static_cast<size_t>(i)] + t * q[static_cast<size_t>(i)];
    if (!contains(mid)) return false;
    ++done;
  }
  return true;
}

namespace {

HalfSpace hs(std::vector<double> n, double c, bool strict = false) {
  HalfSpace h;
  h.normal = std::move(n);
  h.offset = c;
  h.strict = strict;
  return h;
}

}  // namespace

ConvexDescriptor real_line() {
  ConvexDescriptor d;
  d.name = "R";
  d.dim = 1;
  d.box = {{-2.0, 2.0}};
  return d;
}

ConvexDescriptor real_plane() {
  ConvexDescriptor d;
  d.name = "R^2";
  d.dim = 2;
  d.box = {{-2.0, 2.0}, {-2.0, 2.0}};
  return d;
}

ConvexDescriptor closed_interval(double a, double b) {
  ConvexDescriptor d;
  d.name = "closed-interval";
  d.dim = 1;
  d.cells = {Cell{{hs({1.0}, -a), hs({-1.0}, b)}}};
  d.box = {{a, b}};
  return d;
}

ConvexDescriptor open_interval(double a, double b) {
  ConvexDescriptor d;
  d.name = "open-interval";
  d.dim = 1;
  d.cells = {Cell{{hs({1.0}, -a, true), hs({-1.0}, b, true)}}};
  d.box = {{a, b}};
  return d;
}

ConvexDescriptor open_box2(double ax, double bx, double ay, double by) {
  ConvexDescriptor d;
  d.name = "open-box";
  d.dim = 2;
  d.cells = {Cell{{hs({1.0, 0.0}, -ax, true), hs({-1.0, 0.0}, bx, true),
                   hs({0.0, 1.0}, -ay, true), hs({0.0, -1.0}, by, true)}}};
  d.box = {{ax, bx}, {ay, by}};
  return d;
}

ConvexDescriptor halfline() {
  ConvexDescriptor d;
  d.name = "halfline";
  d.dim = 1;
  d.cells = {Cell{{hs({1.0}, 0.0)}}};
  d.box = {{0.0, 2.0}};
  return d;
}

ConvexDescriptor descriptor_X() {
  ConvexDescriptor d;
  d.name = "X";
  d.dim = 2;
  // Upper open half-plane, plus the closed ray { y = 0, x >= 0 }.
  d.cells = {Cell{{hs({0.0, 1.0}, 0.0, true)}},
             Cell{{hs({0.0, 1.0}, 0.0), hs({0.0, -1.0}, 0.0), hs({1.0, 0.0}, 0.0)}}};
  d.box = {{-2.0, 2.0}, {0.0, 2.0}};
  return d;
}

ConvexDescriptor square_pyramid() {
  ConvexDescriptor d;
  d.name = "pyramid";
  d.dim = 3;
  d.cells = {Cell{{hs({0.0, 0.0, 1.0}, 0.0), hs({-1.0, 0.0, -1.0}, 1.0),
                   hs({1.0, 0.0, -1.0}, 1.0), hs({0.0, -1.0, -1.0}, 1.0),
                   hs({0.0, 1.0, -1.0}, 1.0)}}};
  d.box = {{-1.0, 1.0}, {-1.0, 1.0}, {0.0, 1.0}};
  return d;
}

ConvexDescriptor orthant(int n) {
  if (n < 1 || n > 3) throw CapabilityError("orthant supports 1 to 3 dimensions");
  ConvexDescriptor d;
  d.name = "orthant";
  d.dim = n;
  Cell c;
  for (int i = 0; i < n; ++i) {
    std::vector<double> e(static_cast<size_t>(n), 0.0);
    e[static_cast<size_t>(i)] = 1.0;
    c.constraints.push_back(hs(e, 0.0));
  }
  d.cells = {c};
  d.box.assign(static_cast<size_t>(n), {0.0, 3.0});
  return d;
}

}  // namespace cvx::structures
