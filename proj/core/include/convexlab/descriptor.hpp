#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace cvx::structures {

/// Affine constraint normal . p + offset >= 0, or > 0 when strict.
struct HalfSpace {
  std::vector<double> normal;
  double offset = 0.0;
  bool strict = false;

  double eval(const std::vector<double>& p) const;
  bool holds(const std::vector<double>& p) const;
};

/// Conjunction of affine constraints.
struct Cell {
  std::vector<HalfSpace> constraints;

  bool contains(const std::vector<double>& p) const;
  Cell closure() const;
};

/// A convex set presented as a finite union of polyhedral cells.  Membership
/// is exact from the constraints; the asserted convexity of the union is
/// spot-checked by random midpoint sampling.  `box` is a bounding window for
/// samplers only and carries no semantic weight.
struct ConvexDescriptor {
  std::string name;
  int dim = 1;
  std::vector<Cell> cells;
  bool asserted_convex = true;
  std::vector<std::pair<double, double>> box;

  bool contains(const std::vector<double>& p) const;
  bool is_open() const;    // every constraint strict
  bool is_closed() const;  // no strict constraints
  ConvexDescriptor closure() const;

  /// A point whose containing cell has every constraint satisfied with a
  /// positive margin, found by deterministic scanning of `box`.
  std::optional<std::vector<double>> interior_point(double margin = 1e-6) const;

  /// Random midpoint convexity check: p, q in the set must put sampled
  /// segment points in the set.  Returns false on the first violation.
  bool validate_convexity(int trials = 10000, unsigned seed = 1u) const;
};

// Stock descriptors.
ConvexDescriptor real_line();
ConvexDescriptor real_plane();
ConvexDescriptor closed_interval(double a, double b);
ConvexDescriptor open_interval(double a, double b);
ConvexDescriptor open_box2(double ax, double bx, double ay, double by);
ConvexDescriptor halfline();                 // { x >= 0 } in R
/// { y > 0 } union the closed horizontal ray { (x,0) : x >= 0 }.
ConvexDescriptor descriptor_X();
/// { 0 <= z, x+z <= 1, -x+z <= 1, y+z <= 1, -y+z <= 1 } in R^3.
ConvexDescriptor square_pyramid();
ConvexDescriptor orthant(int n);             // [0,inf)^n

}  // namespace cvx::structures
