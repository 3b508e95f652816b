#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "convexlab/descriptor.hpp"
#include "convexlab/fseries.hpp"
#include "convexlab/taylor.hpp"

namespace cvx::structures {

class Expr;
using ExprPtr = std::shared_ptr<const Expr>;

/// Node of the map grammar: coordinates, constants, arithmetic, exp, the
/// kernel family, the certified series f as an opaque evaluable symbol, and
/// opaque custom callables.  Every node evaluates as a value; every node
/// except Custom also propagates truncated Taylor jets, throwing
/// NotDifferentiableError where a classical derivative of the requested
/// order does not exist.
class Expr {
 public:
  enum class Op {
    Coord,
    Const,
    Add,
    Sub,
    Mul,
    Div,
    Exp,
    Bridge,     // b(x) = -r(x+1)
    BridgeEps,  // b_eps(x) = eps b(x-1+eps)
    Cutoff,     // chi(x) = 1 - r(x-1)
    Phi,        // phi_m
    H,          // h_m(x,y)
    CexF,       // the series f, evaluable on X only
    Custom
  };

  static ExprPtr coord(int i);
  static ExprPtr constant(double v);
  static ExprPtr add(ExprPtr a, ExprPtr b);
  static ExprPtr sub(ExprPtr a, ExprPtr b);
  static ExprPtr mul(ExprPtr a, ExprPtr b);
  static ExprPtr div(ExprPtr a, ExprPtr b);
  static ExprPtr exp_of(ExprPtr a);
  static ExprPtr bridge(ExprPtr a);
  static ExprPtr bridge_eps(double eps, ExprPtr a);
  static ExprPtr cutoff(ExprPtr a);
  static ExprPtr phi(int m, ExprPtr a);
  static ExprPtr h(int m, ExprPtr x, ExprPtr y);
  /// Sugar: the ramp r(t) = -b(t-1).
  static ExprPtr ramp(ExprPtr a);
  /// The series f(x,y); `f` must outlive the expression.
  static ExprPtr cex_f(const cex::FSeries* f, ExprPtr x, ExprPtr y);
  /// Opaque scalar callable; never counts as smooth and has no jet.
  static ExprPtr custom(std::string label, std::function<double(double)> fn, ExprPtr a);

  Op op() const { return op_; }
  double eval(const std::vector<double>& p) const;
  /// Jet of this expression given jets of the coordinates (all sharing one
  /// shape).  The expansion order and variable count come from `coords`.
  Taylor<double> jet(const std::vector<Taylor<double>>& coords) const;
  /// True when every node is smooth on all of its domain of definition.
  bool everywhere_smooth() const;
  /// True when no Coord node occurs, i.e. the expression is a constant map.
  bool constant_only() const;
  /// Composition: replaces Coord i by repl[i].
  ExprPtr substitute(const std::vector<ExprPtr>& repl) const;

 private:
  Expr() = default;

  Op op_ = Op::Const;
  int coord_ = 0;
  double value_ = 0.0;  // Const value, BridgeEps eps
  int m_ = 0;
  std::vector<ExprPtr> kids_;
  const cex::FSeries* fs_ = nullptr;
  std::function<double(double)> fn_;
  std::string label_;
};

/// A named map between descriptors: one expression per output component.
struct SymbolicMap {
  std::string name;
  ConvexDescriptor domain;
  std::vector<ExprPtr> components;

  int arity_in() const { return domain.dim; }
  int arity_out() const { return static_cast<int>(components.size()); }
  std::vector<double> eval(const std::vector<double>& p) const;
  double eval1(const std::vector<double>& p) const;
  /// Jet of component `comp` at p, to total order K over the domain
  /// coordinates.
  Taylor<double> jet(int comp, const std::vector<double>& p, int K) const;
  bool everywhere_smooth() const;
  bool is_constant() const;
};

/// outer o inner by substitution; the result lives on inner's domain.
SymbolicMap compose(const SymbolicMap& outer, const SymbolicMap& inner, std::string name = {});

}  // namespace cvx::structures
