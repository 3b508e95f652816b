#include "convexlab/expr.hpp"

#include <cassert>
#include <cmath>

#include "convexlab/errors.hpp"
#include "convexlab/kernels.hpp"

namespace cvx::structures {

namespace {

ExprPtr make(Expr&& e) { return std::make_shared<const Expr>(std::move(e)); }

/// Taylor coefficients of the ramp at t0, flats included.
std::vector<double> ramp_coeffs_at(double t0, int order) {
  std::vector<double> c(static_cast<size_t>(order) + 1, 0.0);
  if (t0 <= 0.0) return c;
  if (t0 >= 1.0) {
    c[0] = 1.0;
    return c;
  }
  return kernels::ramp_taylor<double>(t0, order);
}

}  // namespace

ExprPtr Expr::coord(int i) {
  if (i < 0 || i > 2) throw PreconditionError("coordinate index must be 0..2");
  Expr e;
  e.op_ = Op::Coord;
  e.coord_ = i;
  return make(std::move(e));
}

ExprPtr Expr::constant(double v) {
  Expr e;
  e.op_ = Op::Const;
  e.value_ = v;
  return make(std::move(e));
}

ExprPtr Expr::add(ExprPtr a, ExprPtr b) {
  Expr e;
  e.op_ = Op::Add;
  e.kids_ = {std::move(a), std::move(b)};
  return make(std::move(e));
}

ExprPtr Expr::sub(ExprPtr a, ExprPtr b) {
  Expr e;
  e.op_ = Op::Sub;
  e.kids_ = {std::move(a), std::move(b)};
  return make(std::move(e));
}

ExprPtr Expr::mul(ExprPtr a, ExprPtr b) {
  Expr e;
  e.op_ = Op::Mul;
  e.kids_ = {std::move(a), std::move(b)};
  return make(std::move(e));
}

ExprPtr Expr::div(ExprPtr a, ExprPtr b) {
  Expr e;
  e.op_ = Op::Div;
  e.kids_ = {std::move(a), std::move(b)};
  return make(std::move(e));
}

ExprPtr Expr::exp_of(ExprPtr a) {
  Expr e;
  e.op_ = Op::Exp;
  e.kids_ = {std::move(a)};
  return make(std::move(e));
}

ExprPtr Expr::bridge(ExprPtr a) {
  Expr e;
  e.op_ = Op::Bridge;
  e.kids_ = {std::move(a)};
  return make(std::move(e));
}

ExprPtr Expr::bridge_eps(double eps, ExprPtr a) {
  if (!(eps > 0.0 && eps <= 1.0)) throw DomainError("b_eps requires eps in (0,1]");
  Expr e;
  e.op_ = Op::BridgeEps;
  e.value_ = eps;
  e.kids_ = {std::move(a)};
  return make(std::move(e));
}

ExprPtr Expr::cutoff(ExprPtr a) {
  Expr e;
  e.op_ = Op::Cutoff;
  e.kids_ = {std::move(a)};
  return make(std::move(e));
}

ExprPtr Expr::phi(int m, ExprPtr a) {
  if (m < 1) throw DomainError("kernel index must be >= 1");
  Expr e;
  e.op_ = Op::Phi;
  e.m_ = m;
  e.kids_ = {std::move(a)};
  return make(std::move(e));
}

ExprPtr Expr::h(int m, ExprPtr x, ExprPtr y) {
  if (m < 1) throw DomainError("kernel index must be >= 1");
  Expr e;
  e.op_ = Op::H;
  e.m_ = m;
  e.kids_ = {std::move(x), std::move(y)};
  return make(std::move(e));
}

ExprPtr Expr::ramp(ExprPtr a) {
  return mul(constant(-1.0), bridge(sub(std::move(a), constant(1.0))));
}

ExprPtr Expr::cex_f(const cex::FSeries* f, ExprPtr x, ExprPtr y) {
  if (f == nullptr) throw PreconditionError("cex_f needs a series evaluator");
  Expr e;
  e.op_ = Op::CexF;
  e.fs_ = f;
  e.kids_ = {std::move(x), std::move(y)};
  return make(std::move(e));
}

ExprPtr Expr::custom(std::string label, std::function<double(double)> fn, ExprPtr a) {
  Expr e;
  e.op_ = Op::Custom;
  e.label_ = std::move(label);
  e.fn_ = std::move(fn);
  e.kids_ = {std::move(a)};
  return make(std::move(e));
}

double Expr::eval(const std::vector<double>& p) const {
  switch (op_) {
    case Op::Coord:
      if (coord_ >= static_cast<int>(p.size()))
        throw PreconditionError("coordinate index outside the point dimension");
      return p[static_cast<size_t>(coord_)];
    case Op::Const:
      return value_;
    case Op::Add:
      return kids_[0]->eval(p) + kids_[1]->eval(p);
    case Op::Sub:
      return kids_[0]->eval(p) - kids_[1]->eval(p);
    case Op::Mul:
      return kids_[0]->eval(p) * kids_[1]->eval(p);
    case Op::Div: {
      const double d = kids_[1]->eval(p);
      if (d == 0.0) throw DomainError("division by zero");
      return kids_[0]->eval(p) / d;
    }
    case Op::Exp:
      return std::exp(kids_[0]->eval(p));
    case Op::Bridge:
      return -kernels::ramp_deriv(kids_[0]->eval(p) + 1.0, 0);
    case Op::BridgeEps:
      return -value_ * kernels::ramp_deriv(kids_[0]->eval(p) + value_, 0);
    case Op::Cutoff:
      return 1.0 - kernels::ramp_deriv(kids_[0]->eval(p) - 1.0, 0);
    case Op::Phi:
      return kernels::phi_eval(kernels::KernelIndex(m_), kids_[0]->eval(p), 0);
    case Op::H:
      return kernels::h_value<double>(m_, kids_[0]->eval(p), kids_[1]->eval(p));
    case Op::CexF:
      // The float jet at order 0 is deterministic in the inputs, which keeps
      // finite-difference stencils free of enclosure-midpoint jitter.
      return fs_->jet({kids_[0]->eval(p), kids_[1]->eval(p)}, 0, fs_->config().tol).value();
    case Op::Custom:
      return fn_(kids_[0]->eval(p));
  }
  throw PreconditionError("unreachable expression op");
}

Taylor<double> Expr::jet(const std::vector<Taylor<double>>& coords) const {
  assert(!coords.empty());
  const int dims = coords[0].dims();
  const int K = coords[0].order();
  switch (op_) {
    case Op::Coord:
      if (coord_ >= static_cast<int>(coords.size()))
        throw PreconditionError("coordinate index outside the point dimension");
      return coords[static_cast<size_t>(coord_)];
    case Op::Const:
      return Taylor<double>::constant(dims, K, value_);
    case Op::Add:
      return kids_[0]->jet(coords) + kids_[1]->jet(coords);
    case Op::Sub:
      return kids_[0]->jet(coords) - kids_[1]->jet(coords);
    case Op::Mul:
      return kids_[0]->jet(coords) * kids_[1]->jet(coords);
    case Op::Div: {
      const auto b = kids_[1]->jet(coords);
      if (b.value() == 0.0) throw DomainError("division by zero");
      return kids_[0]->jet(coords) * b.reciprocal();
    }
    case Op::Exp: {
      const auto u = kids_[0]->jet(coords);
      std::vector<double> outer(static_cast<size_t>(K) + 1);
      double c = std::exp(u.value());
      for (int k = 0; k <= K; ++k) {
        outer[static_cast<size_t>(k)] = c;
        c /= static_cast<double>(k + 1);
      }
      return u.compose_univariate(outer);
    }
    case Op::Bridge: {
      const auto u = kids_[0]->jet(coords);
      auto rc = ramp_coeffs_at(u.value() + 1.0, K);
      for (auto& v : rc) v = -v;
      return u.compose_univariate(rc);
    }
    case Op::BridgeEps: {
      const auto u = kids_[0]->jet(coords);
      auto rc = ramp_coeffs_at(u.value() + value_, K);
      for (auto& v : rc) v = -value_ * v;
      return u.compose_univariate(rc);
    }
    case Op::Cutoff: {
      const auto u = kids_[0]->jet(coords);
      return u.compose_univariate(kernels::detail_phi::chi_taylor(u.value(), K));
    }
    case Op::Phi: {
      const auto u = kids_[0]->jet(coords);
      const double x0 = u.value();
      std::vector<double> outer(static_cast<size_t>(K) + 1, 0.0);
      if (x0 > 0.0) {
        outer = kernels::phi_taylor<double>(m_, x0, K);
      } else if (x0 == 0.0 && K > m_) {
        throw NotDifferentiableError("phi_m is not C^" + std::to_string(K) + " at 0", m_);
      }
      return u.compose_univariate(outer);
    }
    case Op::H: {
      const auto jx = kids_[0]->jet(coords);
      const auto jy = kids_[1]->jet(coords);
      const double eps = 1.0 / static_cast<double>(m_);
      const auto rc = ramp_coeffs_at(jx.value() + eps, K);
      return jy + jx.compose_univariate(rc) * eps;
    }
    case Op::CexF: {
      const auto jx = kids_[0]->jet(coords);
      const auto jy = kids_[1]->jet(coords);
      const auto outer =
          fs_->jet({jx.value(), jy.value()}, K, fs_->config().tol);
      return compose_multivariate(outer, {jx, jy});
    }
    case Op::Custom:
      throw CapabilityError("opaque node '" + label_ + "' has no jet");
  }
  throw PreconditionError("unreachable expression op");
}

bool Expr::everywhere_smooth() const {
  switch (op_) {
    case Op::Coord:
    case Op::Const:
      return true;
    case Op::Div:
    case Op::Phi:
    case Op::CexF:
    case Op::Custom:
      return false;
    default:
      for (const auto& k : kids_)
        if (!k->everywhere_smooth()) return false;
      return true;
  }
}

bool Expr::constant_only() const {
  if (op_ == Op::Coord) return false;
  for (const auto& k : kids_)
    if (!k->constant_only()) return false;
  return true;
}

ExprPtr Expr::substitute(const std::vector<ExprPtr>& repl) const {
  if (op_ == Op::Coord) {
    if (coord_ >= static_cast<int>(repl.size()))
      throw PreconditionError("composition arity mismatch");
    return repl[static_cast<size_t>(coord_)];
  }
  Expr e;
  e.op_ = op_;
  e.coord_ = coord_;
  e.value_ = value_;
  e.m_ = m_;
  e.fs_ = fs_;
  e.fn_ = fn_;
  e.label_ = label_;
  for (const auto& k : kids_) e.kids_.push_back(k->substitute(repl));
  return make(std::move(e));
}

std::vector<double> SymbolicMap::eval(const std::vector<double>& p) const {
  std::vector<double> r;
  r.reserve(components.size());
  for (const auto& c : components) r.push_back(c->eval(p));
  return r;
}

double SymbolicMap::eval1(const std::vector<double>& p) const {
  if (components.empty()) throw PreconditionError("map has no components");
  return components[0]->eval(p);
}

Taylor<double> SymbolicMap::jet(int comp, const std::vector<double>& p, int K) const {
  if (comp < 0 || comp >= arity_out()) throw PreconditionError("component index out of range");
  const int dims = static_cast<int>(p.size());
  if (dims < 1 || dims > 3) throw CapabilityError("jets support 1 to 3 variables");
  std::vector<Taylor<double>> coords;
  for (int i = 0; i < dims; ++i)
    coords.push_back(Taylor<double>::variable(dims, K, i, p[static_cast<size_t>(i)]));
  return components[static_cast<size_t>(comp)]->jet(coords);
}

bool SymbolicMap::everywhere_smooth() const {
  for (const auto& c : components)
    if (!c->everywhere_smooth()) return false;
  return true;
}

bool SymbolicMap::is_constant() const {
  for (const auto& c : components)
    if (!c->constant_only()) return false;
  return true;
}

SymbolicMap compose(const SymbolicMap& outer, const SymbolicMap& inner, std::string name) {
  if (outer.arity_in() != inner.arity_out())
    throw PreconditionError("composition arity mismatch: " + outer.name + " o " + inner.name);
  SymbolicMap r;
  r.name = name.empty() ? outer.name + "o" + inner.name : std::move(name);
  r.domain = inner.domain;
  for (const auto& c : outer.components) r.components.push_back(c->substitute(inner.components));
  return r;
}

}  // namespace cvx::structures
