#pragma once

#include <array>
#include <cassert>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "convexlab/interval.hpp"

namespace cvx {

/// Multi-index over at most three variables.
struct MultiIndex {
  std::array<int, 3> a{0, 0, 0};
  int order() const { return a[0] + a[1] + a[2]; }
  int operator[](int i) const { return a[static_cast<size_t>(i)]; }
  friend bool operator<(const MultiIndex& x, const MultiIndex& y) { return x.a < y.a; }
  friend bool operator==(const MultiIndex& x, const MultiIndex& y) { return x.a == y.a; }
};

namespace detail {

/// Enumeration of all multi-indices with |alpha| <= order in `dims` variables,
/// shared between Taylor instances of the same shape.
struct IndexTable {
  int dims = 1;
  int order = 0;
  std::vector<MultiIndex> indices;
  std::map<MultiIndex, int> rank;

  int rank_of(const MultiIndex& m) const {
    auto it = rank.find(m);
    assert(it != rank.end());
    return it->second;
  }
};

inline std::shared_ptr<const IndexTable> index_table(int dims, int order) {
  static std::map<std::pair<int, int>, std::shared_ptr<const IndexTable>> cache;
  static std::mutex mtx;
  std::lock_guard<std::mutex> lock(mtx);
  auto key = std::make_pair(dims, order);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  auto tab = std::make_shared<IndexTable>();
  tab->dims = dims;
  tab->order = order;
  for (int total = 0; total <= order; ++total) {
    if (dims == 1) {
      tab->indices.push_back(MultiIndex{{total, 0, 0}});
    } else if (dims == 2) {
      for (int i = total; i >= 0; --i) tab->indices.push_back(MultiIndex{{i, total - i, 0}});
    } else {
      for (int i = total; i >= 0; --i)
        for (int j = total - i; j >= 0; --j)
          tab->indices.push_back(MultiIndex{{i, j, total - i - j}});
    }
  }
  for (int r = 0; r < static_cast<int>(tab->indices.size()); ++r)
    tab->rank[tab->indices[static_cast<size_t>(r)]] = r;
  cache[key] = tab;
  return tab;
}

template <class T>
T factorial_as(int n) {
  T r(1.0);
  for (int i = 2; i <= n; ++i) r = r * T(static_cast<double>(i));
  return r;
}

}  // namespace detail

/// Truncated Taylor expansion in 1..3 variables, with scalar type `T`
/// (double or Interval).  Coefficients are Taylor coefficients, i.e. the
/// raw derivative divided by alpha!.  The derivative convention for all
/// public jet tables in this library is the raw derivative; `deriv()` does
/// the factorial conversion.
template <class T>
class Taylor {
 public:
  Taylor(int dims, int order)
      : tab_(detail::index_table(dims, order)), c_(tab_->indices.size(), T(0.0)) {}

  static Taylor constant(int dims, int order, T value) {
    Taylor t(dims, order);
    t.c_[0] = value;
    return t;
  }

  /// The expansion of the coordinate `var` around base value x0.
  static Taylor variable(int dims, int order, int var, T x0) {
    Taylor t(dims, order);
    t.c_[0] = x0;
    if (order >= 1) {
      MultiIndex m;
      m.a[static_cast<size_t>(var)] = 1;
      t.c_[static_cast<size_t>(t.tab_->rank_of(m))] = T(1.0);
    }
    return t;
  }

  int dims() const { return tab_->dims; }
  int order() const { return tab_->order; }
  size_t size() const { return c_.size(); }
  const std::vector<MultiIndex>& indices() const { return tab_->indices; }

  const T& coeff(const MultiIndex& m) const {
    return c_[static_cast<size_t>(tab_->rank_of(m))];
  }
  T& coeff(const MultiIndex& m) { return c_[static_cast<size_t>(tab_->rank_of(m))]; }
  const T& coeff_at(size_t rank) const { return c_[rank]; }
  T& coeff_at(size_t rank) { return c_[rank]; }
  const T& value() const { return c_[0]; }

  /// Raw derivative d^alpha = coeff(alpha) * alpha!.
  T deriv(const MultiIndex& m) const {
    T f = detail::factorial_as<T>(m[0]);
    if (m[1] > 0) f = f * detail::factorial_as<T>(m[1]);
    if (m[2] > 0) f = f * detail::factorial_as<T>(m[2]);
    return coeff(m) * f;
  }

  Taylor operator-() const {
    Taylor r = *this;
    for (auto& v : r.c_) v = -v;
    return r;
  }
  friend Taylor operator+(const Taylor& a, const Taylor& b) {
    assert(a.tab_ == b.tab_);
    Taylor r = a;
    for (size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = r.c_[i] + b.c_[i];
    return r;
  }
  friend Taylor operator-(const Taylor& a, const Taylor& b) {
    assert(a.tab_ == b.tab_);
    Taylor r = a;
    for (size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = r.c_[i] - b.c_[i];
    return r;
  }
  friend Taylor operator*(const Taylor& a, const Taylor& b) {
    assert(a.tab_ == b.tab_);
    Taylor r(a.tab_);
    const auto& idx = a.tab_->indices;
    for (size_t i = 0; i < idx.size(); ++i) {
      for (size_t j = 0; j < idx.size(); ++j) {
        MultiIndex s{{idx[i].a[0] + idx[j].a[0], idx[i].a[1] + idx[j].a[1],
                      idx[i].a[2] + idx[j].a[2]}};
        if (s.order() > a.tab_->order) continue;
        size_t k = static_cast<size_t>(a.tab_->rank_of(s));
        r.c_[k] = r.c_[k] + a.c_[i] * b.c_[j];
      }
    }
    return r;
  }
  friend Taylor operator*(const T& s, const Taylor& a) {
    Taylor r = a;
    for (auto& v : r.c_) v = s * v;
    return r;
  }
  friend Taylor operator*(const Taylor& a, const T& s) { return s * a; }

  /// Composes a univariate outer expansion with this expansion.  `outer`
  /// holds Taylor coefficients of g at the point value(); entry k is
  /// g^{(k)}(value())/k!.  Returns the expansion of g(this).
  Taylor compose_univariate(const std::vector<T>& outer) const {
    assert(static_cast<int>(outer.size()) == order() + 1);
    Taylor p = *this;
    p.c_[0] = T(0.0);
    Taylor r = Taylor::constant(dims(), order(), outer.back());
    for (int k = order() - 1; k >= 0; --k) {
      r = r * p;
      r.c_[0] = r.c_[0] + outer[static_cast<size_t>(k)];
    }
    return r;
  }

  /// Reciprocal 1/this; the constant term must be invertible.
  Taylor reciprocal() const {
    const T u0 = c_[0];
    std::vector<T> outer(static_cast<size_t>(order()) + 1);
    // 1/u around u0: coefficients (-1)^k / u0^{k+1}.
    T p = T(1.0) / u0;
    for (int k = 0; k <= order(); ++k) {
      outer[static_cast<size_t>(k)] = p;
      p = -p / u0;
    }
    return compose_univariate(outer);
  }

 private:
  explicit Taylor(std::shared_ptr<const detail::IndexTable> tab)
      : tab_(std::move(tab)), c_(tab_->indices.size(), T(0.0)) {}

  std::shared_ptr<const detail::IndexTable> tab_;
  std::vector<T> c_;
};

/// Composes a multivariate outer expansion (in `inner.size()` variables)
/// with inner expansions that share a common shape.  outer.coeff(alpha) is
/// the Taylor coefficient of g at (inner[0].value(), ...).
template <class T>
Taylor<T> compose_multivariate(const Taylor<T>& outer, const std::vector<Taylor<T>>& inner) {
  assert(!inner.empty() && outer.dims() == static_cast<int>(inner.size()));
  const int dims = inner[0].dims();
  const int order = inner[0].order();
  // Powers of the zero-constant-term parts of each inner expansion.
  std::vector<std::vector<Taylor<T>>> pow;
  for (const auto& u : inner) {
    Taylor<T> p = u;
    p.coeff_at(0) = T(0.0);
    std::vector<Taylor<T>> ps;
    ps.push_back(Taylor<T>::constant(dims, order, T(1.0)));
    for (int e = 1; e <= order; ++e) ps.push_back(ps.back() * p);
    pow.push_back(std::move(ps));
  }
  Taylor<T> r(dims, order);
  const auto& idx = outer.indices();
  for (size_t i = 0; i < idx.size(); ++i) {
    Taylor<T> term = pow[0][static_cast<size_t>(idx[i][0])];
    for (int v = 1; v < outer.dims(); ++v)
      term = term * pow[static_cast<size_t>(v)][static_cast<size_t>(idx[i][v])];
    r = r + outer.coeff_at(i) * term;
  }
  return r;
}

}  // namespace cvx
