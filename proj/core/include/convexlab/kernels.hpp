#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "convexlab/bell.hpp"
#include "convexlab/errors.hpp"
#include "convexlab/interval.hpp"
#include "convexlab/taylor.hpp"

namespace cvx::kernels {

struct KernelConfig {
  std::string bridge = "logistic-rational";
  std::string cutoff = "logistic-rational";
  int max_jet_order = 12;

  void validate() const {
    if (bridge != "logistic-rational")
      throw CapabilityError("unknown bridge identifier: " + bridge);
    if (cutoff != "logistic-rational")
      throw CapabilityError("unknown cutoff identifier: " + cutoff);
    if (max_jet_order < 1) throw CapabilityError("max_jet_order must be >= 1");
  }
};

/// Index of the kernel family member (phi_m, h_m, U_m, c_m).
struct KernelIndex {
  int m;
  explicit KernelIndex(int m) : m(m) {
    if (m < 1) throw DomainError("kernel index must be >= 1");
  }
};

// ---------------------------------------------------------------------------
// The ramp r(t): the single monotone smooth step everything is built from.
// r(t) = sigma(w(t)) with w(t) = 1/(1-t) - 1/t on (0,1), r = 0 on (-inf,0],
// r = 1 on [1,inf).  The bridge is b(x) = -r(x+1) and the cutoff is
// chi(x) = 1 - r(x-1).
// ---------------------------------------------------------------------------

template <class S>
S sigma_of(S u) {
  using std::exp;
  if (midpoint(u) <= 0.0) {
    S e = exp(u);
    return e / (S(1.0) + e);
  }
  S e = exp(-u);
  return S(1.0) / (S(1.0) + e);
}

/// Taylor coefficients of t -> r(t) at t0, for t0 (or an enclosure of t0)
/// strictly inside (0,1).  Uses the logistic ODE r' = r(1-r) w'.
template <class S>
std::vector<S> ramp_taylor(S t0, int order) {
  const S one(1.0);
  const S inv1mt = one / (one - t0);
  const S invt = one / t0;
  std::vector<S> w(static_cast<size_t>(order) + 2, S(0.0));
  S p1 = inv1mt, p2 = invt;
  for (int k = 0; k <= order + 1; ++k) {
    w[static_cast<size_t>(k)] = (k % 2 == 0) ? (p1 - p2) : (p1 + p2);
    p1 = p1 * inv1mt;
    p2 = p2 * invt;
  }
  std::vector<S> y(static_cast<size_t>(order) + 1, S(0.0));
  std::vector<S> z(static_cast<size_t>(order) + 1, S(0.0));
  y[0] = sigma_of(w[0]);
  for (int k = 0; k < order; ++k) {
    S conv(0.0);
    for (int a = 0; a <= k; ++a) conv = conv + y[static_cast<size_t>(a)] * y[static_cast<size_t>(k - a)];
    z[static_cast<size_t>(k)] = y[static_cast<size_t>(k)] - conv;
    S acc(0.0);
    for (int i = 0; i <= k; ++i)
      acc = acc + z[static_cast<size_t>(i)] * (static_cast<double>(k - i + 1) * w[static_cast<size_t>(k - i + 1)]);
    y[static_cast<size_t>(k + 1)] = acc / S(static_cast<double>(k + 1));
  }
  return y;
}

/// Width of the endpoint strips handled by the analytic tail bound when
/// enclosing derivatives of order j.  A power of two, so 1/tau is exact.
inline double tail_tau(int j) {
  int target = std::max(8, 8 * j);
  int p = 1;
  while (p < target) p <<= 1;
  return 1.0 / static_cast<double>(p);
}

namespace detail_tail {

using cvx::detail::next_up;

/// Polynomial with nonnegative upward-rounded coefficients; every operation
/// rounds up, so evaluations are sound upper bounds.
struct PosPoly {
  std::vector<double> c;
  friend PosPoly operator+(const PosPoly& a, const PosPoly& b) {
    PosPoly r;
    r.c.assign(std::max(a.c.size(), b.c.size()), 0.0);
    for (size_t i = 0; i < r.c.size(); ++i) {
      const double x = i < a.c.size() ? a.c[i] : 0.0;
      const double y = i < b.c.size() ? b.c[i] : 0.0;
      r.c[i] = next_up(x + y);
    }
    return r;
  }
  friend PosPoly operator*(const PosPoly& a, const PosPoly& b) {
    PosPoly r;
    if (a.c.empty() || b.c.empty()) return r;
    r.c.assign(a.c.size() + b.c.size() - 1, 0.0);
    for (size_t i = 0; i < a.c.size(); ++i)
      for (size_t j = 0; j < b.c.size(); ++j)
        r.c[i + j] = next_up(r.c[i + j] + next_up(a.c[i] * b.c[j]));
    return r;
  }
  friend PosPoly operator*(const PosPoly& a, double s) {
    PosPoly r = a;
    for (auto& v : r.c) v = next_up(v * s);
    return r;
  }
};

inline double factorial_up(int n) {
  double r = 1.0;
  for (int i = 2; i <= n; ++i) r = next_up(r * static_cast<double>(i));
  return r;
}

inline double pow_up(double x, int n) {
  double r = 1.0;
  for (int i = 0; i < n; ++i) r = next_up(r * x);
  return r;
}

/// A[k] >= sum of |coefficients| of sigma^{(k)} written as a polynomial in
/// sigma (no constant term), so |sigma^{(k)}(z)| <= A[k] e^z for z <= 0.
inline std::vector<double> sigma_abs_coeff_bounds(int max_k) {
  std::vector<double> abar = {0.0, 1.0};
  std::vector<double> a(static_cast<size_t>(max_k) + 1, 0.0);
  a[0] = 1.0;
  for (int k = 1; k <= max_k; ++k) {
    std::vector<double> nb(abar.size() + 1, 0.0);
    for (size_t i = 1; i < nb.size(); ++i) {
      const double hi = i < abar.size() ? static_cast<double>(i) * abar[i] : 0.0;
      const double lo = (i >= 1 && i - 1 < abar.size()) ? static_cast<double>(i - 1) * abar[i - 1] : 0.0;
      nb[i] = next_up(hi + lo);
    }
    abar = std::move(nb);
    double s = 0.0;
    for (double v : abar) s = next_up(s + v);
    a[static_cast<size_t>(k)] = s;
  }
  return a;
}

/// Upward-rounded logs of the coefficients of the majorant polynomial P_j
/// with |r^{(j)}(t)| <= e^{-1/t} P_j(1/t) on (0, tail_tau(j)].
///
/// Derivation: r = sigma(w), |sigma^{(k)}(z)| <= A_k e^{z} for z <= 0 and
/// e^{w(t)} <= e^{1/(1-tau)} e^{-1/t}; the Faa di Bruno expansion then
/// collects everything into a polynomial in u = 1/t with nonnegative
/// coefficients.
inline const std::vector<double>& tail_poly_logs(int j) {
  static std::map<int, std::vector<double>> cache;
  static std::mutex mtx;
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(j);
  if (it != cache.end()) return it->second;
  using cvx::detail::next_up;
  const double tau = tail_tau(j);
  const double cap = next_up(1.0 / (1.0 - tau));
  const double efac = next_up(std::exp(cap));
  std::vector<double> logs;
  if (j == 0) {
    logs = {next_up(std::log(efac))};
  } else {
    const auto a = sigma_abs_coeff_bounds(j);
    std::vector<PosPoly> w;
    for (int i = 1; i <= j; ++i) {
      PosPoly p;
      p.c.assign(static_cast<size_t>(i) + 2, 0.0);
      const double fi = factorial_up(i);
      p.c[0] = next_up(fi * pow_up(cap, i + 1));
      p.c[static_cast<size_t>(i) + 1] = fi;
      w.push_back(std::move(p));
    }
    PosPoly zero, one;
    one.c = {1.0};
    PosPoly total;
    for (int k = 1; k <= j; ++k) {
      PosPoly bkj = bell_partial<PosPoly>(j, k, w, zero, one);
      total = total + bkj * next_up(a[static_cast<size_t>(k)] * efac);
    }
    logs.reserve(total.c.size());
    for (double c : total.c)
      logs.push_back(c > 0.0 ? next_up(std::log(c)) : -std::numeric_limits<double>::infinity());
  }
  return cache.emplace(j, std::move(logs)).first->second;
}

}  // namespace detail_tail

/// Sound upper bound for sup over (0, strip] of |r^{(j)}|, for any
/// 0 < strip <= tail_tau(j).  By the symmetry r(1-t) = 1 - r(t) the same
/// bound holds on [1-strip, 1).  e^{-u} P_j(u) has nonnegative coefficients
/// and u stays >= 2 deg P_j on the strip, so it is decreasing there and the
/// supremum sits at u = 1/strip.  Terms are assembled in log space to dodge
/// overflow for extremely thin strips.
inline double ramp_tail_bound_at(int j, double strip) {
  using cvx::detail::next_down;
  using cvx::detail::next_up;
  assert(strip > 0.0 && strip <= tail_tau(j));
  const auto& logs = detail_tail::tail_poly_logs(j);
  const double u0 = std::min(next_down(1.0 / strip), 1e300);
  assert(u0 >= 2.0 * static_cast<double>(logs.size() - 1));
  const double lnu = next_up(std::log(u0));
  double s = 0.0;
  bool underflow = false;
  for (size_t i = 0; i < logs.size(); ++i) {
    const double ex = next_up(logs[i] + next_up(static_cast<double>(i) * lnu)) - u0;
    if (ex < -745.0) {
      if (logs[i] > -std::numeric_limits<double>::infinity()) underflow = true;
      continue;
    }
    s = next_up(s + next_up(std::exp(next_up(ex))));
  }
  if (underflow) s = next_up(s + 1e-290);
  return j == 0 ? std::min(1.0, s) : s;
}

inline double ramp_tail_bound(int j) { return ramp_tail_bound_at(j, tail_tau(j)); }

/// Enclosures of all Taylor coefficients of r over the interval t, valid for
/// any t (flat pieces, endpoint strips, and interior are handled piecewise).
inline std::vector<Interval> ramp_taylor_enclosure(Interval t, int order) {
  const size_t n = static_cast<size_t>(order) + 1;
  std::vector<Interval> acc;
  bool any = false;
  auto merge = [&](const std::vector<Interval>& v) {
    if (!any) {
      acc = v;
      any = true;
    } else {
      for (size_t i = 0; i < n; ++i) acc[i] = hull(acc[i], v[i]);
    }
  };
  // Boxes strictly inside (0,1) that are thin relative to their distance
  // from the endpoints evaluate accurately through the series recurrence;
  // the endpoint-strip bounds are only needed for boxes that hug 0 or 1.
  // The 1e-6 floor keeps the powers of 1/t and 1/(1-t) finite.
  {
    const double d = std::min(t.lo(), 1.0 - t.hi());
    if (d >= 1e-6 && t.width() <= 0.25 * d) return ramp_taylor<Interval>(t, order);
  }
  if (t.lo() <= 0.0) {
    merge(std::vector<Interval>(n, Interval(0.0)));
  }
  if (t.hi() >= 1.0) {
    std::vector<Interval> v(n, Interval(0.0));
    v[0] = Interval(1.0);
    merge(v);
  }
  const double tau = tail_tau(order);
  // strip: upper end of the distance-to-flat range actually covered, so thin
  // boxes hugging t = 0 or t = 1 get correspondingly thin bounds.
  auto tail_coeffs = [&](bool left, double strip) {
    std::vector<Interval> v(n);
    for (int k = 0; k <= order; ++k) {
      const double bk = ramp_tail_bound_at(k, std::min(strip, tail_tau(k)));
      const Interval fk = detail::factorial_as<Interval>(k);
      if (k == 0) {
        v[0] = left ? Interval(0.0, std::min(1.0, bk)) : Interval(std::max(0.0, 1.0 - bk), 1.0);
      } else {
        const Interval c = Interval(-bk, bk) / fk;
        v[static_cast<size_t>(k)] = c;
      }
    }
    return v;
  };
  if (t.hi() > 0.0 && t.lo() < tau) merge(tail_coeffs(true, std::min(t.hi(), tau)));
  if (t.hi() > 1.0 - tau && t.lo() < 1.0)
    merge(tail_coeffs(false, detail::next_up(1.0 - std::max(t.lo(), 1.0 - tau))));
  const double lo = std::max(t.lo(), tau);
  const double hi = std::min(t.hi(), 1.0 - tau);
  if (lo <= hi) merge(ramp_taylor<Interval>(Interval(lo, hi), order));
  assert(any);
  return acc;
}

inline double ramp_deriv(double t, int j) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return j == 0 ? 1.0 : 0.0;
  const auto y = ramp_taylor<double>(t, j);
  return y[static_cast<size_t>(j)] * detail::factorial_as<double>(j);
}

inline Interval ramp_deriv_enclosure(Interval t, int j) {
  const auto y = ramp_taylor_enclosure(t, j);
  return y[static_cast<size_t>(j)] * detail::factorial_as<Interval>(j);
}

// ---------------------------------------------------------------------------
// Bridge b, scaled bridges b_eps, cutoff chi.
// ---------------------------------------------------------------------------

/// b^{(j)}(x) for the bridge b(x) = -r(x+1): 0 on (-inf,-1], -1 on [0,inf),
/// strictly decreasing in between.  Flat values are exact.
inline double bridge_eval(double x, int j, const KernelConfig& cfg = {}) {
  if (j < 0 || j > cfg.max_jet_order)
    throw CapabilityError("bridge derivative order exceeds configured maximum");
  return -ramp_deriv(x + 1.0, j);
}

inline Interval bridge_enclosure(Interval x, int j) {
  return -ramp_deriv_enclosure(x + Interval(1.0), j);
}

/// b_eps^{(j)}(x) = eps * b^{(j)}(x - 1 + eps), for eps in (0,1].
inline double b_eps_eval(double eps, double x, int j, const KernelConfig& cfg = {}) {
  if (!(eps > 0.0 && eps <= 1.0)) throw DomainError("b_eps requires eps in (0,1]");
  return eps * bridge_eval(x - 1.0 + eps, j, cfg);
}

/// chi^{(j)}(x) for the cutoff chi(x) = 1 - r(x-1): 1 on (-inf,1], 0 on
/// [2,inf), values in [0,1].
inline double cutoff_eval(double x, int j, const KernelConfig& cfg = {}) {
  (void)cfg;
  if (j == 0) return 1.0 - ramp_deriv(x - 1.0, 0);
  return -ramp_deriv(x - 1.0, j);
}

inline Interval cutoff_enclosure(Interval x, int j) {
  if (j == 0) return Interval(1.0) - ramp_deriv_enclosure(x - Interval(1.0), 0);
  return -ramp_deriv_enclosure(x - Interval(1.0), j);
}

// ---------------------------------------------------------------------------
// phi_m: x^{m+1/2} chi(x) on (0,inf), 0 on (-inf,0].  C^m at 0, smooth
// elsewhere, order-(m+1) derivative unbounded near 0+.
// ---------------------------------------------------------------------------

/// Falling product prod_{i=0}^{j-1} (m + 1/2 - i) in scalar type S.
template <class S>
S phi_power_factor(int m, int j) {
  S f(1.0);
  for (int i = 0; i < j; ++i) f = f * (S(static_cast<double>(m)) + S(0.5) - S(static_cast<double>(i)));
  return f;
}

namespace detail_phi {

inline std::vector<double> chi_taylor(double x0, int order) {
  std::vector<double> c(static_cast<size_t>(order) + 1, 0.0);
  const double t = x0 - 1.0;
  if (t <= 0.0) {
    c[0] = 1.0;
  } else if (t >= 1.0) {
    // all zero
  } else {
    const auto y = ramp_taylor<double>(t, order);
    c[0] = 1.0 - y[0];
    for (int k = 1; k <= order; ++k) c[static_cast<size_t>(k)] = -y[static_cast<size_t>(k)];
  }
  return c;
}

inline std::vector<Interval> chi_taylor(Interval x0, int order) {
  const auto y = ramp_taylor_enclosure(x0 - Interval(1.0), order);
  std::vector<Interval> c(static_cast<size_t>(order) + 1);
  c[0] = Interval(1.0) - y[0];
  for (int k = 1; k <= order; ++k) c[static_cast<size_t>(k)] = -y[static_cast<size_t>(k)];
  return c;
}

template <class S>
std::vector<S> truncated_product(const std::vector<S>& a, const std::vector<S>& b) {
  std::vector<S> r(a.size(), S(0.0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; i + j < a.size(); ++j) r[i + j] = r[i + j] + a[i] * b[j];
  return r;
}

}  // namespace detail_phi

/// Taylor coefficients of phi_m at x0 > 0.  Valid for double, or for an
/// Interval enclosure with strictly positive lower bound.
template <class S>
std::vector<S> phi_taylor(int m, S x0, int order) {
  using std::sqrt;
  std::vector<S> p(static_cast<size_t>(order) + 1, S(0.0));
  if (lower(x0) >= 2.0) return p;
  // Power part x^{m+1/2}: coefficient k is f_k x0^{m+1/2-k} with
  // f_k = prod_{i<k}(m+1/2-i)/k!.
  S f(1.0);
  S xpow = sqrt(x0);
  for (int i = 0; i < m; ++i) xpow = xpow * x0;
  for (int k = 0; k <= order; ++k) {
    p[static_cast<size_t>(k)] = f * xpow;
    f = f * ((S(static_cast<double>(m)) + S(0.5) - S(static_cast<double>(k))) / S(static_cast<double>(k + 1)));
    xpow = xpow / x0;
  }
  if (upper(x0) <= 1.0) return p;  // chi == 1 with all derivatives 0 there
  return detail_phi::truncated_product(p, detail_phi::chi_taylor(x0, order));
}

/// phi_m^{(j)}(x) with the exact piecewise structure: zero on (-inf,0],
/// x^{m+1/2} chi(x) on (0,inf), C^m but not C^{m+1} at 0.
inline double phi_eval(KernelIndex m, double x, int j, const KernelConfig& cfg = {}) {
  if (j < 0 || j > cfg.max_jet_order)
    throw CapabilityError("phi derivative order exceeds configured maximum");
  if (x <= 0.0) {
    if (j <= m.m) return 0.0;
    throw NotDifferentiableError("phi_m is not C^" + std::to_string(j) + " at x <= 0", m.m);
  }
  const auto c = phi_taylor<double>(m.m, x, j);
  return c[static_cast<size_t>(j)] * detail::factorial_as<double>(j);
}

/// Enclosures of all Taylor coefficients of phi_m over the interval x.
/// Requires order <= m whenever x reaches 0 or below.
inline std::vector<Interval> phi_taylor_enclosure(int m, Interval x, int order) {
  const size_t n = static_cast<size_t>(order) + 1;
  if (x.hi() <= 0.0) {
    if (order > m)
      throw NotDifferentiableError("phi_m Taylor enclosure beyond order m at x <= 0", m);
    return std::vector<Interval>(n, Interval(0.0));
  }
  std::vector<Interval> pos(n, Interval(0.0));
  const Interval xr(std::max(x.lo(), 0.0), x.hi());
  if (xr.lo() > 0.0) {
    pos = phi_taylor<Interval>(m, xr, order);
  } else {
    if (order > m)
      throw NotDifferentiableError("phi_m Taylor enclosure beyond order m across 0", m);
    // Exponents m+1/2-k stay >= 1/2, so the power part is computed without
    // dividing by an interval containing zero.
    std::vector<Interval> p(n, Interval(0.0));
    if (xr.lo() < 2.0) {
      const Interval sq = sqrt(xr);
      Interval f(1.0);
      for (int k = 0; k <= order; ++k) {
        p[static_cast<size_t>(k)] = f * pow_int(xr, m - k) * sq;
        f = f * ((Interval(static_cast<double>(m)) + Interval(0.5) - Interval(static_cast<double>(k))) /
                 Interval(static_cast<double>(k + 1)));
      }
      pos = (xr.hi() <= 1.0) ? p : detail_phi::truncated_product(p, detail_phi::chi_taylor(xr, order));
    }
  }
  if (x.lo() <= 0.0) {
    for (auto& v : pos) v = hull(v, Interval(0.0));
  }
  return pos;
}

inline Interval phi_deriv_enclosure(int m, Interval x, int j) {
  const auto c = phi_taylor_enclosure(m, x, j);
  return c[static_cast<size_t>(j)] * detail::factorial_as<Interval>(j);
}

// ---------------------------------------------------------------------------
// h_m(x,y) = y - b_{1/m}(x) = y + (1/m) r(x + 1/m).
// ---------------------------------------------------------------------------

template <class S>
S h_value(int m, S x, S y);

template <>
inline double h_value<double>(int m, double x, double y) {
  const double eps = 1.0 / static_cast<double>(m);
  return y + eps * ramp_deriv(x + eps, 0);
}

template <>
inline Interval h_value<Interval>(int m, Interval x, Interval y) {
  const Interval eps = Interval(1.0) / Interval(static_cast<double>(m));
  return y + eps * ramp_deriv_enclosure(x + eps, 0);
}

/// Mixed partial of h_m.  Exactly 1 for alpha=(0,1), exactly 0 for any
/// alpha with both entries positive or with y-order >= 2.
inline double h_eval(KernelIndex m, double x, double y, MultiIndex alpha,
                     const KernelConfig& cfg = {}) {
  const int jx = alpha[0], jy = alpha[1];
  if (jx == 0 && jy == 0) return h_value<double>(m.m, x, y);
  if (jx == 0 && jy == 1) return 1.0;
  if (jy == 0) {
    const double eps = 1.0 / static_cast<double>(m.m);
    return -eps * bridge_eval(x - 1.0 + eps, jx, cfg);
  }
  return 0.0;  // affine in y
}

// ---------------------------------------------------------------------------
// Jet of the m-th series term phi_m o h_m.
// ---------------------------------------------------------------------------

/// All partials of phi_m o h_m at (x,y) up to total order K, as a bivariate
/// Taylor expansion.  Requires K <= m when h_m(x,y) <= 0 (beyond that the
/// term is not K-times differentiable there).
inline Taylor<double> term_jet(KernelIndex m, double x, double y, int K,
                               const KernelConfig& cfg = {}) {
  if (K < 0 || K > cfg.max_jet_order)
    throw CapabilityError("term_jet order exceeds configured maximum");
  const double eps = 1.0 / static_cast<double>(m.m);
  const double hv = h_value<double>(m.m, x, y);
  if (hv <= 0.0 && K > m.m)
    throw NotDifferentiableError("phi_m o h_m is not C^" + std::to_string(K) +
                                     " where h_m <= 0",
                                 m.m);
  Taylor<double> inner(2, K);
  inner.coeff(MultiIndex{{0, 0, 0}}) = hv;
  if (K >= 1) inner.coeff(MultiIndex{{0, 1, 0}}) = 1.0;
  const double t = x + eps;
  if (t > 0.0 && t < 1.0) {
    const auto rc = ramp_taylor<double>(t, K);
    for (int k = 1; k <= K; ++k)
      inner.coeff(MultiIndex{{k, 0, 0}}) = eps * rc[static_cast<size_t>(k)];
  }
  std::vector<double> outer(static_cast<size_t>(K) + 1, 0.0);
  if (hv > 0.0) outer = phi_taylor<double>(m.m, hv, K);
  return inner.compose_univariate(outer);
}

/// Interval version of term_jet; sound over the box (x,y).
inline Taylor<Interval> term_jet_enclosure(int m, Interval x, Interval y, int K) {
  const Interval eps = Interval(1.0) / Interval(static_cast<double>(m));
  const Interval t = x + eps;
  const auto rc = ramp_taylor_enclosure(t, K);
  Taylor<Interval> inner(2, K);
  inner.coeff(MultiIndex{{0, 0, 0}}) = y + eps * rc[0];
  if (K >= 1) inner.coeff(MultiIndex{{0, 1, 0}}) = Interval(1.0);
  for (int k = 1; k <= K; ++k)
    inner.coeff(MultiIndex{{k, 0, 0}}) = eps * rc[static_cast<size_t>(k)];
  const Interval hv = inner.value();
  std::vector<Interval> outer(static_cast<size_t>(K) + 1, Interval(0.0));
  if (hv.hi() > 0.0) {
    outer = phi_taylor_enclosure(m, hv, K);
  } else if (K > m) {
    throw NotDifferentiableError("term_jet_enclosure beyond order m where h_m <= 0", m);
  }
  return inner.compose_univariate(outer);
}

}  // namespace cvx::kernels
