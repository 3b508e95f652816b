#include "convexlab/membership.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "convexlab/errors.hpp"
#include "convexlab/finite_diff.hpp"

namespace cvx::structures {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

/// Deterministic samples of S: a grid over the box (endpoints included, so
/// open sets drop them through `contains`) plus seeded random fill.
std::vector<std::vector<double>> sample_points(const ConvexDescriptor& S, int target,
                                               unsigned seed) {
  if (static_cast<int>(S.box.size()) != S.dim)
    throw PreconditionError("descriptor needs a sampling box");
  std::vector<std::vector<double>> pts;
  auto push = [&](const std::vector<double>& p) {
    if (S.contains(p)) pts.push_back(p);
  };
  int n = target;
  if (S.dim == 2) n = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(target))));
  if (S.dim == 3) n = static_cast<int>(std::ceil(std::cbrt(static_cast<double>(target))));
  n = std::max(n, 2);
  std::vector<int> idx(static_cast<size_t>(S.dim), 0);
  for (;;) {
    std::vector<double> p(static_cast<size_t>(S.dim));
    for (int i = 0; i < S.dim; ++i) {
      const auto& [a, b] = S.box[static_cast<size_t>(i)];
      p[static_cast<size_t>(i)] =
          a + (b - a) * (static_cast<double>(idx[static_cast<size_t>(i)]) / n);
    }
    push(p);
    int i = 0;
    while (i < S.dim && ++idx[static_cast<size_t>(i)] > n) {
      idx[static_cast<size_t>(i)] = 0;
      ++i;
    }
    if (i == S.dim) break;
  }
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 4 * target && static_cast<int>(pts.size()) < 2 * target; ++t) {
    std::vector<double> p(static_cast<size_t>(S.dim));
    for (int i = 0; i < S.dim; ++i) {
      const auto& [a, b] = S.box[static_cast<size_t>(i)];
      p[static_cast<size_t>(i)] = a + (b - a) * u(rng);
    }
    push(p);
  }
  return pts;
}

MultiIndex axis_index(int axis, int order) {
  MultiIndex m;
  m.a[static_cast<size_t>(axis)] = order;
  return m;
}

struct CompCheck {
  std::optional<Witness> witness;
  bool skipped = false;
};

/// Jet/finite-difference cross-check of one component at one point.
CompCheck check_component(const SymbolicMap& map, int c, const std::vector<double>& p, int K,
                          const CheckOptions& opts) {
  std::optional<Taylor<double>> jet;
  try {
    jet = map.jet(c, p, K);
  } catch (const NotDifferentiableError& e) {
    if (e.limiting_order + 1 <= K) return {Witness{p, e.limiting_order + 1, kInf}, false};
    return {std::nullopt, false};
  } catch (const CapabilityError&) {
    // opaque node: fall back to finite-difference self-consistency
  } catch (const DomainError&) {
    return {std::nullopt, true};
  }
  const int dims = static_cast<int>(p.size());
  for (int a = 0; a < dims; ++a) {
    for (int j = 1; j <= K; ++j) {
      auto g1 = [&](double t) {
        auto q = p;
        q[static_cast<size_t>(a)] = t;
        return map.components[static_cast<size_t>(c)]->eval(q);
      };
      // Shrink the base step until the Richardson error estimate resolves
      // the tolerance; a stencil that never resolves gives no evidence.
      DerivEstimate est;
      bool got = false;
      double h0 = opts.fd_h0;
      for (int attempt = 0; attempt < 5 && !got; ++attempt, h0 *= 0.25) {
        try {
          est = fd_derivative(g1, p[static_cast<size_t>(a)], j, h0, opts.fd_levels);
        } catch (const DomainError&) {
          continue;
        }
        const double scale = std::max(1.0, std::fabs(est.value));
        if (est.error <= 0.02 * opts.tol * scale) got = true;
      }
      if (jet) {
        if (!got) continue;
        const double ref = jet->deriv(axis_index(a, j));
        const double scale = std::max({1.0, std::fabs(ref), std::fabs(est.value)});
        const double res = std::fabs(est.value - ref) / scale;
        if (res > opts.tol) return {Witness{p, j, res}, false};
      } else {
        // Opaque node: finite differences are the only oracle, so failure to
        // self-resolve is itself the failure.
        if (!got) {
          const double scale = std::max(1.0, std::fabs(est.value));
          return {Witness{p, j, est.error / scale}, false};
        }
      }
    }
  }
  return {};
}

double containment_residual(const ConvexDescriptor& S, const std::vector<double>& v) {
  double best = -kInf;
  for (const auto& cell : S.cells) {
    double worst = kInf;
    for (const auto& h : cell.constraints) worst = std::min(worst, h.eval(v));
    best = std::max(best, worst);
  }
  return best < 0.0 ? -best : 0.0;
}

std::vector<double> domain_midpoint(const ConvexDescriptor& d) {
  std::vector<double> p(static_cast<size_t>(d.dim));
  for (int i = 0; i < d.dim; ++i)
    p[static_cast<size_t>(i)] =
        0.5 * (d.box[static_cast<size_t>(i)].first + d.box[static_cast<size_t>(i)].second);
  return p;
}

SymbolicMap constant_map(ConvexDescriptor domain, const std::vector<double>& values,
                         std::string name) {
  SymbolicMap m;
  m.name = std::move(name);
  m.domain = std::move(domain);
  for (double v : values) m.components.push_back(Expr::constant(v));
  return m;
}

/// Polynomial extrapolation of v(lambda) to lambda = 0 (Neville).
double neville_at_zero(const std::vector<double>& lam, const std::vector<double>& val) {
  std::vector<double> t = val;
  const size_t n = t.size();
  for (size_t k = 1; k < n; ++k) {
    for (size_t i = 0; i + k < n; ++i) {
      t[i] = (lam[i] * t[i + 1] - lam[i + k] * t[i]) / (lam[i] - lam[i + k]);
    }
  }
  return t[0];
}

}  // namespace

Verdict is_classically_smooth(const SymbolicMap& map, int K, const CheckOptions& opts) {
  if (K < 1) throw PreconditionError("smoothness order must be >= 1");
  if (!map.domain.is_open() && !opts.assume_open)
    throw DomainError(
        "smoothness check needs an open domain; use the subset/subspace operations instead");
  if (map.everywhere_smooth())
    return Verdict::proven("expression tree contains only everywhere-smooth nodes");
  if (map.is_constant()) return Verdict::proven("constant map");
  const auto pts = sample_points(map.domain, opts.samples, opts.seed);
  // First scan for points where a classical derivative is missing outright,
  // so the witness names the actual breakdown point rather than a nearby
  // stencil that merely brushes it.
  for (const auto& p : pts) {
    for (int c = 0; c < map.arity_out(); ++c) {
      try {
        (void)map.jet(c, p, K);
      } catch (const NotDifferentiableError& e) {
        if (e.limiting_order + 1 <= K)
          return Verdict::failed(Witness{p, e.limiting_order + 1, kInf},
                                 "no classical derivative for " + map.name);
      } catch (const CapabilityError&) {
      } catch (const DomainError&) {
      }
    }
  }
  int checked = 0;
  for (const auto& p : pts) {
    for (int c = 0; c < map.arity_out(); ++c) {
      const auto r = check_component(map, c, p, K, opts);
      if (r.witness)
        return Verdict::failed(*r.witness,
                               "jet/finite-difference oracles disagree for " + map.name);
      if (!r.skipped) ++checked;
    }
  }
  return Verdict::passed(checked, K, opts.tol, "jet/finite-difference cross-checks");
}

Verdict plot_membership_subset(const SymbolicMap& p, const ConvexDescriptor& S, int K,
                               const CheckOptions& opts) {
  if (p.arity_out() != S.dim)
    throw PreconditionError("plot codomain dimension does not match the set");
  if (p.is_constant()) {
    const auto mid = domain_midpoint(p.domain);
    const auto v = p.eval(mid);
    if (S.contains(v)) return Verdict::proven("constant map into the set is a plot");
    return Verdict::failed(Witness{mid, 0, containment_residual(S, v)},
                           "constant value lies outside the set");
  }
  const auto pts = sample_points(p.domain, std::max(opts.samples, 40), opts.seed);
  for (const auto& t : pts) {
    const auto v = p.eval(t);
    if (!S.contains(v))
      return Verdict::failed(Witness{t, 0, containment_residual(S, v)},
                             "image leaves the set at a sampled parameter");
  }
  const Verdict contain =
      S.cells.empty() ? Verdict::proven("unconstrained ambient space")
                      : Verdict::passed(static_cast<int>(pts.size()), 0, 0.0,
                                        "sampled image containment");
  return worse(contain, is_classically_smooth(p, K, opts));
}

Verdict kriegl_check(const SymbolicMap& g, const ConvexDescriptor& S, int K,
                     const KrieglOptions& opts) {
  if (g.arity_out() != 1) throw PreconditionError("kriegl_check expects a scalar function");
  if (g.arity_in() != S.dim) throw PreconditionError("function/set dimension mismatch");
  const auto q0 = S.interior_point();
  if (!q0)
    throw PreconditionError(
        "empty interior: replace the ambient space with the affine span first");

  // Three spread-out interior anchors.
  std::vector<std::vector<double>> anchors{*q0};
  {
    std::mt19937 rng(opts.seed + 1);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    auto margin_ok = [&](const std::vector<double>& p) {
      if (!S.contains(p)) return false;
      for (const auto& cell : S.cells) {
        bool in = true;
        double m = kInf;
        for (const auto& h : cell.constraints) {
          const double v = h.eval(p);
          m = std::min(m, v);
          if (!(h.strict ? v > 0.0 : v >= 0.0)) in = false;
        }
        if (in && m > 1e-3) return true;
      }
      return S.cells.empty();
    };
    while (anchors.size() < 3) {
      std::vector<double> best;
      double best_d = -1.0;
      for (int t = 0; t < 400; ++t) {
        std::vector<double> p(static_cast<size_t>(S.dim));
        for (int i = 0; i < S.dim; ++i) {
          const auto& [a, b] = S.box[static_cast<size_t>(i)];
          p[static_cast<size_t>(i)] = a + (b - a) * u(rng);
        }
        if (!margin_ok(p)) continue;
        double d = kInf;
        for (const auto& q : anchors) {
          double s = 0.0;
          for (int i = 0; i < S.dim; ++i) {
            const double dd = p[static_cast<size_t>(i)] - q[static_cast<size_t>(i)];
            s += dd * dd;
          }
          d = std::min(d, s);
        }
        if (d > best_d) {
          best_d = d;
          best = p;
        }
      }
      if (best.empty()) best = anchors[0];
      anchors.push_back(best);
    }
  }

  // Boundary points of S: walk rays from an anchor until the closure is
  // exited, bisect onto the boundary, keep the point when it belongs to S.
  const auto cl = S.closure();
  std::vector<std::vector<double>> boundary;
  {
    std::mt19937 rng(opts.seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    int attempts = 0;
    while (static_cast<int>(boundary.size()) < opts.boundary_samples &&
           attempts < 80 * opts.boundary_samples) {
      ++attempts;
      const auto& q = anchors[static_cast<size_t>(attempts % anchors.size())];
      std::vector<double> d(static_cast<size_t>(S.dim));
      double norm = 0.0;
      for (auto& v : d) {
        v = gauss(rng);
        norm += v * v;
      }
      norm = std::sqrt(norm);
      if (norm < 1e-12) continue;
      for (auto& v : d) v /= norm;
      auto at = [&](double t) {
        std::vector<double> p(q);
        for (int i = 0; i < S.dim; ++i) p[static_cast<size_t>(i)] += t * d[static_cast<size_t>(i)];
        return p;
      };
      double extent = 0.0;
      for (const auto& [a, b] : S.box) extent += (b - a) * (b - a);
      extent = 10.0 * std::sqrt(extent);
      double lo = 0.0, hi = 1e-3;
      bool exits = false;
      for (; hi <= extent; hi *= 2.0) {
        if (!cl.contains(at(hi))) {
          exits = true;
          break;
        }
        lo = hi;
      }
      if (!exits) continue;
      for (int it = 0; it < 80; ++it) {
        const double mid = 0.5 * (lo + hi);
        (cl.contains(at(mid)) ? lo : hi) = mid;
      }
      auto s = at(lo);
      // Snap onto the active faces so points that merely hug a face from the
      // inside do not masquerade as boundary points of S.
      for (int pass = 0; pass < 2; ++pass) {
        for (const auto& cell : cl.cells) {
          if (!cell.contains(s)) continue;
          for (const auto& h : cell.constraints) {
            const double v = h.eval(s);
            if (std::fabs(v) > 1e-7) continue;
            double nn = 0.0;
            for (double c : h.normal) nn += c * c;
            if (nn < 1e-12) continue;
            for (int i = 0; i < S.dim; ++i)
              s[static_cast<size_t>(i)] -= v * h.normal[static_cast<size_t>(i)] / nn;
          }
        }
      }
      if (cl.contains(s) && S.contains(s)) boundary.push_back(s);
    }
  }
  if (boundary.empty())
    return Verdict::passed(0, K, opts.tol, "no boundary points reachable from the interior");

  // All multi-indices up to order K over the ambient variables.
  std::vector<MultiIndex> alphas;
  for (const auto& m : detail::index_table(S.dim, K)->indices)
    if (m.order() >= 1) alphas.push_back(m);

  for (const auto& s : boundary) {
    // Approach along the unit direction toward each anchor; the base step is
    // clamped so every approach point stays on the segment into the set.
    std::vector<std::vector<double>> lam_by_anchor;
    std::vector<std::vector<std::vector<double>>> vals;  // [anchor][alpha][level]
    for (const auto& q : anchors) {
      std::vector<double> u(static_cast<size_t>(S.dim));
      double dist = 0.0;
      for (int i = 0; i < S.dim; ++i) {
        u[static_cast<size_t>(i)] = q[static_cast<size_t>(i)] - s[static_cast<size_t>(i)];
        dist += u[static_cast<size_t>(i)] * u[static_cast<size_t>(i)];
      }
      dist = std::sqrt(dist);
      if (dist < 1e-9) continue;
      for (auto& v : u) v /= dist;
      const double l0 = std::min(opts.lambda0, 0.45 * dist);
      std::vector<double> lam(static_cast<size_t>(opts.approach_levels));
      std::vector<std::vector<double>> av(alphas.size(),
                                          std::vector<double>(lam.size(), 0.0));
      bool ok = true;
      for (int l = 0; l < opts.approach_levels && ok; ++l) {
        lam[static_cast<size_t>(l)] = l0 * std::ldexp(1.0, -l);
        std::vector<double> z(static_cast<size_t>(S.dim));
        for (int i = 0; i < S.dim; ++i)
          z[static_cast<size_t>(i)] = s[static_cast<size_t>(i)] +
                                      lam[static_cast<size_t>(l)] * u[static_cast<size_t>(i)];
        if (!S.contains(z)) {
          ok = false;
          break;
        }
        try {
          const auto jet = g.jet(0, z, K);
          for (size_t k = 0; k < alphas.size(); ++k)
            av[k][static_cast<size_t>(l)] = jet.deriv(alphas[k]);
        } catch (const NotDifferentiableError& e) {
          return Verdict::failed(Witness{z, e.limiting_order + 1, kInf},
                                 "no classical derivative along the approach");
        }
      }
      if (!ok) continue;
      lam_by_anchor.push_back(std::move(lam));
      vals.push_back(std::move(av));
    }
    if (vals.size() < 2) continue;
    for (size_t k = 0; k < alphas.size(); ++k) {
      double lo = kInf, hi = -kInf, scale = 1.0, allowance = 0.0;
      for (size_t ai = 0; ai < vals.size(); ++ai) {
        const auto& v = vals[ai][k];
        const size_t L = v.size();
        // Successive differences separate a slowly converging limit (they
        // shrink) from divergence (sustained growth toward lambda -> 0).
        std::vector<double> dif(L - 1);
        for (size_t l = 0; l + 1 < L; ++l) dif[l] = std::fabs(v[l + 1] - v[l]);
        const double d_last = dif[L - 2];
        const double seq_scale = std::max(1.0, std::fabs(v[L - 1]));
        const bool growing =
            L >= 4 && dif[L - 2] > dif[L - 3] && dif[L - 3] > dif[L - 4];
        if (growing && d_last > opts.tol * seq_scale)
          return Verdict::failed(Witness{s, alphas[k].order(), d_last / seq_scale},
                                 "derivative values diverge along the approach");
        const double limit = neville_at_zero(lam_by_anchor[ai], v);
        lo = std::min(lo, limit);
        hi = std::max(hi, limit);
        scale = std::max(scale, std::fabs(limit));
        allowance = std::max(allowance, d_last);
      }
      const double res = (hi - lo) / scale;
      if (!(hi - lo <= opts.tol * scale + allowance))
        return Verdict::failed(Witness{s, alphas[k].order(), res},
                               "interior-approach derivative limits disagree");
    }
  }
  return Verdict::passed(static_cast<int>(boundary.size()), K, opts.tol,
                         "interior-approach derivative limits agree at sampled boundary points");
}

Verdict func_membership_subspace(const SymbolicMap& g, const ConvexDescriptor& S,
                                 const std::vector<SymbolicMap>* witness_cover, int K,
                                 const CheckOptions& opts) {
  if (g.arity_out() != 1) throw PreconditionError("expects a real-valued function");
  if (g.arity_in() != S.dim) throw PreconditionError("function/set dimension mismatch");
  if (witness_cover != nullptr && !witness_cover->empty()) {
    const auto pts = sample_points(S, std::max(opts.samples, 60), opts.seed);
    size_t covered = 0;
    for (const auto& s : pts) {
      bool any = false;
      for (const auto& w : *witness_cover) {
        if (!w.domain.contains(s)) continue;
        any = true;
        const double gv = g.eval1(s);
        const double wv = w.eval1(s);
        if (std::fabs(gv - wv) > 1e-8 * std::max(1.0, std::fabs(gv)))
          throw WitnessInvalidError("extension witness disagrees with the function", s);
      }
      if (any) ++covered;
    }
    if (covered < pts.size())
      return Verdict::passed(static_cast<int>(covered), K, opts.tol,
                             "witness cover misses sampled points; membership not affirmed");
    Verdict v = Verdict::proven("verified cover of smooth local extensions");
    for (const auto& w : *witness_cover) {
      CheckOptions wo = opts;
      wo.assume_open = true;
      v = worse(v, is_classically_smooth(w, K, wo));
    }
    if (!v.accepted()) v.reason = "extension witness is not smooth: " + v.reason;
    return v;
  }
  KrieglOptions ko;
  ko.tol = opts.tol;
  const Verdict k = kriegl_check(g, S, K, ko);
  if (!k.accepted()) return k;
  return Verdict::passed(k.samples, K, opts.tol,
                         "necessary conditions pass; membership is not affirmed without an "
                         "extension witness");
}

// ---------------------------------------------------------------------------
// Generators and probes.
// ---------------------------------------------------------------------------

std::vector<SymbolicMap> default_generator_plots(const ConvexDescriptor& base) {
  std::vector<SymbolicMap> gen;
  const auto t = Expr::coord(0);
  if (base.name == "X") {
    SymbolicMap a;
    a.name = "t->(t,1+t^2)";
    a.domain = open_interval(-1.0, 1.0);
    a.components = {t, Expr::add(Expr::constant(1.0), Expr::mul(t, t))};
    gen.push_back(a);
    SymbolicMap b;
    b.name = "t->(t,t^2)";
    b.domain = open_interval(-1.0, 1.0);
    b.components = {t, Expr::mul(t, t)};
    gen.push_back(b);
    SymbolicMap c;
    c.name = "t->(t,1)";
    c.domain = open_interval(-1.0, 1.0);
    c.components = {t, Expr::constant(1.0)};
    gen.push_back(c);
    gen.push_back(constant_map(open_interval(-1.0, 1.0), {0.0, 0.0}, "const-(0,0)"));
    gen.push_back(constant_map(open_interval(-1.0, 1.0), {1.0, 0.0}, "const-(1,0)"));
    return gen;
  }
  const auto q0 = base.interior_point().value_or(domain_midpoint(base));
  gen.push_back(constant_map(open_interval(-1.0, 1.0), q0, "const-interior"));
  for (int j = 0; j < base.dim; ++j) {
    double scale = 0.25 * (base.box[static_cast<size_t>(j)].second -
                           base.box[static_cast<size_t>(j)].first);
    bool ok = false;
    for (int attempt = 0; attempt < 10 && !ok; ++attempt, scale *= 0.5) {
      ok = true;
      for (int i = -8; i <= 8 && ok; ++i) {
        auto p = q0;
        p[static_cast<size_t>(j)] += scale * (static_cast<double>(i) / 8.0);
        ok = base.contains(p);
      }
    }
    if (!ok) continue;
    SymbolicMap seg;
    seg.name = "affine-axis-" + std::to_string(j);
    seg.domain = open_interval(-1.0, 1.0);
    for (int i = 0; i < base.dim; ++i) {
      auto c = Expr::constant(q0[static_cast<size_t>(i)]);
      if (i == j) c = Expr::add(std::move(c), Expr::mul(Expr::constant(scale), t));
      seg.components.push_back(std::move(c));
    }
    gen.push_back(seg);
  }
  return gen;
}

std::vector<SymbolicMap> default_probes_into(const ConvexDescriptor& dom, bool open_domains) {
  if (static_cast<int>(dom.box.size()) != dom.dim)
    throw PreconditionError("descriptor needs a sampling box");
  std::vector<SymbolicMap> probes;
  const int n = dom.dim;
  if (n > 3) throw CapabilityError("probe families support up to 3 dimensions");

  auto unit_box = [&](bool open) {
    if (n == 1) return open ? open_interval(0.0, 1.0) : closed_interval(0.0, 1.0);
    ConvexDescriptor d;
    d.name = open ? "open-unit-box" : "unit-box";
    d.dim = n;
    Cell c;
    for (int i = 0; i < n; ++i) {
      std::vector<double> e(static_cast<size_t>(n), 0.0);
      e[static_cast<size_t>(i)] = 1.0;
      c.constraints.push_back(HalfSpace{e, 0.0, open});
      for (auto& v : e) v = -v;
      c.constraints.push_back(HalfSpace{e, 1.0, open});
    }
    d.cells = {c};
    d.box.assign(static_cast<size_t>(n), {0.0, 1.0});
    return d;
  };

  // Does dom contain every corner of its own box?  If so a closed probe may
  // cover the box exactly; otherwise probes keep open images.
  bool corners_in = true;
  for (int mask = 0; mask < (1 << n); ++mask) {
    std::vector<double> c(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
      const auto& [a, b] = dom.box[static_cast<size_t>(i)];
      c[static_cast<size_t>(i)] = (mask >> i) & 1 ? b : a;
    }
    if (!dom.contains(c)) {
      corners_in = false;
      break;
    }
  }
  const bool closed_probe = !open_domains && corners_in;
  const auto probe_dom = unit_box(!closed_probe);

  auto affine_comp = [&](int i, ExprPtr v) {
    const auto& [a, b] = dom.box[static_cast<size_t>(i)];
    return Expr::add(Expr::constant(a), Expr::mul(Expr::constant(b - a), std::move(v)));
  };

  {
    SymbolicMap m;
    m.name = "probe-affine";
    m.domain = probe_dom;
    for (int i = 0; i < n; ++i) m.components.push_back(affine_comp(i, Expr::coord(i)));
    probes.push_back(m);
  }
  {
    SymbolicMap m;
    m.name = "probe-quadratic";
    m.domain = probe_dom;
    for (int i = 0; i < n; ++i)
      m.components.push_back(affine_comp(i, Expr::mul(Expr::coord(i), Expr::coord(i))));
    probes.push_back(m);
  }
  if (n == 1 && corners_in) {
    // Flat reparametrization covering the closed box with vanishing
    // derivatives at the ends; its domain is open either way.
    SymbolicMap m;
    m.name = "probe-bridge";
    m.domain = open_interval(-0.5, 1.5);
    m.components = {affine_comp(0, Expr::ramp(Expr::coord(0)))};
    probes.push_back(m);
  }
  if (n == 1) {
    SymbolicMap m;
    m.name = "probe-collapse-2d";
    m.domain = [&] {
      ConvexDescriptor d;
      d.name = "open-unit-square";
      d.dim = 2;
      Cell c;
      c.constraints = {HalfSpace{{1.0, 0.0}, 0.0, true}, HalfSpace{{-1.0, 0.0}, 1.0, true},
                       HalfSpace{{0.0, 1.0}, 0.0, true}, HalfSpace{{0.0, -1.0}, 1.0, true}};
      d.cells = {c};
      d.box = {{0.0, 1.0}, {0.0, 1.0}};
      return d;
    }();
    m.components = {affine_comp(
        0, Expr::mul(Expr::constant(0.5), Expr::add(Expr::coord(0), Expr::coord(1))))};
    probes.push_back(m);
  }
  return probes;
}

// ---------------------------------------------------------------------------
// Handles.
// ---------------------------------------------------------------------------

DiffeologyHandle subset_diffeology(ConvexDescriptor base) {
  DiffeologyHandle D;
  D.kind = "standard-subset";
  D.base = base;
  D.generators = default_generator_plots(D.base);
  const ConvexDescriptor S = D.base;
  D.accepts = [S](const SymbolicMap& p, int K) { return plot_membership_subset(p, S, K); };
  return D;
}

DiffeologyHandle standard_diffeology(ConvexDescriptor base) {
  auto D = subset_diffeology(std::move(base));
  return D;
}

SikorskiHandle subspace_sikorski(ConvexDescriptor base) {
  SikorskiHandle F;
  F.kind = "standard-subspace";
  F.base = std::move(base);
  // Coordinate restrictions generate the subspace structure's checks.
  for (int i = 0; i < F.base.dim; ++i) {
    SymbolicMap c;
    c.name = "coord-" + std::to_string(i);
    c.domain = F.base;
    c.components = {Expr::coord(i)};
    F.generators.push_back(c);
  }
  return F;
}

ChenHandle standard_chen(ConvexDescriptor base) {
  ChenHandle C;
  C.kind = "standard-subset";
  C.base = std::move(base);
  const ConvexDescriptor S = C.base;
  C.accepts = [S](const SymbolicMap& p, int K) {
    CheckOptions o;
    o.assume_open = true;
    return plot_membership_subset(p, S, K, o);
  };
  return C;
}

ChenHandle nonstandard_interval_chen() {
  ChenHandle C;
  C.kind = "nonstandard-interval";
  C.base = closed_interval(0.0, 1.0);
  C.accepts = [](const SymbolicMap& p, int K) {
    if (p.arity_out() != 1)
      throw PreconditionError("the interval structure holds maps into [0,1]");
    if (p.is_constant()) {
      const double v = p.eval1(domain_midpoint(p.domain));
      if (v >= 0.0 && v <= 1.0) return Verdict::proven("constant map into [0,1]");
      return Verdict::failed(Witness{domain_midpoint(p.domain), 0, std::fabs(v)},
                             "constant value outside [0,1]");
    }
    CheckOptions o;
    o.assume_open = true;
    const auto pts = sample_points(p.domain, std::max(o.samples, 40), o.seed);
    for (const auto& t : pts) {
      const double v = p.eval1(t);
      if (v < -1e-12 || v > 1.0 + 1e-12)
        return Verdict::failed(Witness{t, 0, std::max(-v, v - 1.0)},
                               "image leaves [0,1] at a sampled parameter");
    }
    const Verdict smooth = is_classically_smooth(p, K, o);
    if (!smooth.accepted()) return smooth;
    // A factorization p = q o g through a smooth q on an open interval makes
    // every attained extreme value an interior extremum of q, so the
    // derivative of p must vanish wherever 0 or 1 is attained.
    for (const auto& t : pts) {
      const double v = p.eval1(t);
      if (!(v <= 1e-9 || v >= 1.0 - 1e-9)) continue;
      double residual = 0.0;
      try {
        const auto jet = p.jet(0, t, 1);
        for (int a = 0; a < p.arity_in(); ++a)
          residual = std::max(residual, std::fabs(jet.deriv(axis_index(a, 1))));
      } catch (const CapabilityError&) {
        continue;
      }
      if (residual > 1e-6)
        return Verdict::failed(
            Witness{t, 1, residual},
            "nonzero derivative where an extreme value is attained rules out a smooth "
            "factorization");
    }
    return Verdict::passed(static_cast<int>(pts.size()), K, 1e-6,
                           "necessary conditions for a smooth factorization through an open "
                           "interval");
  };
  return C;
}

// ---------------------------------------------------------------------------
// Functors.
// ---------------------------------------------------------------------------

Verdict Phi_membership(const SymbolicMap& g, const DiffeologyHandle& D, int K,
                       const CheckOptions& opts) {
  if (g.arity_out() != 1)
    throw PreconditionError("Phi membership expects a real-valued function");
  Verdict v = Verdict::proven("no generators queried");
  for (const auto& p : D.generators) {
    CheckOptions o = opts;
    o.assume_open = true;
    v = worse(v, is_classically_smooth(compose(g, p), K, o));
    if (!v.accepted()) return v;
  }
  return v;
}

Verdict Pi_membership(const SymbolicMap& p, const SikorskiHandle& F, int K,
                      const CheckOptions& opts) {
  if (p.arity_out() != F.base.dim)
    throw PreconditionError("map codomain does not match the structure's set");
  Verdict v = Verdict::proven("no generators queried");
  for (const auto& g : F.generators) {
    CheckOptions o = opts;
    o.assume_open = true;
    v = worse(v, is_classically_smooth(compose(g, p), K, o));
    if (!v.accepted()) return v;
  }
  return v;
}

Verdict Di_membership(const SymbolicMap& p, const ChenHandle& C, int K) {
  if (!p.domain.is_open())
    throw PreconditionError("Di holds maps with open domains");
  Verdict v = Verdict::proven("no probes queried");
  for (const auto& f : default_probes_into(p.domain, false)) {
    v = worse(v, C.accepts(compose(p, f), K));
    if (!v.accepted()) return v;
  }
  return v;
}

Verdict Ch_membership(const SymbolicMap& p, const DiffeologyHandle& D, int K) {
  Verdict v = Verdict::proven("no probes queried");
  for (const auto& f : default_probes_into(p.domain, true)) {
    v = worse(v, D.accepts(compose(p, f), K));
    if (!v.accepted()) return v;
  }
  return v;
}

Verdict exhaustion_membership(const SymbolicMap& p, const ChenHandle& C, int K) {
  Verdict v = Verdict::proven("no probes queried");
  for (const auto& f : default_probes_into(p.domain, true)) {
    v = worse(v, C.accepts(compose(p, f), K));
    if (!v.accepted()) return v;
  }
  return v;
}

ChenHandle Ch_of(DiffeologyHandle D) {
  ChenHandle C;
  C.kind = "transformed";
  C.base = D.base;
  C.accepts = [D = std::move(D)](const SymbolicMap& p, int K) {
    return Ch_membership(p, D, K);
  };
  return C;
}

DiffeologyHandle Di_of(ChenHandle C) {
  DiffeologyHandle D;
  D.kind = "transformed";
  D.base = C.base;
  D.accepts = [C = std::move(C)](const SymbolicMap& p, int K) {
    return Di_membership(p, C, K);
  };
  return D;
}

ChenHandle exhaustion_of(ChenHandle C) {
  ChenHandle E;
  E.kind = "transformed";
  E.base = C.base;
  E.accepts = [C = std::move(C)](const SymbolicMap& p, int K) {
    return exhaustion_membership(p, C, K);
  };
  return E;
}

Verdict nonstandard_interval_obstruction(const SymbolicMap& p, double t0) {
  if (p.arity_in() != 1 || p.arity_out() != 1)
    throw PreconditionError("obstruction check expects a map [0,1] -> [0,1]");
  const double v = p.eval1({t0});
  if (!(std::fabs(v) <= 1e-9 || std::fabs(v - 1.0) <= 1e-9))
    throw PreconditionError("p(t0) must attain 0 or 1");
  if (p.is_constant()) return Verdict::proven("constant maps are members");
  const auto& [a, b] = p.domain.box[0];
  const double h = 1e-5 * std::max(1.0, b - a);
  double d;
  if (t0 <= a + 1e-12) {
    d = (-3.0 * p.eval1({t0}) + 4.0 * p.eval1({t0 + h}) - p.eval1({t0 + 2.0 * h})) / (2.0 * h);
  } else if (t0 >= b - 1e-12) {
    d = (3.0 * p.eval1({t0}) - 4.0 * p.eval1({t0 - h}) + p.eval1({t0 - 2.0 * h})) / (2.0 * h);
  } else {
    d = (p.eval1({t0 + h}) - p.eval1({t0 - h})) / (2.0 * h);
  }
  if (std::fabs(d) > 1e-6)
    return Verdict::failed(
        Witness{{t0}, 1, std::fabs(d)},
        "a smooth factorization through an open interval forces a vanishing derivative at an "
        "attained extreme");
  return Verdict::passed(1, 1, 1e-6,
                         "derivative vanishes at the extreme (necessary condition only)");
}

SymbolicMap bump_build(const std::vector<SymbolicMap>& h_list, const std::vector<double>& x0) {
  if (h_list.empty()) throw PreconditionError("bump_build needs at least one generator");
  ExprPtr acc = Expr::constant(1.0);
  for (const auto& hmap : h_list) {
    if (hmap.arity_out() != 1)
      throw PreconditionError("bump generators must be real-valued");
    const double c = hmap.eval1(x0);
    if (!(c > 0.0 && c < 1.0))
      throw PreconditionError("x0 lies outside the basic open: generator value not in (0,1)");
    const auto u = hmap.components[0];
    // Rise on (c/4, 3c/4), plateau 1 around c, fall on (c + d/4, c + 3d/4)
    // with d = 1 - c; the factor is exactly 1 at u = c and supported in
    // (c/4, c + 3d/4) which sits inside (0,1).
    const double d = 1.0 - c;
    const auto rise = Expr::ramp(Expr::mul(Expr::sub(u, Expr::constant(0.25 * c)),
                                           Expr::constant(1.0 / (0.5 * c))));
    const auto fall = Expr::ramp(Expr::mul(Expr::sub(Expr::constant(c + 0.75 * d), u),
                                           Expr::constant(1.0 / (0.5 * d))));
    acc = Expr::mul(acc, Expr::mul(rise, fall));
  }
  SymbolicMap rho;
  rho.name = "bump";
  rho.domain = h_list[0].domain;
  rho.components = {acc};
  return rho;
}

Verdict locally_closed_at(const ConvexDescriptor& S, const std::vector<double>& s) {
  if (static_cast<int>(s.size()) != S.dim) throw PreconditionError("point dimension mismatch");
  const auto cl = S.closure();
  if (!cl.contains(s)) throw PreconditionError("point is not in the closure of the set");
  if (S.is_closed()) return Verdict::proven("closed sets are locally closed");
  if (S.is_open()) return Verdict::proven("open sets are locally closed");
  // Directions to probe for points of closure(S) \ S accumulating at s.
  std::vector<std::vector<double>> dirs;
  for (int i = 0; i < S.dim; ++i) {
    for (double sign : {1.0, -1.0}) {
      std::vector<double> d(static_cast<size_t>(S.dim), 0.0);
      d[static_cast<size_t>(i)] = sign;
      dirs.push_back(d);
    }
  }
  for (int i = 0; i < S.dim; ++i) {
    for (int j = i + 1; j < S.dim; ++j) {
      for (double si : {1.0, -1.0}) {
        for (double sj : {1.0, -1.0}) {
          std::vector<double> d(static_cast<size_t>(S.dim), 0.0);
          d[static_cast<size_t>(i)] = si * M_SQRT1_2;
          d[static_cast<size_t>(j)] = sj * M_SQRT1_2;
          dirs.push_back(d);
        }
      }
    }
  }
  std::mt19937 rng(5u);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int t = 0; t < 32; ++t) {
    std::vector<double> d(static_cast<size_t>(S.dim));
    double norm = 0.0;
    for (auto& v : d) {
      v = gauss(rng);
      norm += v * v;
    }
    norm = std::sqrt(norm);
    if (norm < 1e-12) continue;
    for (auto& v : d) v /= norm;
    dirs.push_back(d);
  }
  int probes = 0;
  for (const auto& d : dirs) {
    bool all_bad = true;
    std::vector<double> q;
    for (int i = 3; i <= 20 && all_bad; ++i) {
      const double rho = std::ldexp(1.0, -i);
      q.assign(s.begin(), s.end());
      for (int k = 0; k < S.dim; ++k) q[static_cast<size_t>(k)] += rho * d[static_cast<size_t>(k)];
      ++probes;
      all_bad = cl.contains(q) && !S.contains(q);
    }
    if (all_bad) {
      std::ostringstream os;
      os << "approaching sequence s + 2^-n d through closure(S) \\ S with d = (";
      for (int k = 0; k < S.dim; ++k) os << (k ? ", " : "") << d[static_cast<size_t>(k)];
      os << ")";
      return Verdict::failed(Witness{q, 0, 0.0}, os.str());
    }
  }
  return Verdict::passed(probes, 0, 0.0,
                         "no sampled sequence through closure(S) \\ S accumulates at s");
}

}  // namespace cvx::structures
