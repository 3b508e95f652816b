// Acceptance gate: one line per criterion, nonzero exit when any fails.
//
// Every check pins its tolerances inline so a regression in either the
// numerics or the structure layer flips the corresponding line to FAIL.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "convexlab/fseries.hpp"
#include "convexlab/kernel_bounds.hpp"
#include "convexlab/kernels.hpp"
#include "convexlab/membership.hpp"
#include "convexlab/report.hpp"

using namespace cvx;
using namespace cvx::structures;

namespace {

using cex::in_X;
using cex::PointR2;

using clock_type = std::chrono::steady_clock;

double seconds_since(clock_type::time_point t0) {
  return std::chrono::duration<double>(clock_type::now() - t0).count();
}

int g_failures = 0;

void report(int idx, const std::string& label, bool ok, double secs, const std::string& note) {
  std::printf("criterion %d (%s): %s (%.1f s)%s%s\n", idx, label.c_str(), ok ? "PASS" : "FAIL",
              secs, note.empty() ? "" : " -- ", note.c_str());
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

SymbolicMap map1(std::string name, ConvexDescriptor dom, ExprPtr c0) {
  SymbolicMap m;
  m.name = std::move(name);
  m.domain = std::move(dom);
  m.components = {std::move(c0)};
  return m;
}

SymbolicMap map2(std::string name, ConvexDescriptor dom, ExprPtr c0, ExprPtr c1) {
  SymbolicMap m;
  m.name = std::move(name);
  m.domain = std::move(dom);
  m.components = {std::move(c0), std::move(c1)};
  return m;
}

const cex::FSeries& series_default() {
  static cex::FSeries f = [] {
    cex::SeriesConfig cfg;
    cfg.cm_cache_path = "cm_cache_default.json";
    return cex::FSeries(cfg);
  }();
  return f;
}

// Finer truncation so finite-difference cross-checks are not noise limited.
const cex::FSeries& series_fine() {
  static cex::FSeries f = [] {
    cex::SeriesConfig cfg;
    cfg.tol = 1e-10;
    cfg.cm_cache_path = "cm_cache_fine.json";
    return cex::FSeries(cfg);
  }();
  return f;
}

SymbolicMap f_map() {
  return map1("f", descriptor_X(),
              Expr::cex_f(&series_fine(), Expr::coord(0), Expr::coord(1)));
}

ConvexDescriptor real_space3() {
  ConvexDescriptor d;
  d.name = "R^3";
  d.dim = 3;
  d.box = {{-2.0, 2.0}, {-2.0, 2.0}, {-2.0, 2.0}};
  return d;
}

// --------------------------------------------------------------------------
// 1. Blow-up closed form: the order-(k+1) y-derivative of the k-th series
//    term at x = -1/k equals prod_{i=0}^{k} (k + 1/2 - i) * y^{-1/2}.
// --------------------------------------------------------------------------
void criterion_1() {
  const auto t0 = clock_type::now();
  bool ok = true;
  std::string note;
  for (int k = 1; k <= 3 && ok; ++k) {
    double factor = 1.0;
    for (int i = 0; i <= k; ++i) factor *= static_cast<double>(k) + 0.5 - static_cast<double>(i);
    MultiIndex alpha;
    alpha.a[1] = k + 1;
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    const int n = 50;
    for (int i = 0; i < n; ++i) {
      const double ly =
          std::log(1e-8) + (std::log(0.5) - std::log(1e-8)) * static_cast<double>(i) / (n - 1);
      const double y = std::exp(ly);
      const auto jet = kernels::term_jet(kernels::KernelIndex(k), -1.0 / k, y, k + 1);
      const double d = jet.deriv(alpha);
      const double expect = factor * std::pow(y, -0.5);
      const double rel = std::fabs(d - expect) / std::fabs(expect);
      if (rel > 1e-9) {
        ok = false;
        note = "k=" + std::to_string(k) + " rel err " + std::to_string(rel) +
               " at y=" + std::to_string(y);
        break;
      }
      const double ld = std::log(std::fabs(d));
      sx += ly;
      sy += ld;
      sxx += ly * ly;
      sxy += ly * ld;
    }
    if (!ok) break;
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    if (std::fabs(slope + 0.5) > 0.02) {
      ok = false;
      note = "k=" + std::to_string(k) + " log-log slope " + std::to_string(slope);
    }
  }
  const double secs = seconds_since(t0);
  if (ok && secs >= 10.0) {
    ok = false;
    note = "runtime limit 10 s exceeded";
  }
  report(1, "blow-up closed form", ok, secs, note);
}

// --------------------------------------------------------------------------
// 2. Certified evaluation: tight enclosures on random points of X, nesting
//    under truncation refinement, exact zero for y >= 2, positive value at
//    the origin.
// --------------------------------------------------------------------------
void criterion_2() {
  const auto& f = series_default();  // table cached before the timer starts
  const auto t0 = clock_type::now();
  bool ok = true;
  std::string note;

  std::mt19937 rng(20260824u);
  std::uniform_real_distribution<double> ux(-2.0, 3.0);
  std::uniform_real_distribution<double> uy(1e-6, 2.5);
  std::uniform_real_distribution<double> ur(0.0, 3.0);
  std::vector<PointR2> pts;
  while (pts.size() < 80) {
    PointR2 p{ux(rng), uy(rng)};
    if (in_X(p)) pts.push_back(p);
  }
  while (pts.size() < 100) pts.push_back({ur(rng), 0.0});  // points on the closed ray

  for (size_t i = 0; i < pts.size() && ok; ++i) {
    const auto cv = f.value(pts[i], 1e-8);
    if (cv.enclosure.width() > 1e-8) {
      ok = false;
      note = "enclosure width " + std::to_string(cv.enclosure.width());
    }
  }
  for (size_t i = 0; i < 20 && ok; ++i) {
    const auto coarse = f.value(pts[i], 1e-6);
    const auto fine = f.value(pts[i], 1e-8);
    if (fine.enclosure.lo() < coarse.enclosure.lo() - 1e-15 ||
        fine.enclosure.hi() > coarse.enclosure.hi() + 1e-15) {
      ok = false;
      note = "refined enclosure not nested at sample " + std::to_string(i);
    }
  }
  if (ok) {
    for (const PointR2 p : {PointR2{-1.0, 2.0}, PointR2{0.5, 2.0}, PointR2{2.0, 2.3},
                            PointR2{-2.0, 3.0}}) {
      const auto cv = f.value(p, 1e-8);
      if (cv.enclosure.lo() != 0.0 || cv.enclosure.hi() != 0.0) {
        ok = false;
        note = "enclosure on {y >= 2} not exactly [0,0]";
        break;
      }
    }
  }
  if (ok && !(f.value({0.0, 0.0}, 1e-8).enclosure.lo() > 0.0)) {
    ok = false;
    note = "f(0,0) enclosure not strictly positive";
  }
  const double secs = seconds_since(t0);
  if (ok && secs >= 30.0) {
    ok = false;
    note = "runtime limit 30 s exceeded";
  }
  report(2, "certified evaluation", ok, secs, note);
}

// --------------------------------------------------------------------------
// 3. Normalization table soundness: a dense jet oracle over the support
//    strip never exceeds c_m, and the table builds within budget.
// --------------------------------------------------------------------------
void criterion_3() {
  const auto build0 = clock_type::now();
  const auto table = bounds::CmTable::load_or_compute("cm_cache_default.json", 8);
  const double build_secs = seconds_since(build0);

  const auto t0 = clock_type::now();
  bool ok = build_secs < 60.0;
  std::string note = ok ? "" : "table build exceeded 60 s";

  const int nx = 450, ny = 225;  // 101250 >= 1e5 dense oracle points
  for (int m = 1; m <= 8 && ok; ++m) {
    const double cm = table.c(m);
    const auto idx = cvx::detail::index_table(2, m);
    for (int i = 0; i <= nx && ok; ++i) {
      const double x = -1.5 + 4.5 * static_cast<double>(i) / nx;
      for (int j = 0; j <= ny && ok; ++j) {
        const double y = -1.2 + 3.25 * static_cast<double>(j) / ny;
        const auto jet = kernels::term_jet(kernels::KernelIndex(m), x, y, m);
        for (const auto& alpha : idx->indices) {
          if (std::fabs(jet.deriv(alpha)) > cm) {
            ok = false;
            note = "|d^(" + std::to_string(alpha[0]) + "," + std::to_string(alpha[1]) +
                   ") term_" + std::to_string(m) + "| exceeds c_m at (" + std::to_string(x) +
                   "," + std::to_string(y) + ")";
            break;
          }
        }
      }
    }
  }
  report(3, "normalization table soundness", ok, build_secs + seconds_since(t0), note);
}

// --------------------------------------------------------------------------
// 4. Diffeological smoothness of f: order-4 smoothness of f composed with
//    the test plots, including parameters that land on the boundary ray.
// --------------------------------------------------------------------------
void criterion_4() {
  const auto t0 = clock_type::now();
  bool ok = true;
  std::string note;
  const auto f = f_map();
  const auto t = Expr::coord(0);
  CheckOptions opts;
  opts.tol = 1e-4;

  const auto shifted = map2("t->(t,1+t^2)", open_interval(-1.0, 1.0), t,
                            Expr::add(Expr::constant(1.0), Expr::mul(t, t)));
  const auto parab = map2("t->(t,t^2)", open_interval(-1.0, 1.0), t, Expr::mul(t, t));
  const auto cst =
      map2("const", open_interval(-1.0, 1.0), Expr::constant(0.5), Expr::constant(0.0));

  for (const auto* plot : {&shifted, &parab, &cst}) {
    const auto v = is_classically_smooth(compose(f, *plot), 4, opts);
    if (!v.accepted()) {
      ok = false;
      note = "composition with " + plot->name + " rejected: " + v.reason;
      break;
    }
  }
  report(4, "diffeological smoothness of f", ok, seconds_since(t0), note);
}

// --------------------------------------------------------------------------
// 5. Boundedness on U_k versus blow-up off it: certified derivative bounds
//    hold with positive margin at samples accumulating at the origin, while
//    the order-(k+2) derivative sweep along x = -1/(k+1) grows without
//    bound.
// --------------------------------------------------------------------------
void criterion_5() {
  const auto t0 = clock_type::now();
  const auto& f = series_default();
  bool ok = true;
  std::string note;

  for (int k = 1; k <= 2 && ok; ++k) {
    const auto cert = cex::verify_ck_bounded(f, k + 1, 8);
    if (!cert.bounded) {
      ok = false;
      note = "boundedness certificate failed for k=" + std::to_string(k);
      break;
    }
    // 1e3 samples accumulating at the origin on the x >= 0 side of X (all
    // of X lies inside every U_k; these samples approach the delicate
    // corner where the ray meets the open half plane).
    const auto idx = cvx::detail::index_table(2, k + 1);
    double sampled_max = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const double r = std::pow(2.0, -1.0 - 29.0 * static_cast<double>(i) / 999.0);
      PointR2 p{r, 0.0};
      if (i % 5 != 0) {
        const double theta = 1.5707963267948966 * static_cast<double>(i % 7 + 1) / 8.0;
        p = {r * std::cos(theta), r * std::sin(theta)};
      }
      const auto jet = f.jet(p, k + 1, 1e-8);
      for (const auto& alpha : idx->indices)
        sampled_max = std::max(sampled_max, std::fabs(jet.deriv(alpha)));
    }
    if (!(cert.analytic_bound - sampled_max > 0.0)) {
      ok = false;
      note = "no positive margin for k=" + std::to_string(k);
      break;
    }

    // Divergence sweep of the order-(k+2) y-derivative along x = -1/(k+1).
    // The start index skips the regime where lower-index terms still mask
    // the divergent one; past it the certified lower bounds must grow
    // monotonically by three orders of magnitude.
    const int j0 = k == 1 ? 4 : 15;
    const int j1 = k == 1 ? 13 : 26;
    MultiIndex alpha;
    alpha.a[1] = k + 2;
    double first = -1.0, prev = -1.0;
    for (int j = j0; j <= j1 && ok; ++j) {
      const double y = std::pow(4.0, -j);
      const auto d = f.partial({-1.0 / (k + 1), y}, alpha, 1e-8);
      const double lb = d.enclosure.contains(0.0)
                            ? 0.0
                            : std::min(std::fabs(d.enclosure.lo()), std::fabs(d.enclosure.hi()));
      if (first < 0.0) {
        first = lb;
      } else if (lb <= prev) {
        ok = false;
        note = "sweep not monotone for k=" + std::to_string(k) + " at step " + std::to_string(j);
      }
      prev = lb;
    }
    if (ok && !(first > 0.0 && prev / first > 1e3)) {
      ok = false;
      note = "sweep growth ratio " + std::to_string(prev / first) + " below 1e3";
    }
  }
  report(5, "boundedness with positive margin vs divergence sweep", ok, seconds_since(t0), note);
}

// --------------------------------------------------------------------------
// 6. Boundary-extension criterion: accepts f on X and polynomials on the
//    pyramid, rejects phi_1 on the half line at order 2.
// --------------------------------------------------------------------------
void criterion_6() {
  const auto t0 = clock_type::now();
  bool ok = true;
  std::string note;
  KrieglOptions opts;
  opts.boundary_samples = 200;
  opts.tol = 1e-4;

  const auto vf = kriegl_check(f_map(), descriptor_X(), 3, opts);
  if (!vf.accepted() || vf.samples <= 0) {
    ok = false;
    note = "f on X rejected: " + vf.reason;
  }

  if (ok) {
    const auto x = Expr::coord(0);
    const auto y = Expr::coord(1);
    const auto z = Expr::coord(2);
    const auto poly =
        map1("x^2y+z^3", square_pyramid(),
             Expr::add(Expr::mul(Expr::mul(x, x), y), Expr::mul(Expr::mul(z, z), z)));
    const auto vp = kriegl_check(poly, square_pyramid(), 3, opts);
    if (!vp.accepted()) {
      ok = false;
      note = "polynomial on pyramid rejected: " + vp.reason;
    }
  }

  if (ok) {
    const auto x = Expr::coord(0);
    const auto phi1 = map1("phi_1", halfline(), Expr::phi(1, x));
    const auto vb = kriegl_check(phi1, halfline(), 2, opts);
    if (vb.kind != VerdictKind::FailedWitness || !vb.witness.has_value() ||
        vb.witness->order != 2) {
      ok = false;
      note = "phi_1 on the half line not rejected at order 2";
    }
  }
  report(6, "boundary-extension criterion", ok, seconds_since(t0), note);
}

// --------------------------------------------------------------------------
// 7. Functor laws: Di o Ch round trip agrees on 20 queries, the exhaustion
//    contains and idempotently extends every structure, and the nonstandard
//    interval structure rejects the identity with its derivative
//    obstruction while its exhaustion accepts it.
// --------------------------------------------------------------------------
void criterion_7() {
  const auto t0 = clock_type::now();
  bool ok = true;
  std::string note;
  const auto t = Expr::coord(0);
  const auto u = Expr::coord(0);
  const auto v = Expr::coord(1);

  const auto DR = standard_diffeology(real_line());
  const auto DX = subset_diffeology(descriptor_X());
  const auto RR = Di_of(Ch_of(DR));
  const auto RX = Di_of(Ch_of(DX));

  std::vector<SymbolicMap> into_R;
  into_R.push_back(map1("id", open_interval(-1.0, 1.0), t));
  into_R.push_back(map1("t^2", open_interval(-1.0, 1.0), Expr::mul(t, t)));
  into_R.push_back(map1("exp", open_interval(-1.0, 1.0), Expr::exp_of(t)));
  into_R.push_back(map1("const", open_interval(-1.0, 1.0), Expr::constant(0.5)));
  into_R.push_back(map1("ramp", open_interval(-0.5, 1.5), Expr::ramp(t)));
  into_R.push_back(
      map1("cubic", open_interval(-1.0, 1.0), Expr::add(Expr::mul(Expr::mul(t, t), t), t)));
  into_R.push_back(map1("bridge", open_interval(-2.0, 1.0), Expr::bridge(t)));
  into_R.push_back(map1("cutoff", open_interval(0.0, 3.0), Expr::cutoff(t)));
  into_R.push_back(map1("mean", open_box2(0.0, 1.0, 0.0, 1.0),
                        Expr::mul(Expr::constant(0.5), Expr::add(u, v))));
  into_R.push_back(map1("phi_1", open_interval(-1.0, 1.0), Expr::phi(1, t)));

  std::vector<SymbolicMap> into_X;
  into_X.push_back(map2("parabola", open_interval(-1.0, 1.0), t, Expr::mul(t, t)));
  into_X.push_back(map2("shifted", open_interval(-1.0, 1.0), t,
                        Expr::add(Expr::constant(1.0), Expr::mul(t, t))));
  into_X.push_back(
      map2("const-in", open_interval(-1.0, 1.0), Expr::constant(0.0), Expr::constant(0.0)));
  into_X.push_back(
      map2("const-ray", open_interval(-1.0, 1.0), Expr::constant(1.0), Expr::constant(0.0)));
  into_X.push_back(
      map2("const-out", open_interval(-1.0, 1.0), Expr::constant(-1.0), Expr::constant(0.0)));
  into_X.push_back(map2("axis", open_interval(-2.0, 2.0), t, Expr::constant(0.0)));
  into_X.push_back(map2("level-1", open_interval(-1.0, 1.0), t, Expr::constant(1.0)));
  into_X.push_back(map2("exp-graph", open_interval(-1.0, 1.0), t, Expr::exp_of(t)));
  into_X.push_back(
      map2("quartic", open_interval(-1.0, 1.0), t, Expr::mul(Expr::mul(t, t), Expr::mul(t, t))));
  into_X.push_back(
      map2("dipped", open_interval(-2.0, 2.0), t, Expr::sub(Expr::mul(t, t), Expr::constant(1.0))));

  int agree = 0, total = 0;
  for (const auto& p : into_R) {
    if (DR.accepts(p, 3).kind == RR.accepts(p, 3).kind) ++agree;
    ++total;
  }
  for (const auto& p : into_X) {
    if (DX.accepts(p, 3).kind == RX.accepts(p, 3).kind) ++agree;
    ++total;
  }
  if (total != 20 || agree != 20) {
    ok = false;
    note = "round-trip agreement " + std::to_string(agree) + "/" + std::to_string(total);
  }

  const auto CI = standard_chen(closed_interval(0.0, 1.0));
  const auto CN = nonstandard_interval_chen();
  const auto EI = exhaustion_of(CI);
  const auto EN = exhaustion_of(CN);
  const auto EEN = exhaustion_of(EN);

  std::vector<SymbolicMap> maps;
  maps.push_back(map1("id", closed_interval(0.0, 1.0), t));
  maps.push_back(map1("t^2", closed_interval(0.0, 1.0), Expr::mul(t, t)));
  maps.push_back(map1("const", closed_interval(0.0, 1.0), Expr::constant(0.5)));
  maps.push_back(map1("ramp", open_interval(-0.5, 1.5), Expr::ramp(t)));
  maps.push_back(map1("escape", open_interval(-1.0, 1.0), Expr::add(t, Expr::constant(1.5))));
  for (const auto& m : maps) {
    if (!ok) break;
    if (CI.accepts(m, 3).accepted() && !EI.accepts(m, 3).accepted()) {
      ok = false;
      note = "E does not contain the standard structure on " + m.name;
    }
    if (ok && CN.accepts(m, 3).accepted() && !EN.accepts(m, 3).accepted()) {
      ok = false;
      note = "E does not contain the nonstandard structure on " + m.name;
    }
    if (ok && EN.accepts(m, 3).accepted() != EEN.accepts(m, 3).accepted()) {
      ok = false;
      note = "E not idempotent on " + m.name;
    }
  }

  if (ok) {
    const auto id = maps[0];
    const auto rej = CN.accepts(id, 3);
    const auto obs = nonstandard_interval_obstruction(id, 0.0);
    if (rej.kind != VerdictKind::FailedWitness || !rej.witness.has_value() ||
        rej.witness->order != 1 || obs.kind != VerdictKind::FailedWitness ||
        std::fabs(obs.witness->residual - 1.0) > 1e-6) {
      ok = false;
      note = "identity not rejected with |p'(0)| = 1 obstruction";
    } else if (!EN.accepts(id, 3).accepted() || !CI.accepts(id, 3).accepted()) {
      ok = false;
      note = "exhaustion or standard structure rejects the identity";
    }
  }
  report(7, "functor laws", ok, seconds_since(t0), note);
}

// --------------------------------------------------------------------------
// 8. Locality: X fails local closedness at the origin with a replayable
//    witness sequence, passes away from it, and the bump construction
//    satisfies its sampled invariants.
// --------------------------------------------------------------------------
void criterion_8() {
  const auto t0 = clock_type::now();
  bool ok = true;
  std::string note;
  const auto X = descriptor_X();

  const auto at_origin = locally_closed_at(X, {0.0, 0.0});
  if (at_origin.kind != VerdictKind::FailedWitness || !at_origin.witness.has_value() ||
      !(at_origin.witness->point[0] < 0.0) || at_origin.witness->point[1] != 0.0) {
    ok = false;
    note = "no witness sequence along the negative axis at the origin";
  }

  std::mt19937 rng(5u);
  std::uniform_real_distribution<double> ux(-2.0, 2.0);
  std::uniform_real_distribution<double> uy(0.01, 2.0);
  for (int i = 0; i < 100 && ok; ++i) {
    std::vector<double> p;
    if (i < 50) {
      p = {0.02 + (2.0 - 0.02) * static_cast<double>(i) / 49.0, 0.0};
    } else {
      p = {ux(rng), uy(rng)};
    }
    if (!locally_closed_at(X, p).accepted()) {
      ok = false;
      note = "spurious failure at (" + std::to_string(p[0]) + "," + std::to_string(p[1]) + ")";
    }
  }

  if (ok) {
    const auto box = open_box2(-1.0, 1.0, -1.0, 1.0);
    const auto cx = Expr::coord(0);
    const auto cy = Expr::coord(1);
    auto aff = [&](ExprPtr c) {
      return Expr::mul(Expr::constant(0.5), Expr::add(std::move(c), Expr::constant(1.0)));
    };
    std::vector<SymbolicMap> hs;
    hs.push_back(map1("h1", box, aff(cx)));
    hs.push_back(map1("h2", box, aff(cy)));
    const std::vector<double> x0{0.2, -0.3};
    const auto rho = bump_build(hs, x0);
    if (rho.eval1(x0) != 1.0) {
      ok = false;
      note = "bump not exactly 1 at its center";
    }
    std::uniform_real_distribution<double> un(-1.0, 1.0);
    for (int i = 0; i < 10000 && ok; ++i) {
      const std::vector<double> p{un(rng), un(rng)};
      const double val = rho.eval1(p);
      if (!(val >= 0.0 && val <= 1.0)) {
        ok = false;
        note = "bump leaves [0,1]";
        break;
      }
      if (val > 0.0) {
        for (size_t j = 0; j < hs.size(); ++j) {
          const double hv = hs[j].eval1(p);
          const double c = hs[j].eval1(x0);
          if (!(hv > 0.25 * c && hv < c + 0.75 * (1.0 - c))) {
            ok = false;
            note = "bump support leaves the basic open set";
            break;
          }
        }
      }
    }
  }
  report(8, "locality and bump invariants", ok, seconds_since(t0), note);
}

// --------------------------------------------------------------------------
// 9. Reflexivity report: tension with a blow-up certificate on X, clean
//    consistency on the pyramid and the orthant for polynomial/exponential
//    candidates backed by extension witnesses.
// --------------------------------------------------------------------------
void criterion_9() {
  const auto t0 = clock_type::now();
  bool ok = true;
  std::string note;

  {
    ReflexivityCandidate cf;
    cf.g = f_map();
    cf.fseries = &series_fine();
    const auto rep = reflexivity_report(descriptor_X(), {cf}, 3);
    if (rep.entries.size() != 1 || !rep.entries[0].tension || !rep.any_tension ||
        !rep.entries[0].blowup.has_value() || !rep.entries[0].blowup->unbounded) {
      ok = false;
      note = "no tension finding with blow-up certificate on X";
    }
  }

  const auto x = Expr::coord(0);
  const auto y = Expr::coord(1);
  const auto z = Expr::coord(2);

  auto with_witness = [](SymbolicMap g, ConvexDescriptor ambient) {
    ReflexivityCandidate c;
    auto w = g;
    w.name += " extended";
    w.domain = std::move(ambient);
    c.g = std::move(g);
    c.witness = {std::move(w)};
    return c;
  };

  if (ok) {
    auto wide3 = real_space3();
    std::vector<ReflexivityCandidate> cands;
    cands.push_back(with_witness(map1("x", square_pyramid(), x), wide3));
    cands.push_back(with_witness(
        map1("x^2y+z^3", square_pyramid(),
             Expr::add(Expr::mul(Expr::mul(x, x), y), Expr::mul(Expr::mul(z, z), z))),
        wide3));
    cands.push_back(with_witness(map1("exp(x+y)", square_pyramid(), Expr::exp_of(Expr::add(x, y))),
                                 wide3));
    cands.push_back(
        with_witness(map1("x+y+z", square_pyramid(), Expr::add(Expr::add(x, y), z)), wide3));
    cands.push_back(
        with_witness(map1("xyz", square_pyramid(), Expr::mul(Expr::mul(x, y), z)), wide3));
    const auto rep = reflexivity_report(square_pyramid(), cands, 3);
    for (const auto& e : rep.entries) {
      if (!e.consistent || e.tension) {
        ok = false;
        note = "pyramid candidate " + e.name + " not consistent";
        break;
      }
    }
    if (ok && rep.any_tension) {
      ok = false;
      note = "spurious tension on the pyramid";
    }
  }

  if (ok) {
    auto wide2 = real_plane();
    wide2.box = {{-1.0, 4.0}, {-1.0, 4.0}};
    std::vector<ReflexivityCandidate> cands;
    cands.push_back(with_witness(map1("x", orthant(2), x), wide2));
    cands.push_back(with_witness(map1("x+y^2", orthant(2), Expr::add(x, Expr::mul(y, y))), wide2));
    cands.push_back(
        with_witness(map1("exp(x+y)", orthant(2), Expr::exp_of(Expr::add(x, y))), wide2));
    cands.push_back(with_witness(map1("xy", orthant(2), Expr::mul(x, y)), wide2));
    cands.push_back(with_witness(
        map1("x^2+y^2", orthant(2), Expr::add(Expr::mul(x, x), Expr::mul(y, y))), wide2));
    const auto rep = reflexivity_report(orthant(2), cands, 3);
    for (const auto& e : rep.entries) {
      if (!e.consistent || e.tension) {
        ok = false;
        note = "orthant candidate " + e.name + " not consistent";
        break;
      }
    }
    if (ok && rep.any_tension) {
      ok = false;
      note = "spurious tension on the orthant";
    }
  }
  report(9, "reflexivity report", ok, seconds_since(t0), note);
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  if (g_failures > 0) {
    std::printf("acceptance: %d criterion(s) failed\n", g_failures);
    return 1;
  }
  std::printf("acceptance: all 9 criteria passed\n");
  return 0;
}
