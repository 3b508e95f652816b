#include "convexlab/fseries.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "convexlab/errors.hpp"

namespace cvx::cex {

namespace {

double pow2(int m) { return std::ldexp(1.0, m); }

/// Certified lower bound for h_m on { (x,y) in X : x >= 0 }: there
/// h_m >= (1/m) r(1/m) > 0.  Evaluated at the point, not through the
/// endpoint-strip split, so the bound stays positive for every m.
double h_floor(int m) {
  const Interval eps = Interval(1.0) / Interval(static_cast<double>(m));
  Interval r;
  if (m == 1) {
    r = Interval(1.0);  // r(1) = 1 exactly
  } else {
    r = kernels::ramp_taylor<Interval>(eps, 0)[0];
  }
  return (eps * r).lo();
}

}  // namespace

FSeries::FSeries(SeriesConfig cfg) : cfg_(std::move(cfg)) {
  cfg_.kernel.validate();
  if (!(cfg_.tol > 0.0)) throw PreconditionError("series tolerance must be positive");
  const int max_index = std::min(
      bounds::kMaxBoundOrder,
      std::max(truncation(cfg_.tol, 0), truncation(cfg_.tol, cfg_.kernel.max_jet_order)));
  table_ = cfg_.cm_cache_path.empty()
               ? bounds::CmTable::compute(max_index, cfg_.kernel)
               : bounds::CmTable::load_or_compute(cfg_.cm_cache_path, max_index, cfg_.kernel);
}

int FSeries::truncation(double tol, int order) const {
  if (!(tol > 0.0)) throw PreconditionError("tolerance must be positive");
  const int from_tol = static_cast<int>(std::ceil(std::log2(1.0 / tol))) + 1;
  return std::max({1, from_tol, order + 1});
}

CertifiedValue FSeries::value(PointR2 p, double tol) const {
  if (!in_X(p)) throw DomainError("point is outside X");
  if (p.y >= 2.0) return CertifiedValue{Interval(0.0), 0, 0.0};
  const int M = truncation(tol, 0);
  if (M > table_.max_index)
    throw CapabilityError("tolerance finer than the configured series table");
  Interval acc(0.0);
  for (int m = 1; m <= M; ++m) {
    const Interval hv = kernels::h_value<Interval>(m, Interval(p.x), Interval(p.y));
    Interval tv(0.0);
    if (hv.hi() > 0.0) tv = kernels::phi_taylor_enclosure(m, hv, 0)[0];
    acc += tv / (Interval(table_.c(m)) * Interval(pow2(m)));
  }
  const double tail = pow2(-M);
  return CertifiedValue{acc + Interval(0.0, tail), M, tail};
}

CertifiedValue FSeries::partial(PointR2 p, MultiIndex alpha, double tol) const {
  if (!in_X(p)) throw DomainError("point is outside X");
  if (alpha[2] != 0 || alpha[0] < 0 || alpha[1] < 0)
    throw PreconditionError("alpha must be a 2d multi-index");
  const int K = alpha.order();
  if (K == 0) return value(p, tol);
  if (K > cfg_.kernel.max_jet_order)
    throw CapabilityError("partial order exceeds configured jet cap");
  if (p.y >= 2.0) return CertifiedValue{Interval(0.0), 0, 0.0};
  const int M = truncation(tol, K);
  if (M > table_.max_index)
    throw CapabilityError("tolerance finer than the configured series table");
  Interval acc(0.0);
  for (int m = 1; m <= M; ++m) {
    const auto tj = kernels::term_jet_enclosure(m, Interval(p.x), Interval(p.y), K);
    acc += tj.deriv(alpha) / (Interval(table_.c(m)) * Interval(pow2(m)));
  }
  const double tail = pow2(-M);
  return CertifiedValue{acc + Interval(-tail, tail), M, tail};
}

Taylor<double> FSeries::jet(PointR2 p, int K, double tol) const {
  if (!in_X(p)) throw DomainError("point is outside X");
  if (K < 0 || K > cfg_.kernel.max_jet_order)
    throw CapabilityError("jet order exceeds configured cap");
  const int M = truncation(tol, K);
  if (M > table_.max_index)
    throw CapabilityError("tolerance finer than the configured series table");
  Taylor<double> acc(2, K);
  for (int m = 1; m <= M; ++m) {
    const auto tj = kernels::term_jet(kernels::KernelIndex(m), p.x, p.y, K, cfg_.kernel);
    acc = acc + tj * (1.0 / (table_.c(m) * pow2(m)));
  }
  return acc;
}

BlowupCertificate verify_blowup(const FSeries& f, int k, int steps) {
  if (k < 1) throw PreconditionError("blow-up index must be >= 1");
  if (k + 1 > f.config().kernel.max_jet_order)
    throw CapabilityError("blow-up check needs jet order k+1 within the cap");
  BlowupCertificate cert;
  cert.k = k;
  const double x = -1.0 / static_cast<double>(k);
  const MultiIndex alpha{{0, k + 1, 0}};
  // Everything except the k-th term stays bounded near (x, 0): terms with
  // m > k are flat there (the ramp argument is negative) and contribute at
  // most the tail 2^{-(k+1)}; terms with m < k have h_m >= delta_m > 0.
  Interval rem(0.0, pow2(-(k + 1)));
  for (int m = 1; m < k; ++m) {
    const Interval eps = Interval(1.0) / Interval(static_cast<double>(m));
    const Interval t = Interval(x) + eps;  // in (0,1) since 1/m > 1/k
    const double delta = (eps * kernels::ramp_taylor<Interval>(t, 0)[0]).lo();
    const double bound = bounds::term_deriv_bound_from(m, alpha, delta);
    rem += Interval(0.0, bound) / (Interval(f.table().c(m)) * Interval(pow2(m)));
  }
  const double remainder = rem.hi();
  // Walk y down by factors of 4 and keep the samples where the certified
  // lower bound clearly dominates the bounded remainder; those are the
  // asymptotic regime where |deriv| must roughly double per step.
  std::vector<size_t> asym;
  for (int j = 1; j <= 60 && static_cast<int>(asym.size()) < steps; ++j) {
    const double y = std::ldexp(1.0, -2 * j);  // 4^{-j}
    const auto cv = f.partial({x, y}, alpha, f.config().tol);
    cert.samples.push_back(BlowupSample{y, cv.enclosure});
    if (abs(cv.enclosure).mig() > 5.0 * std::max(remainder, 1e-6))
      asym.push_back(cert.samples.size() - 1);
  }
  if (static_cast<int>(asym.size()) < std::min(steps, 3)) return cert;  // not certified
  // Least-squares slope of log |deriv| against log y on asymptotic samples.
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i : asym) {
    const double lx = std::log(cert.samples[i].y);
    const double ly = std::log(abs(cert.samples[i].deriv).mig());
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const auto n = static_cast<double>(asym.size());
  cert.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  cert.growth_ratio = std::numeric_limits<double>::infinity();
  bool growing = true;
  double prev = 0.0;
  for (size_t idx = 0; idx < asym.size(); ++idx) {
    const double lo = abs(cert.samples[asym[idx]].deriv).mig();
    if (idx > 0) {
      if (lo <= prev) growing = false;
      cert.growth_ratio = std::min(cert.growth_ratio, lo / prev);
    }
    prev = lo;
  }
  cert.unbounded = growing && cert.growth_ratio > 1.2;
  return cert;
}

CkCertificate verify_ck_bounded(const FSeries& f, int k, int grid) {
  if (k < 0) throw PreconditionError("derivative order must be >= 0");
  if (k > f.config().kernel.max_jet_order)
    throw CapabilityError("boundedness check order exceeds the jet cap");
  CkCertificate cert;
  cert.k = k;
  // Sound sup bound over the region: terms of index >= |alpha| are globally
  // bounded by 2^{-m} after normalization; lower-index terms use the floor
  // h_m >= h_floor(m) that holds wherever x >= 0.
  double analytic = 1.0;  // the |alpha| = 0 bound: sum 2^{-m} <= 1
  for (int a = 0; a <= k; ++a) {
    for (int b = 0; a + b <= k; ++b) {
      if (a + b == 0) continue;
      const MultiIndex alpha{{a, b, 0}};
      Interval acc(0.0);
      for (int m = 1; m < a + b; ++m) {
        const double bound = bounds::term_deriv_bound_from(m, alpha, h_floor(m));
        acc += Interval(bound) / (Interval(f.table().c(m)) * Interval(pow2(m)));
      }
      acc += Interval(pow2(-(a + b - 1)));
      analytic = std::max(analytic, acc.hi());
    }
  }
  cert.analytic_bound = analytic;
  // Probe family accumulating at the origin and along the closed ray.
  std::vector<PointR2> pts;
  for (int i = 0; i < grid; ++i) {
    const double x = 3.0 * static_cast<double>(i) / static_cast<double>(std::max(1, grid - 1));
    for (double y : {0.0, 1e-6, 1e-3, 0.1, 1.0}) pts.push_back({x, y});
  }
  for (const auto& p : pts) {
    for (int a = 0; a <= k; ++a) {
      for (int b = 0; a + b <= k; ++b) {
        const MultiIndex alpha{{a, b, 0}};
        const auto cv = alpha.order() == 0 ? f.value(p, f.config().tol)
                                           : f.partial(p, alpha, f.config().tol);
        cert.samples.push_back(CkSample{p, alpha, cv.enclosure});
        cert.sampled_max = std::max(cert.sampled_max, abs(cv.enclosure).mag());
      }
    }
  }
  cert.bounded = std::isfinite(cert.analytic_bound) && cert.sampled_max <= cert.analytic_bound;
  return cert;
}

}  // namespace cvx::cex
