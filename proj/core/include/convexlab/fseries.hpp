#pragma once

#include <string>
#include <vector>

#include "convexlab/interval.hpp"
#include "convexlab/kernel_bounds.hpp"
#include "convexlab/kernels.hpp"
#include "convexlab/region.hpp"
#include "convexlab/taylor.hpp"

namespace cvx::cex {

struct SeriesConfig {
  kernels::KernelConfig kernel;
  double tol = 1e-8;
  /// Optional JSON cache path for the normalization table; empty keeps it
  /// in memory only.
  std::string cm_cache_path;
};

/// An enclosure together with the truncation data that produced it.
struct CertifiedValue {
  Interval enclosure;
  int terms = 0;       // series terms summed
  double tail = 0.0;   // bound on everything dropped
};

/// The series f = sum_m (phi_m o h_m) / (c_m 2^m): smooth at every point of
/// X in the jet sense, nonzero at the origin, identically zero for y >= 2,
/// with d_y^{k+1} f unbounded near (-1/k, 0).
class FSeries {
 public:
  explicit FSeries(SeriesConfig cfg = {});

  const SeriesConfig& config() const { return cfg_; }
  const bounds::CmTable& table() const { return table_; }

  /// Number of terms retained for a target tolerance and derivative order.
  int truncation(double tol, int order) const;

  /// Certified enclosure of f(p); requires p in X.
  CertifiedValue value(PointR2 p, double tol) const;

  /// Certified enclosure of d^alpha f(p); requires p in X.
  CertifiedValue partial(PointR2 p, MultiIndex alpha, double tol) const;

  /// All partials up to total order K at p as a float jet (no enclosure),
  /// with the same truncation policy as `partial`.
  Taylor<double> jet(PointR2 p, int K, double tol) const;

  double operator()(double x, double y) const { return value({x, y}, cfg_.tol).enclosure.mid(); }

 private:
  SeriesConfig cfg_;
  bounds::CmTable table_;
};

/// One probe of the derivative blow-up along y -> 0 at x = -1/k.
struct BlowupSample {
  double y = 0.0;
  Interval deriv;  // enclosure of d_y^{k+1} f at (-1/k, y)
};

/// Certifies that d_y^{k+1} f is unbounded near (-1/k, 0): the certified
/// lower bounds of |deriv| must keep growing along the sample sequence.
struct BlowupCertificate {
  int k = 0;
  std::vector<BlowupSample> samples;
  double slope = 0.0;        // log-log growth rate, ideally -1/2
  double growth_ratio = 0.0; // min ratio of consecutive certified lower bounds
  bool unbounded = false;
};

BlowupCertificate verify_blowup(const FSeries& f, int k, int steps = 8);

/// One probe of a derivative bound on the closed-ray part of X.
struct CkSample {
  PointR2 p;
  MultiIndex alpha;
  Interval deriv;
};

/// Certifies that all partials of order <= k stay bounded on
/// { (x,y) in X : x >= 0 }, where every h_m is bounded below by a positive
/// constant.  Pairs with the blow-up certificate: boundedness holds on the
/// ray closure while it fails along x = -1/k.
struct CkCertificate {
  int k = 0;
  double analytic_bound = 0.0;  // sound sup bound over the region
  double sampled_max = 0.0;     // largest certified |partial| among samples
  std::vector<CkSample> samples;
  bool bounded = false;
};

CkCertificate verify_ck_bounded(const FSeries& f, int k, int grid = 12);

}  // namespace cvx::cex
