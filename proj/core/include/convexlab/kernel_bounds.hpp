#pragma once

#include <string>
#include <vector>

#include "convexlab/kernels.hpp"
#include "convexlab/sup_bound.hpp"
#include "convexlab/taylor.hpp"

namespace cvx::bounds {

/// Highest derivative order the bound pipeline handles internally.  This is
/// deliberately larger than the public jet-order cap: evaluating the series
/// to tolerance 1e-8 needs normalization constants for indices up to ~30.
inline constexpr int kMaxBoundOrder = 40;

/// Sound upper bound for sup over R of |r^{(j)}| (the ramp derivative).
/// Interior via branch and bound, endpoint strips via the analytic tail
/// bound, flats contribute zero.  Cached; deterministic.
double sup_ramp_deriv(int j);

/// Sound upper bound for sup over R of |phi_m^{(j)}|, defined for j <= m.
/// On (0,1] the closed form is monotone so the sup sits at x = 1; on [1,2]
/// low orders use branch and bound and high orders a Leibniz combination of
/// power and cutoff bounds.
double sup_phi_deriv(int m, int j);

/// Sound upper bound for sup over [delta, inf) of |phi_m^{(j)}|, for any j
/// once delta > 0.  Used to bound high-order derivatives of low-index series
/// terms on regions where h_m stays away from zero.
double sup_phi_deriv_from(int m, int j, double delta);

/// Sound upper bound for sup over R^2 of |d^alpha h_m|.  Exactly 1 for
/// alpha = (0,1) and 0 for mixed or higher-y orders.
double sup_h_deriv(int m, const MultiIndex& alpha);

/// Sound upper bound for sup over R^2 of |d^alpha (phi_m o h_m)|, valid for
/// |alpha| <= m, assembled with the Faa di Bruno inequality from the phi and
/// h bounds above.
double term_deriv_bound(int m, const MultiIndex& alpha);

/// Variant of term_deriv_bound valid for every alpha, on the region where
/// h_m >= delta > 0.
double term_deriv_bound_from(int m, const MultiIndex& alpha, double delta);

/// c_m: max of term_deriv_bound over all |alpha| <= m (order 0 included).
double c_bound(int m);

/// Precomputed table of c_1 .. c_max_index with a content hash of the
/// configuration that produced it.  Persisted as JSON so repeated runs are
/// byte-identical and cheap.
struct CmTable {
  int max_index = 0;
  std::vector<double> values;  // values[m-1] = c_m
  std::string config_hash;

  double c(int m) const;

  static std::string canonical_config(int max_index, const kernels::KernelConfig& cfg);
  static CmTable compute(int max_index, const kernels::KernelConfig& cfg = {});
  /// Loads the table from `path` when the stored hash matches, otherwise
  /// computes and writes it.
  static CmTable load_or_compute(const std::string& path, int max_index,
                                 const kernels::KernelConfig& cfg = {});

  std::string to_json() const;
  static CmTable from_json(const std::string& text);
};

}  // namespace cvx::bounds
