#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "convexlab/descriptor.hpp"
#include "convexlab/expr.hpp"
#include "convexlab/verdict.hpp"

namespace cvx::structures {

/// Knobs shared by the sampling-based checks.  Everything is seeded, so a
/// verdict is reproducible from its options.
struct CheckOptions {
  int samples = 40;       // target sample count per domain
  double tol = 1e-4;      // jet vs finite-difference relative tolerance
  double fd_h0 = 0.1;     // initial Richardson step
  int fd_levels = 6;
  unsigned seed = 20260824u;
  bool assume_open = false;  // accept non-open domains in smoothness checks
};

/// Jet/finite-difference smoothness oracle up to order K on the sampled
/// domain.  Proven when the tree has only everywhere-smooth nodes; failed
/// with a replayable witness when a classical derivative is missing or the
/// two oracles disagree beyond tolerance.
Verdict is_classically_smooth(const SymbolicMap& map, int K, const CheckOptions& opts = {});

/// Membership of p in the subset diffeology of S: exact image containment at
/// sampled parameters AND classical smoothness into the ambient space.
Verdict plot_membership_subset(const SymbolicMap& p, const ConvexDescriptor& S, int K = 3,
                               const CheckOptions& opts = {});

/// Thrown when a supplied extension witness disagrees with the function it
/// is supposed to extend.
struct WitnessInvalidError : std::runtime_error {
  WitnessInvalidError(const std::string& what, std::vector<double> point)
      : std::runtime_error(what), point(std::move(point)) {}
  std::vector<double> point;
};

/// Membership of g in the subspace Sikorski structure of S.  With a witness
/// cover of local smooth extensions the verdict can reach Proven; without
/// one only the necessary conditions (the Kriegl-style boundary check) are
/// run and membership is never affirmed.
Verdict func_membership_subspace(const SymbolicMap& g, const ConvexDescriptor& S,
                                 const std::vector<SymbolicMap>* witness_cover, int K = 3,
                                 const CheckOptions& opts = {});

struct KrieglOptions {
  int boundary_samples = 200;
  double tol = 1e-4;
  int approach_levels = 6;
  double lambda0 = 0.05;
  unsigned seed = 7u;
};

/// Boundary-extension criterion: at sampled boundary points, derivative
/// values of every order <= K along >= 3 interior approach sequences must
/// extrapolate to agreeing limits.
Verdict kriegl_check(const SymbolicMap& g, const ConvexDescriptor& S, int K,
                     const KrieglOptions& opts = {});

// ---------------------------------------------------------------------------
// Structure handles.  Immutable after construction; membership queries are
// pure functions of (handle, map, order).
// ---------------------------------------------------------------------------

struct DiffeologyHandle {
  std::string kind;
  ConvexDescriptor base;
  std::vector<SymbolicMap> generators;  // plots, used by Phi
  std::function<Verdict(const SymbolicMap&, int)> accepts;
};

struct SikorskiHandle {
  std::string kind;
  ConvexDescriptor base;
  std::vector<SymbolicMap> generators;  // real-valued functions, used by Pi
};

struct ChenHandle {
  std::string kind;
  ConvexDescriptor base;
  std::function<Verdict(const SymbolicMap&, int)> accepts;
};

/// Plots generated by default for a subset diffeology: constants, short
/// affine segments inside the set, and (for X) the test plots through the
/// origin.
std::vector<SymbolicMap> default_generator_plots(const ConvexDescriptor& base);

/// Finite probe family of smooth maps from convex (open when `open_domains`)
/// sets into `dom`: affine surjections, quadratics, a flat bridge
/// reparametrization when the box corners belong to `dom`, and a 2d collapse
/// probe for 1d targets.
std::vector<SymbolicMap> default_probes_into(const ConvexDescriptor& dom, bool open_domains);

DiffeologyHandle standard_diffeology(ConvexDescriptor base);
DiffeologyHandle subset_diffeology(ConvexDescriptor base);
SikorskiHandle subspace_sikorski(ConvexDescriptor base);
ChenHandle standard_chen(ConvexDescriptor base);
/// Chen structure on [0,1] generated by maps that factor smoothly through
/// open intervals; the identity is not a member.
ChenHandle nonstandard_interval_chen();

// Functor membership operations.
Verdict Phi_membership(const SymbolicMap& g, const DiffeologyHandle& D, int K = 3,
                       const CheckOptions& opts = {});
Verdict Pi_membership(const SymbolicMap& p, const SikorskiHandle& F, int K = 3,
                      const CheckOptions& opts = {});
Verdict Di_membership(const SymbolicMap& p, const ChenHandle& C, int K = 3);
Verdict Ch_membership(const SymbolicMap& p, const DiffeologyHandle& D, int K = 3);
Verdict exhaustion_membership(const SymbolicMap& p, const ChenHandle& C, int K = 3);

// Functors as handle transformers.
ChenHandle Ch_of(DiffeologyHandle D);
DiffeologyHandle Di_of(ChenHandle C);
ChenHandle exhaustion_of(ChenHandle C);

/// Necessary condition for membership in the nonstandard interval structure:
/// wherever p attains 0 or 1, a smooth factorization through an open
/// interval forces a vanishing one-sided derivative.
Verdict nonstandard_interval_obstruction(const SymbolicMap& p, double t0);

/// Smooth bump rho = B o (h_1,...,h_N) with rho(x0) = 1, values in [0,1],
/// and support inside the basic open where every h_j lies in (0,1).
SymbolicMap bump_build(const std::vector<SymbolicMap>& h_list, const std::vector<double>& x0);

/// Combinatorial-with-sampling local closedness test at s in closure(S);
/// failure carries a replayable approaching sequence through
/// closure(S) \ S.
Verdict locally_closed_at(const ConvexDescriptor& S, const std::vector<double>& s);

}  // namespace cvx::structures
