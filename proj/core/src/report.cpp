#include "convexlab/report.hpp"

namespace cvx::structures {

ReflexivityReport reflexivity_report(const ConvexDescriptor& S,
                                     const std::vector<ReflexivityCandidate>& candidates,
                                     int K, const CheckOptions& opts) {
  ReflexivityReport rep;
  rep.descriptor = S.name;
  const DiffeologyHandle D = subset_diffeology(S);
  for (const auto& cand : candidates) {
    ReflexivityEntry e;
    e.name = cand.g.name;
    e.phi = Phi_membership(cand.g, D, K, opts);
    const std::vector<SymbolicMap>* w = cand.witness.empty() ? nullptr : &cand.witness;
    e.subspace = func_membership_subspace(cand.g, S, w, K, opts);
    if (e.phi.accepted() && w != nullptr && e.subspace.accepted()) {
      e.consistent = true;
    } else if (!e.phi.accepted() && !e.subspace.accepted()) {
      e.consistent = true;
    } else if (e.phi.accepted() && w == nullptr) {
      // Diffeologically smooth but no extension witness exists: record the
      // tension, and for the series candidate attach the derivative blow-up
      // that rules out any smooth extension past the origin.
      e.tension = true;
      if (cand.fseries != nullptr) e.blowup = cex::verify_blowup(*cand.fseries, 1);
    }
    rep.any_tension = rep.any_tension || e.tension;
    rep.entries.push_back(std::move(e));
  }
  return rep;
}

}  // namespace cvx::structures
