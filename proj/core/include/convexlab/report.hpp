#pragma once

#include <optional>
#include <string>
#include <vector>

#include "convexlab/fseries.hpp"
#include "convexlab/membership.hpp"

namespace cvx::structures {

struct ReflexivityCandidate {
  SymbolicMap g;
  /// Optional cover of local smooth extensions; empty means none supplied.
  std::vector<SymbolicMap> witness;
  /// When g is the series f, set this so a blow-up certificate can be
  /// attached to a tension finding.
  const cex::FSeries* fseries = nullptr;
};

struct ReflexivityEntry {
  std::string name;
  Verdict phi;       // membership among diffeologically smooth functions
  Verdict subspace;  // membership in the subspace structure
  bool tension = false;
  bool consistent = false;
  std::optional<cex::BlowupCertificate> blowup;
};

struct ReflexivityReport {
  std::string descriptor;
  std::vector<ReflexivityEntry> entries;
  bool any_tension = false;
};

/// For each candidate: Phi-membership against the subset diffeology of S and
/// the subspace-structure status.  "Tension" flags a candidate that is
/// diffeologically smooth but has no extension witness; for the series f a
/// blow-up certificate is attached as the reason no extension can exist.
ReflexivityReport reflexivity_report(const ConvexDescriptor& S,
                                     const std::vector<ReflexivityCandidate>& candidates,
                                     int K = 3, const CheckOptions& opts = {});

}  // namespace cvx::structures
