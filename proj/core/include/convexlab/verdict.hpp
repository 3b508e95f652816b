#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace cvx::structures {

/// Epistemic status of a membership or property check.  The sets involved
/// are infinite, so most positive answers are sampling-based; the ordering
/// Proven < PassedSampling < FailedWitness is the pessimism order used when
/// aggregating.
enum class VerdictKind { Proven = 0, PassedSampling = 1, FailedWitness = 2 };

inline const char* to_string(VerdictKind k) {
  switch (k) {
    case VerdictKind::Proven: return "proven";
    case VerdictKind::PassedSampling: return "passed-sampling";
    default: return "failed-witness";
  }
}

/// Replayable failure data: a parameter point, the derivative order at which
/// the check broke, and the residual that exceeded tolerance.
struct Witness {
  std::vector<double> point;
  int order = 0;
  double residual = 0.0;
};

struct Verdict {
  VerdictKind kind = VerdictKind::Proven;
  std::string reason;
  int samples = 0;
  int max_order = 0;
  double tolerance = 0.0;
  std::optional<Witness> witness;

  bool accepted() const { return kind != VerdictKind::FailedWitness; }

  static Verdict proven(std::string reason) {
    Verdict v;
    v.kind = VerdictKind::Proven;
    v.reason = std::move(reason);
    return v;
  }
  static Verdict passed(int samples, int max_order, double tol, std::string reason = {}) {
    Verdict v;
    v.kind = VerdictKind::PassedSampling;
    v.samples = samples;
    v.max_order = max_order;
    v.tolerance = tol;
    v.reason = std::move(reason);
    return v;
  }
  static Verdict failed(Witness w, std::string reason = {}) {
    Verdict v;
    v.kind = VerdictKind::FailedWitness;
    v.witness = std::move(w);
    v.reason = std::move(reason);
    return v;
  }
};

/// The more pessimistic of the two verdicts.
inline const Verdict& worse(const Verdict& a, const Verdict& b) {
  return static_cast<int>(b.kind) > static_cast<int>(a.kind) ? b : a;
}

}  // namespace cvx::structures
