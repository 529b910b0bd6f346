#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "centrality/witness.hpp"

namespace centrality {

inline constexpr int kDefaultSamples = 200;

struct CheckParams {
  int samples = kDefaultSamples;
  double tol = kDefaultTol;
  std::uint64_t seed = 0;
  // Run the sampler on non-central elements too. Its result is reported but
  // never decides the verdict.
  bool supplementary_sampling = true;
  bool parallel = true;
};

enum class VerdictStatus { Satisfied, Violated };

struct Verdict {
  ConditionId condition;
  VerdictStatus status;
  SampleSummary sampling;                  // empty when sampling was skipped
  std::optional<MarginReport> certificate;  // present iff Violated
};

struct Report {
  double center_distance = 0.0;
  AlgebraElement nearest_central;
  bool central = false;
  double scale = 1.0;  // max(1, ||a||)
  std::vector<Verdict> verdicts;  // in kAllConditions order
  std::optional<Lemma1Witness> lemma;
};

/// Central a: every sample must satisfy the condition (InconsistentMath
/// otherwise). Non-central a: the deterministic certificate decides.
Verdict check_condition(ConditionId id, const AlgebraElement& a, const CheckParams& params = {});

/// Oracle verdict plus all eleven condition verdicts. Sample streams are split
/// per condition from params.seed.
Report check_all(const AlgebraElement& a, const CheckParams& params = {});

}  // namespace centrality
