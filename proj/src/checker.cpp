#include "centrality/checker.hpp"

#include <string>

#include "centrality/errors.hpp"

namespace centrality {

namespace {

SampleSummary run_sampler(ConditionId id, const AlgebraElement& a, const CheckParams& params) {
  return params.parallel ? sample_margins(id, a, params.samples, params.seed, params.tol)
                         : sample_margins_serial(id, a, params.samples, params.seed, params.tol);
}

Verdict satisfied_verdict(ConditionId id, const AlgebraElement& a, const CheckParams& params) {
  Verdict v{id, VerdictStatus::Satisfied, run_sampler(id, a, params), std::nullopt};
  if (v.sampling.violations > 0) {
    throw Error(ErrorCode::InconsistentMath,
                "central element violates condition " + std::string(to_string(id)) + " on sample " +
                    std::to_string(v.sampling.argmin) + " (relative margin " +
                    std::to_string(v.sampling.min_relative_margin) + ")");
  }
  return v;
}

Verdict violated_verdict(ConditionId id, const AlgebraElement& a, const CheckParams& params,
                         const MarginReport& certificate) {
  Verdict v{id, VerdictStatus::Violated, {}, certificate};
  if (params.supplementary_sampling) v.sampling = run_sampler(id, a, params);
  return v;
}

std::optional<WitnessChain> chain_or_inconsistent(const AlgebraElement& a, double tol) {
  try {
    return build_witness_chain(a, tol);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::NotPositiveElement) throw;
    // Violation margins shrink like the square of the center distance, so
    // elements closer to the center than about sqrt(tol) cannot be certified.
    const double distance = center_distance(a, tol).distance;
    throw Error(ErrorCode::InconsistentMath,
                "non-central element (center distance " + format_number(distance) +
                    ") but no certificate clears the tolerance: " + e.what());
  }
}

void require_positive(const AlgebraElement& a, double tol) {
  if (!is_positive(a, tol).positive) {
    throw Error(ErrorCode::NotPositiveElement, "checks need a positive element");
  }
}

}  // namespace

Verdict check_condition(ConditionId id, const AlgebraElement& a, const CheckParams& params) {
  require_positive(a, params.tol);
  if (is_central(a, params.tol)) return satisfied_verdict(id, a, params);
  auto chain = chain_or_inconsistent(a, params.tol);
  return violated_verdict(id, a, params, chain->certificates.at(id));
}

Report check_all(const AlgebraElement& a, const CheckParams& params) {
  require_positive(a, params.tol);
  CenterReport oracle = center_distance(a, params.tol);
  Report report{oracle.distance, std::move(oracle.nearest_central), false, norm_scale(a), {}, std::nullopt};
  report.central = report.center_distance <= params.tol * report.scale;

  if (report.central) {
    for (ConditionId id : kAllConditions) report.verdicts.push_back(satisfied_verdict(id, a, params));
    return report;
  }
  auto chain = chain_or_inconsistent(a, params.tol);
  for (ConditionId id : kAllConditions) {
    report.verdicts.push_back(violated_verdict(id, a, params, chain->certificates.at(id)));
  }
  report.lemma = std::move(chain->lemma);
  return report;
}

}  // namespace centrality
