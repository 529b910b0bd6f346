#include "centrality/fuzz.hpp"

#include <algorithm>
#include <cmath>

#include "centrality/errors.hpp"

namespace centrality {

namespace {

struct TrialOutcome {
  bool central = false;
  int emitted = 0;
  int verified = 0;
  double central_margin = INFINITY;
  double violation = INFINITY;
  std::optional<FuzzFailure> failure;
};

TrialOutcome run_trial(const FuzzConfig& config, int trial) {
  const RngStream stream = RngStream(config.seed).derive(static_cast<std::uint64_t>(trial));
  RngStream choice = stream;
  const bool central = config.shape.is_abelian() || choice.uniform() < config.central_fraction;
  RngStream element_rng = stream.derive(1);
  AlgebraElement a = central ? random_central_positive(config.shape, element_rng)
                             : random_noncentral_positive(config.shape, element_rng);
  const std::uint64_t check_seed = stream.derive(2).key();

  TrialOutcome out;
  out.central = central;
  CheckParams params;
  params.samples = config.samples;
  params.tol = config.tol;
  params.seed = check_seed;
  params.supplementary_sampling = false;
  params.parallel = false;  // the trial loop is the parallel level

  auto fail = [&](std::string message) {
    out.failure = FuzzFailure{trial, check_seed, std::move(message), Instance{config.shape, a, {}, config.tol}};
  };
  try {
    const Report report = check_all(a, params);
    if (report.central != central) {
      fail("oracle verdict disagrees with the generator");
      return out;
    }
    for (const Verdict& v : report.verdicts) {
      if (central) {
        out.central_margin = std::min(out.central_margin, v.sampling.min_relative_margin);
        continue;
      }
      ++out.emitted;
      CertificateFile file{v.condition, config.shape, *v.certificate, report.lemma, std::string(kToolVersion),
                           check_seed};
      if (v.condition == ConditionId::ii || v.condition == ConditionId::gardner) file.lemma.reset();
      if (verify_certificate_file(file, a, config.tol)) {
        ++out.verified;
      } else {
        fail("certificate for condition " + std::string(to_string(v.condition)) + " failed verification");
      }
      out.violation = std::min(out.violation, -v.certificate->relative_margin());
    }
  } catch (const Error& e) {
    fail(e.what());
  }
  return out;
}

void fold(FuzzSummary& s, TrialOutcome&& t) {
  ++s.trials;
  if (t.central) {
    ++s.central_trials;
  } else {
    ++s.noncentral_trials;
  }
  s.certificates_emitted += t.emitted;
  s.certificates_verified += t.verified;
  s.min_central_margin = std::min(s.min_central_margin, t.central_margin);
  s.min_violation_magnitude = std::min(s.min_violation_magnitude, t.violation);
  if (t.failure) {
    ++s.inconsistencies;
    if (!s.first_failure || t.failure->trial < s.first_failure->trial) s.first_failure = std::move(t.failure);
  }
}

void merge(FuzzSummary& into, FuzzSummary&& part) {
  into.trials += part.trials;
  into.central_trials += part.central_trials;
  into.noncentral_trials += part.noncentral_trials;
  into.inconsistencies += part.inconsistencies;
  into.certificates_emitted += part.certificates_emitted;
  into.certificates_verified += part.certificates_verified;
  into.min_central_margin = std::min(into.min_central_margin, part.min_central_margin);
  into.min_violation_magnitude = std::min(into.min_violation_magnitude, part.min_violation_magnitude);
  if (part.first_failure && (!into.first_failure || part.first_failure->trial < into.first_failure->trial)) {
    into.first_failure = std::move(part.first_failure);
  }
}

Json nullable(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

}  // namespace

FuzzSummary fuzz_campaign_serial(const FuzzConfig& config) {
  FuzzSummary out;
  for (int t = 0; t < config.trials; ++t) fold(out, run_trial(config, t));
  return out;
}

FuzzSummary fuzz_campaign(const FuzzConfig& config) {
  FuzzSummary out;
#pragma omp parallel
  {
    FuzzSummary local;
#pragma omp for schedule(dynamic, 4) nowait
    for (int t = 0; t < config.trials; ++t) fold(local, run_trial(config, t));
#pragma omp critical(centrality_fuzz_merge)
    merge(out, std::move(local));
  }
  return out;
}

Json fuzz_summary_to_json(const FuzzConfig& config, const FuzzSummary& summary) {
  Json out{{"tool_version", kToolVersion},
           {"rng", kRngName},
           {"blocks", config.shape.block_dims()},
           {"seed", config.seed},
           {"central_fraction", config.central_fraction},
           {"samples", config.samples},
           {"tol", config.tol},
           {"trials", summary.trials},
           {"central_trials", summary.central_trials},
           {"noncentral_trials", summary.noncentral_trials},
           {"inconsistencies", summary.inconsistencies},
           {"certificates_emitted", summary.certificates_emitted},
           {"certificates_verified", summary.certificates_verified},
           {"min_central_relative_margin", nullable(summary.min_central_margin)},
           {"min_relative_violation", nullable(summary.min_violation_magnitude)}};
  if (summary.first_failure) {
    out["first_failure"] = Json{{"trial", summary.first_failure->trial},
                                {"check_seed", summary.first_failure->check_seed},
                                {"message", summary.first_failure->message}};
  }
  return out;
}

Json reproducer_to_json(const FuzzConfig& config, const FuzzFailure& failure) {
  return Json{{"master_seed", config.seed},
              {"trial", failure.trial},
              {"check_seed", failure.check_seed},
              {"samples", config.samples},
              {"message", failure.message},
              {"instance", serialize_instance(failure.instance)}};
}

}  // namespace centrality
