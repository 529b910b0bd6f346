#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "centrality/io.hpp"

namespace centrality {

struct FuzzConfig {
  AlgebraShape shape{std::vector<int>{2}};
  int trials = 1000;
  std::uint64_t seed = 42;
  double central_fraction = 0.5;
  int samples = kDefaultSamples;
  double tol = kDefaultTol;
};

struct FuzzFailure {
  int trial;
  std::uint64_t check_seed;
  std::string message;
  Instance instance;
};

struct FuzzSummary {
  int trials = 0;
  int central_trials = 0;
  int noncentral_trials = 0;
  int inconsistencies = 0;
  int certificates_emitted = 0;
  int certificates_verified = 0;
  double min_central_margin = INFINITY;         // min sampled margin / scale over central trials
  double min_violation_magnitude = INFINITY;    // min -margin / scale over all certificates
  std::optional<FuzzFailure> first_failure;     // lowest failing trial index
};

/// Trial t draws from RngStream(seed).derive(t): first the central/non-central
/// choice, then the element from .derive(1), and the check seed is the key of
/// .derive(2). The summary is therefore independent of scheduling.
FuzzSummary fuzz_campaign_serial(const FuzzConfig& config);
FuzzSummary fuzz_campaign(const FuzzConfig& config);

Json fuzz_summary_to_json(const FuzzConfig& config, const FuzzSummary& summary);
/// Instance plus the seeds needed to replay the failing trial.
Json reproducer_to_json(const FuzzConfig& config, const FuzzFailure& failure);

}  // namespace centrality
