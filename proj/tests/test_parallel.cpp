#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <omp.h>

#include "centrality/conditions.hpp"
#include "centrality/fuzz.hpp"
#include "test_support.hpp"

using namespace centrality;

TEST_CASE("sample_margins matches the serial kernel exactly") {
  omp_set_num_threads(4);
  RngStream rng(91);
  for (const auto& dims : testing_support::desk_shapes()) {
    const AlgebraShape shape(dims);
    const AlgebraElement a = rng.uniform() < 0.5 || shape.is_abelian() ? random_central_positive(shape, rng)
                                                                       : random_noncentral_positive(shape, rng);
    for (ConditionId id : kAllConditions) {
      const std::uint64_t seed = rng.next_u64();
      const SampleSummary s = sample_margins_serial(id, a, 64, seed);
      const SampleSummary p = sample_margins(id, a, 64, seed);
      CHECK(s.samples == p.samples);
      CHECK(s.violations == p.violations);
      CHECK(s.min_relative_margin == p.min_relative_margin);
      CHECK(s.argmin == p.argmin);
    }
  }
}

TEST_CASE("fuzz_campaign matches the serial campaign exactly") {
  omp_set_num_threads(4);
  for (const auto& dims : std::vector<std::vector<int>>{{2}, {2, 1}}) {
    FuzzConfig config;
    config.shape = AlgebraShape(dims);
    config.trials = 24;
    config.seed = 5;
    config.samples = 20;
    const FuzzSummary s = fuzz_campaign_serial(config);
    const FuzzSummary p = fuzz_campaign(config);
    CHECK(fuzz_summary_to_json(config, s).dump() == fuzz_summary_to_json(config, p).dump());
    CHECK(s.inconsistencies == 0);
    CHECK(s.certificates_emitted == s.certificates_verified);
    CHECK(s.certificates_emitted == 11 * s.noncentral_trials);
  }
}

TEST_CASE("fuzz mixes") {
  FuzzConfig config;
  config.trials = 10;
  config.samples = 10;
  config.central_fraction = 1.0;
  const FuzzSummary all_central = fuzz_campaign(config);
  CHECK(all_central.central_trials == 10);
  CHECK(all_central.certificates_emitted == 0);
  CHECK(all_central.min_central_margin >= -1e-9);
  config.central_fraction = 0.0;
  const FuzzSummary none = fuzz_campaign(config);
  CHECK(none.noncentral_trials == 10);
  CHECK(none.certificates_verified == 110);
  CHECK(none.min_violation_magnitude >= 1e-8);
}
