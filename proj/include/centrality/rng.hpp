#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include "centrality/matrix_kernel.hpp"

namespace centrality {

// Generator identity recorded in every machine-readable report. Bump the
// suffix whenever the stream derivation or any sampling routine changes.
inline constexpr std::string_view kRngName = "mt19937_64/splitmix64-split/box-muller-v1";

std::uint64_t splitmix64(std::uint64_t x);

// A reproducible random stream. Child streams are derived from a parent key
// and a label only, so a stream's output never depends on how much of any
// sibling stream was consumed or in which order sites were evaluated.
class RngStream {
 public:
  explicit RngStream(std::uint64_t master_seed);

  RngStream derive(std::uint64_t label) const;

  std::uint64_t key() const noexcept { return key_; }

  std::uint64_t next_u64() { return engine_(); }
  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Uniform integer in [lo, hi], unbiased by rejection.
  int uniform_int(int lo, int hi);
  double normal();
  /// Independent standard-normal real and imaginary parts.
  Complex complex_normal();

 private:
  RngStream(std::uint64_t key, int /*tag*/);

  std::uint64_t key_;
  std::mt19937_64 engine_;
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace centrality
