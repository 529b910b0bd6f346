#include "centrality/rng.hpp"

#include <cmath>
#include <numbers>

namespace centrality {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

RngStream::RngStream(std::uint64_t master_seed) : RngStream(splitmix64(master_seed), 0) {}

RngStream::RngStream(std::uint64_t key, int) : key_(key), engine_(key) {}

RngStream RngStream::derive(std::uint64_t label) const {
  return RngStream(splitmix64(key_ ^ splitmix64(label ^ 0xA5A5A5A5DEADBEEFull)), 0);
}

double RngStream::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

int RngStream::uniform_int(int lo, int hi) {
  const std::uint64_t span = static_cast<std::uint64_t>(static_cast<std::int64_t>(hi) - lo) + 1;
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
  std::uint64_t draw = engine_();
  while (draw >= limit) draw = engine_();
  return lo + static_cast<int>(draw % span);
}

double RngStream::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_normal_;
  }
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_normal_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

Complex RngStream::complex_normal() {
  const double re = normal();
  const double im = normal();
  return {re, im};
}

}  // namespace centrality
