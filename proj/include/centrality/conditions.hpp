#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string_view>
#include <variant>

#include "centrality/functionals.hpp"

namespace centrality {

// The sampled centrality conditions. Condition (i), membership in the center,
// is decided by center_distance and has no enumerator here.
enum class ConditionId { ii, iii, iv, v, vi, vii, viii, ix, x, xi, gardner };

inline constexpr std::array<ConditionId, 11> kAllConditions = {
    ConditionId::ii,  ConditionId::iii, ConditionId::iv, ConditionId::v,
    ConditionId::vi,  ConditionId::vii, ConditionId::viii, ConditionId::ix,
    ConditionId::x,   ConditionId::xi,  ConditionId::gardner};

std::string_view to_string(ConditionId id);
std::optional<ConditionId> parse_condition(std::string_view name);
std::size_t condition_index(ConditionId id);

// pap <= a is tested through p.
struct ProjectionInputs {
  AlgebraElement p;
};

// phi Hermitian, phi = phi1 - phi2 with phi1, phi2 positive.
struct DecompositionInputs {
  NormalFunctional phi;
  NormalFunctional phi1;
  NormalFunctional phi2;
};

// phi <= psi, both Hermitian.
struct OrderedPairInputs {
  NormalFunctional phi;
  NormalFunctional psi;
};

struct PairInputs {
  NormalFunctional phi;
  NormalFunctional psi;
};

struct WeightedPairInputs {
  NormalFunctional phi;
  NormalFunctional psi;
  double t = 0.5;
};

struct SingleInputs {
  NormalFunctional phi;
};

using ConditionInputs = std::variant<ProjectionInputs, DecompositionInputs, OrderedPairInputs,
                                     PairInputs, WeightedPairInputs, SingleInputs>;

struct MarginReport {
  ConditionId condition;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;  // rhs - lhs, or -lhs for the equality conditions ix and xi
  double scale = 1.0;   // max(1, ||a||, sum of input trace norms)
  ConditionInputs inputs;

  bool satisfied(double tol) const { return margin >= -tol * scale; }
  double relative_margin() const { return margin / scale; }
};

/// max(1, ||a||, sum of trace norms of the functionals in the inputs).
double condition_scale(const AlgebraElement& a, const ConditionInputs& inputs);

/// Evaluates one condition on one input. Throws NotPositiveElement if a is not
/// positive and InvalidInputs if the inputs do not fit the condition or break
/// its structural constraint.
MarginReport condition_margin(ConditionId id, const AlgebraElement& a, const ConditionInputs& inputs,
                              double tol = kDefaultTol);

/// Same as condition_margin without re-checking positivity of a. For loops
/// that have already validated a once.
MarginReport condition_margin_trusted(ConditionId id, const AlgebraElement& a,
                                      const ConditionInputs& inputs, double tol = kDefaultTol);

/// Draws inputs that satisfy the structural constraints of id by construction.
/// For iii the family is (phi, phi^+ + delta, phi^- + delta) with delta PSD,
/// which does not reach every decomposition.
ConditionInputs sample_inputs(ConditionId id, const AlgebraShape& shape, RngStream& rng);

// ---------------------------------------------------------------------------
// Sampling kernels. Sample i of condition c draws from
// RngStream(seed).derive(index(c)).derive(i), so the serial and OpenMP kernels
// visit identical inputs and reduce to identical results.

struct SampleSummary {
  int samples = 0;
  int violations = 0;                   // samples with margin < -tol * scale
  double min_relative_margin = INFINITY;
  int argmin = -1;                      // lowest index attaining the minimum
};

SampleSummary sample_margins_serial(ConditionId id, const AlgebraElement& a, int samples,
                                    std::uint64_t seed, double tol = kDefaultTol);
SampleSummary sample_margins(ConditionId id, const AlgebraElement& a, int samples,
                             std::uint64_t seed, double tol = kDefaultTol);

/// Regenerates the inputs of one sample.
ConditionInputs sample_for(ConditionId id, const AlgebraShape& shape, std::uint64_t seed, int index);

}  // namespace centrality
