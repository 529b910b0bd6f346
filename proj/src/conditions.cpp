#include "centrality/conditions.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <string>

#include <omp.h>

#include "centrality/errors.hpp"

namespace centrality {

namespace {

constexpr std::array<std::string_view, 11> kNames = {"ii", "iii", "iv",  "v",  "vi",     "vii",
                                                     "viii", "ix", "x", "xi", "gardner"};

[[noreturn]] void invalid(ConditionId id, const std::string& why) {
  throw Error(ErrorCode::InvalidInputs, "condition " + std::string(to_string(id)) + ": " + why);
}

template <typename T>
const T& inputs_as(ConditionId id, const ConditionInputs& inputs) {
  const T* out = std::get_if<T>(&inputs);
  if (out == nullptr) invalid(id, "wrong input kind");
  return *out;
}

void require_hermitian(ConditionId id, const NormalFunctional& f, const char* name) {
  if (!f.is_hermitian()) invalid(id, std::string(name) + " must be Hermitian");
}

void require_positive(ConditionId id, const NormalFunctional& f, const char* name) {
  if (!f.is_positive()) invalid(id, std::string(name) + " must be positive");
}

void require_shape(ConditionId id, const AlgebraElement& a, const NormalFunctional& f) {
  if (!(a.shape() == f.shape())) invalid(id, "functional shape differs from the element");
}

double real_at(const NormalFunctional& f, const AlgebraElement& a) { return evaluate(f, a).real(); }

// | |phi|(a) - ||a^{1/2} phi a^{1/2}|| |
double abs_sandwich_gap(const NormalFunctional& phi, const AlgebraElement& a, const AlgebraElement& root) {
  const double abs_a = abs_at(phi, a);
  double sandwiched = 0.0;
  for (std::size_t k = 0; k < a.num_blocks(); ++k) {
    sandwiched += trace_norm(root.block(k) * phi.density().block(k) * root.block(k));
  }
  return std::abs(abs_a - sandwiched);
}

MarginReport evaluate_condition(ConditionId id, const AlgebraElement& a, const ConditionInputs& inputs,
                                double tol) {
  MarginReport r{id, 0.0, 0.0, 0.0, condition_scale(a, inputs), inputs};
  bool equality = false;
  switch (id) {
    case ConditionId::ii: {
      const auto& in = inputs_as<ProjectionInputs>(id, inputs);
      require_same_shape(a, in.p);
      if (!is_projection(in.p, tol)) invalid(id, "p must be a projection");
      const AlgebraElement pap = in.p * a * in.p;
      r.lhs = max_eigenvalue(pap - a, tol);
      break;
    }
    case ConditionId::iii: {
      const auto& in = inputs_as<DecompositionInputs>(id, inputs);
      for (const auto* f : {&in.phi, &in.phi1, &in.phi2}) require_shape(id, a, *f);
      require_hermitian(id, in.phi, "phi");
      require_positive(id, in.phi1, "phi1");
      require_positive(id, in.phi2, "phi2");
      if (distance(in.phi1.density() - in.phi2.density(), in.phi.density()) > tol * r.scale) {
        invalid(id, "phi1 - phi2 must equal phi");
      }
      r.lhs = positive_part_at(in.phi, a);
      r.rhs = real_at(in.phi1, a);
      break;
    }
    case ConditionId::iv: {
      const auto& in = inputs_as<OrderedPairInputs>(id, inputs);
      require_shape(id, a, in.phi);
      require_shape(id, a, in.psi);
      require_hermitian(id, in.phi, "phi");
      require_hermitian(id, in.psi, "psi");
      if (!is_positive(in.psi.density() - in.phi.density(), tol).positive) {
        invalid(id, "psi - phi must be positive");
      }
      r.lhs = positive_part_at(in.phi, a);
      r.rhs = positive_part_at(in.psi, a);
      break;
    }
    case ConditionId::v:
    case ConditionId::vi:
    case ConditionId::x: {
      const auto& in = inputs_as<PairInputs>(id, inputs);
      require_shape(id, a, in.phi);
      require_shape(id, a, in.psi);
      if (id != ConditionId::x) {
        require_hermitian(id, in.phi, "phi");
        require_hermitian(id, in.psi, "psi");
      }
      const NormalFunctional sum = in.phi + in.psi;
      if (id == ConditionId::v) {
        r.lhs = positive_part_at(sum, a);
        r.rhs = positive_part_at(in.phi, a) + positive_part_at(in.psi, a);
      } else {
        r.lhs = abs_at(sum, a);
        r.rhs = abs_at(in.phi, a) + abs_at(in.psi, a);
      }
      break;
    }
    case ConditionId::vii:
    case ConditionId::viii: {
      const auto& in = inputs_as<WeightedPairInputs>(id, inputs);
      require_shape(id, a, in.phi);
      require_shape(id, a, in.psi);
      require_hermitian(id, in.phi, "phi");
      require_hermitian(id, in.psi, "psi");
      if (!(in.t >= 0.0 && in.t <= 1.0)) invalid(id, "weight t must lie in [0, 1]");
      const NormalFunctional mix = in.t * in.phi + (1.0 - in.t) * in.psi;
      const auto part = id == ConditionId::vii ? positive_part_at : abs_at;
      r.lhs = part(mix, a);
      r.rhs = in.t * part(in.phi, a) + (1.0 - in.t) * part(in.psi, a);
      break;
    }
    case ConditionId::ix:
    case ConditionId::xi: {
      const auto& in = inputs_as<SingleInputs>(id, inputs);
      require_shape(id, a, in.phi);
      if (id == ConditionId::xi) require_hermitian(id, in.phi, "phi");
      r.lhs = abs_sandwich_gap(in.phi, a, psd_sqrt(a, tol));
      equality = true;
      break;
    }
    case ConditionId::gardner: {
      const auto& in = inputs_as<SingleInputs>(id, inputs);
      require_shape(id, a, in.phi);
      r.lhs = std::abs(evaluate(in.phi, a));
      r.rhs = abs_at(in.phi, a);
      break;
    }
  }
  r.margin = equality ? -r.lhs : r.rhs - r.lhs;
  return r;
}

}  // namespace

std::string_view to_string(ConditionId id) { return kNames[condition_index(id)]; }

std::optional<ConditionId> parse_condition(std::string_view name) {
  for (std::size_t i = 0; i < kNames.size(); ++i) {
    if (kNames[i] == name) return kAllConditions[i];
  }
  return std::nullopt;
}

std::size_t condition_index(ConditionId id) { return static_cast<std::size_t>(id); }

double condition_scale(const AlgebraElement& a, const ConditionInputs& inputs) {
  double functionals = 0.0;
  std::visit(
      [&](const auto& in) {
        using T = std::decay_t<decltype(in)>;
        if constexpr (std::is_same_v<T, DecompositionInputs>) {
          functionals = in.phi.norm() + in.phi1.norm() + in.phi2.norm();
        } else if constexpr (std::is_same_v<T, SingleInputs>) {
          functionals = in.phi.norm();
        } else if constexpr (!std::is_same_v<T, ProjectionInputs>) {
          functionals = in.phi.norm() + in.psi.norm();
        }
      },
      inputs);
  return std::max({1.0, a.norm(), functionals});
}

MarginReport condition_margin(ConditionId id, const AlgebraElement& a, const ConditionInputs& inputs,
                              double tol) {
  if (!is_positive(a, tol).positive) {
    throw Error(ErrorCode::NotPositiveElement, "condition margins need a positive element");
  }
  return evaluate_condition(id, a, inputs, tol);
}

MarginReport condition_margin_trusted(ConditionId id, const AlgebraElement& a,
                                      const ConditionInputs& inputs, double tol) {
  return evaluate_condition(id, a, inputs, tol);
}

ConditionInputs sample_inputs(ConditionId id, const AlgebraShape& shape, RngStream& rng) {
  auto hermitian = [&] { return NormalFunctional(random_hermitian(shape, rng)); };
  auto general = [&] { return NormalFunctional(random_general(shape, rng)); };
  switch (id) {
    case ConditionId::ii:
      return ProjectionInputs{random_projection(shape, rng)};
    case ConditionId::iii: {
      NormalFunctional phi = hermitian();
      const AlgebraElement delta = random_psd(shape, rng);
      const JordanPair jp = jordan_decompose(phi);
      NormalFunctional phi1(jp.positive_part.density() + delta);
      NormalFunctional phi2(jp.negative_part.density() + delta);
      return DecompositionInputs{std::move(phi), std::move(phi1), std::move(phi2)};
    }
    case ConditionId::iv: {
      NormalFunctional phi = hermitian();
      const AlgebraElement delta = random_psd(shape, rng);
      NormalFunctional psi(phi.density() + delta);
      return OrderedPairInputs{std::move(phi), std::move(psi)};
    }
    case ConditionId::v:
    case ConditionId::vi: {
      NormalFunctional phi = hermitian();
      NormalFunctional psi = hermitian();
      return PairInputs{std::move(phi), std::move(psi)};
    }
    case ConditionId::vii:
    case ConditionId::viii: {
      NormalFunctional phi = hermitian();
      NormalFunctional psi = hermitian();
      const double t = rng.uniform();
      return WeightedPairInputs{std::move(phi), std::move(psi), t};
    }
    case ConditionId::x: {
      NormalFunctional phi = general();
      NormalFunctional psi = general();
      return PairInputs{std::move(phi), std::move(psi)};
    }
    case ConditionId::ix:
    case ConditionId::gardner:
      return SingleInputs{general()};
    case ConditionId::xi:
      return SingleInputs{hermitian()};
  }
  throw Error(ErrorCode::InvalidInputs, "unknown condition");
}

ConditionInputs sample_for(ConditionId id, const AlgebraShape& shape, std::uint64_t seed, int index) {
  RngStream rng = RngStream(seed).derive(condition_index(id)).derive(static_cast<std::uint64_t>(index));
  return sample_inputs(id, shape, rng);
}

namespace {

void merge(SampleSummary& into, const SampleSummary& part) {
  into.samples += part.samples;
  into.violations += part.violations;
  if (part.min_relative_margin < into.min_relative_margin ||
      (part.min_relative_margin == into.min_relative_margin && part.argmin >= 0 &&
       (into.argmin < 0 || part.argmin < into.argmin))) {
    into.min_relative_margin = part.min_relative_margin;
    into.argmin = part.argmin;
  }
}

void accumulate(SampleSummary& s, ConditionId id, const AlgebraElement& a, std::uint64_t seed, int i,
                double tol) {
  const MarginReport r = condition_margin_trusted(id, a, sample_for(id, a.shape(), seed, i), tol);
  ++s.samples;
  if (!r.satisfied(tol)) ++s.violations;
  const double rel = r.relative_margin();
  if (rel < s.min_relative_margin || (rel == s.min_relative_margin && i < s.argmin)) {
    s.min_relative_margin = rel;
    s.argmin = i;
  }
}

void require_positive_element(const AlgebraElement& a, double tol) {
  if (!is_positive(a, tol).positive) {
    throw Error(ErrorCode::NotPositiveElement, "sampling needs a positive element");
  }
}

}  // namespace

SampleSummary sample_margins_serial(ConditionId id, const AlgebraElement& a, int samples,
                                    std::uint64_t seed, double tol) {
  require_positive_element(a, tol);
  SampleSummary out;
  for (int i = 0; i < samples; ++i) accumulate(out, id, a, seed, i, tol);
  return out;
}

SampleSummary sample_margins(ConditionId id, const AlgebraElement& a, int samples, std::uint64_t seed,
                             double tol) {
  require_positive_element(a, tol);
  SampleSummary out;
  std::exception_ptr failure;
#pragma omp parallel if (!omp_in_parallel())
  {
    SampleSummary local;
#pragma omp for schedule(static) nowait
    for (int i = 0; i < samples; ++i) {
      try {
        accumulate(local, id, a, seed, i, tol);
      } catch (...) {
#pragma omp critical(centrality_sample_failure)
        if (!failure) failure = std::current_exception();
      }
    }
#pragma omp critical(centrality_sample_merge)
    merge(out, local);
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

}  // namespace centrality
