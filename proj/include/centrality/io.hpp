#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "json.hpp"

#include "centrality/checker.hpp"

namespace centrality {

inline constexpr std::string_view kInstanceSchema = "centrality-kit/instance-v1";
inline constexpr std::string_view kCertificateSchema = "centrality-kit/cert-v1";
inline constexpr std::string_view kToolVersion = "0.1.0";

using Json = nlohmann::json;

// Matrices are row-major lists of rows, each entry an [re, im] pair. Elements
// are lists of such matrices, one per block.
Json encode_matrix(const ComplexMatrix& m);
ComplexMatrix decode_matrix(const Json& j, int dim);
Json encode_element(const AlgebraElement& x);
AlgebraElement decode_element(const Json& j, const AlgebraShape& shape);

struct Instance {
  AlgebraShape shape;
  AlgebraElement element;
  std::map<std::string, NormalFunctional> functionals;
  std::optional<double> tol;
};

/// Throws SchemaError for malformed documents, DimensionMismatch when matrix
/// sizes disagree with "blocks", and NotPositive when the element is not PSD.
Instance parse_instance(const Json& j);
Instance load_instance(const std::filesystem::path& path);
Json serialize_instance(const Instance& instance);

struct CertificateFile {
  ConditionId condition;
  AlgebraShape shape;
  MarginReport report;
  std::optional<Lemma1Witness> lemma;  // present for certificates derived from the witness pair
  std::string tool_version{kToolVersion};
  std::uint64_t master_seed = 0;
};

Json serialize_certificate(const CertificateFile& cert);
CertificateFile parse_certificate(const Json& j);
CertificateFile load_certificate(const std::filesystem::path& path);

/// verify_certificate on the report and, when present, on the Lemma witness.
bool verify_certificate_file(const CertificateFile& cert, const AlgebraElement& a, double tol = kDefaultTol);

/// Machine-readable check report.
Json report_to_json(const Report& report, const CheckParams& params);

Json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const Json& j);

}  // namespace centrality
