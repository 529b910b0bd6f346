#include "centrality/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "centrality/errors.hpp"
#include "centrality/rng.hpp"

namespace centrality {

namespace {

[[noreturn]] void schema_error(const std::string& what) { throw Error(ErrorCode::SchemaError, what); }

const Json& member(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) schema_error(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

double number(const Json& j, const char* what) {
  if (!j.is_number()) schema_error(std::string(what) + " must be a number");
  return j.get<double>();
}

AlgebraShape decode_shape(const Json& j) {
  if (!j.is_array() || j.empty()) schema_error("\"blocks\" must be a nonempty array of integers");
  std::vector<int> dims;
  for (const auto& d : j) {
    if (!d.is_number_integer()) schema_error("\"blocks\" entries must be integers");
    dims.push_back(d.get<int>());
  }
  return AlgebraShape(std::move(dims));
}

Json encode_shape(const AlgebraShape& shape) { return Json(shape.block_dims()); }

Json encode_functional(const NormalFunctional& f) { return encode_element(f.density()); }

NormalFunctional decode_functional(const Json& j, const AlgebraShape& shape) {
  return NormalFunctional(decode_element(j, shape));
}

Json encode_inputs(const ConditionInputs& inputs) {
  Json out = Json::object();
  std::visit(
      [&](const auto& in) {
        using T = std::decay_t<decltype(in)>;
        if constexpr (std::is_same_v<T, ProjectionInputs>) {
          out["projection"] = encode_element(in.p);
        } else if constexpr (std::is_same_v<T, DecompositionInputs>) {
          out["phi"] = encode_functional(in.phi);
          out["phi1"] = encode_functional(in.phi1);
          out["phi2"] = encode_functional(in.phi2);
        } else if constexpr (std::is_same_v<T, SingleInputs>) {
          out["phi"] = encode_functional(in.phi);
        } else {
          out["phi"] = encode_functional(in.phi);
          out["psi"] = encode_functional(in.psi);
          if constexpr (std::is_same_v<T, WeightedPairInputs>) out["t"] = in.t;
        }
      },
      inputs);
  return out;
}

ConditionInputs decode_inputs(ConditionId id, const Json& j, const AlgebraShape& shape) {
  auto fn = [&](const char* key) { return decode_functional(member(j, key), shape); };
  switch (id) {
    case ConditionId::ii:
      return ProjectionInputs{decode_element(member(j, "projection"), shape)};
    case ConditionId::iii:
      return DecompositionInputs{fn("phi"), fn("phi1"), fn("phi2")};
    case ConditionId::iv:
      return OrderedPairInputs{fn("phi"), fn("psi")};
    case ConditionId::v:
    case ConditionId::vi:
    case ConditionId::x:
      return PairInputs{fn("phi"), fn("psi")};
    case ConditionId::vii:
    case ConditionId::viii: {
      NormalFunctional phi = fn("phi");
      NormalFunctional psi = fn("psi");
      return WeightedPairInputs{std::move(phi), std::move(psi), number(member(j, "t"), "t")};
    }
    case ConditionId::ix:
    case ConditionId::xi:
    case ConditionId::gardner:
      return SingleInputs{fn("phi")};
  }
  schema_error("unknown condition");
}

Json encode_lemma(const Lemma1Witness& w) {
  return Json{{"symmetry", encode_element(w.symmetry)},
              {"state", encode_functional(w.state)},
              {"epsilon", w.epsilon},
              {"lambda0", w.lambda0},
              {"psi1", encode_functional(w.psi1)},
              {"psi2", encode_functional(w.psi2)},
              {"state_at_a", w.state_at_a},
              {"lhs", w.lhs},
              {"rhs", w.rhs},
              {"scale", w.scale}};
}

Lemma1Witness decode_lemma(const Json& j, const AlgebraShape& shape) {
  return Lemma1Witness{decode_element(member(j, "symmetry"), shape),
                       decode_functional(member(j, "state"), shape),
                       number(member(j, "epsilon"), "epsilon"),
                       number(member(j, "lambda0"), "lambda0"),
                       decode_functional(member(j, "psi1"), shape),
                       decode_functional(member(j, "psi2"), shape),
                       number(member(j, "state_at_a"), "state_at_a"),
                       number(member(j, "lhs"), "lhs"),
                       number(member(j, "rhs"), "rhs"),
                       number(member(j, "scale"), "scale")};
}

Json nullable(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

template <typename F>
auto translate_json_errors(F&& f) {
  try {
    return f();
  } catch (const Json::exception& e) {
    schema_error(e.what());
  }
}

}  // namespace

Json encode_matrix(const ComplexMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back({m(i, k).real(), m(i, k).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

ComplexMatrix decode_matrix(const Json& j, int dim) {
  if (!j.is_array()) schema_error("matrix must be an array of rows");
  if (static_cast<int>(j.size()) != dim) {
    throw Error(ErrorCode::DimensionMismatch, "expected " + std::to_string(dim) + " rows, got " +
                                                  std::to_string(j.size()));
  }
  ComplexMatrix m(dim, dim);
  for (int i = 0; i < dim; ++i) {
    const Json& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array()) schema_error("matrix rows must be arrays");
    if (static_cast<int>(row.size()) != dim) {
      throw Error(ErrorCode::DimensionMismatch, "expected " + std::to_string(dim) + " entries in row " +
                                                    std::to_string(i));
    }
    for (int k = 0; k < dim; ++k) {
      const Json& z = row[static_cast<std::size_t>(k)];
      if (!z.is_array() || z.size() != 2 || !z[0].is_number() || !z[1].is_number()) {
        schema_error("matrix entries must be [re, im] number pairs");
      }
      m(i, k) = Complex(z[0].get<double>(), z[1].get<double>());
    }
  }
  return m;
}

Json encode_element(const AlgebraElement& x) {
  Json out = Json::array();
  for (const auto& b : x.blocks()) out.push_back(encode_matrix(b));
  return out;
}

AlgebraElement decode_element(const Json& j, const AlgebraShape& shape) {
  if (!j.is_array()) schema_error("element must be an array of block matrices");
  if (j.size() != shape.num_blocks()) {
    throw Error(ErrorCode::DimensionMismatch, "expected " + std::to_string(shape.num_blocks()) +
                                                  " blocks, got " + std::to_string(j.size()));
  }
  std::vector<ComplexMatrix> blocks;
  for (std::size_t k = 0; k < shape.num_blocks(); ++k) blocks.push_back(decode_matrix(j[k], shape.block_dim(k)));
  return {shape, std::move(blocks)};
}

Instance parse_instance(const Json& j) {
  return translate_json_errors([&] {
    if (!j.is_object()) schema_error("instance must be a JSON object");
    if (j.contains("schema") && j.at("schema") != kInstanceSchema) {
      schema_error("unsupported schema tag " + j.at("schema").dump());
    }
    AlgebraShape shape = decode_shape(member(j, "blocks"));
    AlgebraElement element = decode_element(member(j, "element"), shape);
    std::optional<double> tol;
    if (j.contains("tol")) {
      tol = number(j.at("tol"), "tol");
      if (!(*tol > 0.0)) schema_error("tol must be positive");
    }
    const PositivityReport pos = is_positive(element, tol.value_or(kDefaultTol));
    if (!pos.positive) {
      throw Error(ErrorCode::NotPositive,
                  "element is not positive (min eigenvalue " + format_number(pos.min_eigenvalue) + ")");
    }
    Instance out{shape, std::move(element), {}, tol};
    if (j.contains("functionals")) {
      const Json& fs = j.at("functionals");
      if (!fs.is_object()) schema_error("\"functionals\" must be an object of named densities");
      for (const auto& [name, density] : fs.items()) {
        out.functionals.emplace(name, decode_functional(density, shape));
      }
    }
    return out;
  });
}

Json serialize_instance(const Instance& instance) {
  Json j{{"schema", kInstanceSchema},
         {"blocks", encode_shape(instance.shape)},
         {"element", encode_element(instance.element)}};
  if (instance.tol) j["tol"] = *instance.tol;
  if (!instance.functionals.empty()) {
    Json fs = Json::object();
    for (const auto& [name, f] : instance.functionals) fs[name] = encode_functional(f);
    j["functionals"] = std::move(fs);
  }
  return j;
}

Instance load_instance(const std::filesystem::path& path) { return parse_instance(read_json_file(path)); }

Json serialize_certificate(const CertificateFile& cert) {
  Json payload = encode_inputs(cert.report.inputs);
  if (cert.lemma) payload["lemma1"] = encode_lemma(*cert.lemma);
  return Json{{"schema", kCertificateSchema},
              {"condition", to_string(cert.condition)},
              {"blocks", encode_shape(cert.shape)},
              {"payload", std::move(payload)},
              {"lhs", cert.report.lhs},
              {"rhs", cert.report.rhs},
              {"margin", cert.report.margin},
              {"scale", cert.report.scale},
              {"tool_version", cert.tool_version},
              {"master_seed", cert.master_seed}};
}

CertificateFile parse_certificate(const Json& j) {
  return translate_json_errors([&] {
    if (!j.is_object()) schema_error("certificate must be a JSON object");
    if (member(j, "schema") != kCertificateSchema) schema_error("unsupported schema tag " + j.at("schema").dump());
    const Json& cond = member(j, "condition");
    if (!cond.is_string()) schema_error("\"condition\" must be a string");
    const auto id = parse_condition(cond.get<std::string>());
    if (!id) schema_error("unknown condition " + cond.dump());
    AlgebraShape shape = decode_shape(member(j, "blocks"));
    const Json& payload = member(j, "payload");
    MarginReport report{*id,
                        number(member(j, "lhs"), "lhs"),
                        number(member(j, "rhs"), "rhs"),
                        number(member(j, "margin"), "margin"),
                        number(member(j, "scale"), "scale"),
                        decode_inputs(*id, payload, shape)};
    std::optional<Lemma1Witness> lemma;
    if (payload.contains("lemma1")) lemma = decode_lemma(payload.at("lemma1"), shape);
    const Json& version = member(j, "tool_version");
    const Json& seed = member(j, "master_seed");
    if (!version.is_string()) schema_error("\"tool_version\" must be a string");
    if (!seed.is_number_unsigned() && !seed.is_number_integer()) schema_error("\"master_seed\" must be an integer");
    return CertificateFile{*id, std::move(shape), std::move(report), std::move(lemma),
                           version.get<std::string>(), seed.get<std::uint64_t>()};
  });
}

CertificateFile load_certificate(const std::filesystem::path& path) {
  return parse_certificate(read_json_file(path));
}

bool verify_certificate_file(const CertificateFile& cert, const AlgebraElement& a, double tol) {
  if (cert.report.condition != cert.condition) return false;
  if (!verify_certificate(cert.report, a, tol)) return false;
  return !cert.lemma || verify_certificate(*cert.lemma, a, tol);
}

Json report_to_json(const Report& report, const CheckParams& params) {
  Json verdicts = Json::array();
  for (const Verdict& v : report.verdicts) {
    Json jv{{"condition", to_string(v.condition)},
            {"status", v.status == VerdictStatus::Satisfied ? "satisfied" : "violated"},
            {"samples", v.sampling.samples},
            {"sampled_violations", v.sampling.violations},
            {"min_relative_margin", nullable(v.sampling.min_relative_margin)}};
    if (v.certificate) {
      jv["certificate"] = Json{{"lhs", v.certificate->lhs},
                               {"rhs", v.certificate->rhs},
                               {"margin", v.certificate->margin},
                               {"scale", v.certificate->scale}};
    }
    verdicts.push_back(std::move(jv));
  }
  Json out{{"tool_version", kToolVersion},
           {"rng", kRngName},
           {"seed", params.seed},
           {"tol", params.tol},
           {"samples", params.samples},
           {"blocks", encode_shape(report.nearest_central.shape())},
           {"central", report.central},
           {"center_distance", report.center_distance},
           {"scale", report.scale},
           {"nearest_central", encode_element(report.nearest_central)},
           {"verdicts", std::move(verdicts)}};
  if (report.lemma) {
    out["lemma1"] = Json{{"epsilon", report.lemma->epsilon},
                         {"lambda0", report.lemma->lambda0},
                         {"lhs", report.lemma->lhs},
                         {"rhs", report.lemma->rhs},
                         {"margin", report.lemma->margin()}};
  }
  return out;
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) schema_error("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    schema_error(path.string() + ": " + e.what());
  }
}

void write_json_file(const std::filesystem::path& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

}  // namespace centrality
