// centrality-kit: decide whether a positive element of a finite direct sum of
// matrix algebras is central, and emit re-verifiable certificates when it is not.
//
// Exit codes: 0 consistent / verified, 1 invalid certificate or internal
// inconsistency, 2 input error.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <omp.h>

#include "CLI11.hpp"
#include "centrality/errors.hpp"
#include "centrality/fuzz.hpp"
#include "centrality/io.hpp"

namespace fs = std::filesystem;
using namespace centrality;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitInput = 2;

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

std::string join_dims(const std::vector<int>& dims) {
  std::string out;
  for (std::size_t i = 0; i < dims.size(); ++i) out += (i ? "," : "") + std::to_string(dims[i]);
  return out;
}

std::vector<int> parse_blocks(const std::string& text) {
  std::vector<int> dims;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    int d = 0;
    try {
      d = std::stoi(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size() || item.empty()) {
      throw Error(ErrorCode::SchemaError, "--blocks expects comma-separated integers, got \"" + text + "\"");
    }
    dims.push_back(d);
  }
  return dims;
}

double parse_mix(const std::string& text) {
  const std::string prefix = "central:";
  if (text.rfind(prefix, 0) != 0) throw Error(ErrorCode::SchemaError, "--mix expects central:<fraction>");
  std::size_t used = 0;
  double f = -1.0;
  try {
    f = std::stod(text.substr(prefix.size()), &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size() - prefix.size() || !(f >= 0.0 && f <= 1.0)) {
    throw Error(ErrorCode::SchemaError, "--mix fraction must lie in [0, 1]");
  }
  return f;
}

void print_report(const Report& report) {
  std::cout << "blocks [" << join_dims(report.nearest_central.shape().block_dims()) << "]\n";
  if (report.central) {
    std::cout << "oracle: central (distance " << fmt(report.center_distance) << ")\n";
  } else {
    std::cout << "oracle: non-central (distance " << fmt(report.center_distance) << ", nearest central:";
    for (const auto& b : report.nearest_central.blocks()) std::cout << ' ' << fmt(b(0, 0).real()) << "*I";
    std::cout << ")\n";
  }
  std::printf("%-9s %-10s %13s %13s %13s %8s\n", "condition", "verdict", "lhs", "rhs", "margin", "samples");
  for (const Verdict& v : report.verdicts) {
    const bool sat = v.status == VerdictStatus::Satisfied;
    const std::string lhs = v.certificate ? fmt(v.certificate->lhs) : "-";
    const std::string rhs = v.certificate ? fmt(v.certificate->rhs) : "-";
    const std::string margin =
        v.certificate ? fmt(v.certificate->margin)
                      : (v.sampling.samples > 0 ? ">= " + fmt(v.sampling.min_relative_margin) + "*s" : "-");
    std::printf("%-9s %-10s %13s %13s %13s %8d\n", std::string(to_string(v.condition)).c_str(),
                sat ? "Satisfied" : "Violated", lhs.c_str(), rhs.c_str(), margin.c_str(), v.sampling.samples);
  }
  if (report.lemma) {
    std::cout << "witness pair: eps = " << fmt(report.lemma->epsilon) << ", lambda0 = " << fmt(report.lemma->lambda0)
              << ", |psi1 - psi2|(a) = " << fmt(report.lemma->lhs) << " > (psi1 + psi2)(a) = "
              << fmt(report.lemma->rhs) << '\n';
  }
}

int run_check(const std::string& path, std::optional<double> tol_flag, int samples, std::uint64_t seed, bool json) {
  const Instance instance = load_instance(path);
  CheckParams params;
  params.tol = tol_flag.value_or(instance.tol.value_or(kDefaultTol));
  params.samples = samples;
  params.seed = seed;
  const Report report = check_all(instance.element, params);
  if (json) {
    std::cout << report_to_json(report, params).dump(2) << '\n';
  } else {
    print_report(report);
  }
  return kExitOk;
}

int run_witness(const std::string& path, const std::string& condition, const std::string& out_dir,
                std::uint64_t seed) {
  const Instance instance = load_instance(path);
  const double tol = instance.tol.value_or(kDefaultTol);
  std::vector<ConditionId> wanted;
  if (condition == "all") {
    wanted.assign(kAllConditions.begin(), kAllConditions.end());
  } else if (auto id = parse_condition(condition)) {
    wanted.push_back(*id);
  } else {
    throw Error(ErrorCode::SchemaError, "unknown condition \"" + condition + "\"");
  }

  std::optional<WitnessChain> chain;
  try {
    chain = build_witness_chain(instance.element, tol);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::NotPositiveElement) throw;
    throw Error(ErrorCode::InconsistentMath, e.what());
  }
  if (!chain) {
    std::cout << "element is central (distance " << fmt(center_distance(instance.element, tol).distance)
              << "); no condition can be violated, no certificates written\n";
    return kExitOk;
  }

  fs::create_directories(out_dir);
  for (ConditionId id : wanted) {
    CertificateFile cert{id, instance.shape, chain->certificates.at(id), std::nullopt,
                         std::string(kToolVersion), seed};
    if (id != ConditionId::ii && id != ConditionId::gardner) cert.lemma = chain->lemma;
    const fs::path file = fs::path(out_dir) / ("cert-" + std::string(to_string(id)) + ".json");
    write_json_file(file, serialize_certificate(cert));
    std::cout << to_string(id) << ": lhs " << fmt(cert.report.lhs) << ", rhs " << fmt(cert.report.rhs) << ", margin "
              << fmt(cert.report.margin) << " -> " << file.string() << '\n';
  }
  return kExitOk;
}

int run_verify(const std::string& cert_path, const std::string& instance_path, std::optional<double> tol_flag) {
  const CertificateFile cert = load_certificate(cert_path);
  const Instance instance = load_instance(instance_path);
  if (!(cert.shape == instance.shape)) {
    throw Error(ErrorCode::ShapeMismatch, "certificate and instance have different block structures");
  }
  const double tol = tol_flag.value_or(instance.tol.value_or(kDefaultTol));
  if (verify_certificate_file(cert, instance.element, tol)) {
    std::cout << "verified: condition " << to_string(cert.condition) << " is violated (lhs " << fmt(cert.report.lhs)
              << ", rhs " << fmt(cert.report.rhs) << ")\n";
    return kExitOk;
  }
  std::cout << "INVALID: certificate for condition " << to_string(cert.condition)
            << " does not verify against the instance\n";
  return kExitInvalid;
}

int run_fuzz(const std::string& blocks, int trials, std::uint64_t seed, const std::string& mix, int samples,
             double tol, bool json, const std::string& reproducer) {
  FuzzConfig config{AlgebraShape(parse_blocks(blocks)), trials, seed, parse_mix(mix), samples, tol};
  if (trials < 0 || samples < 0) throw Error(ErrorCode::SchemaError, "--trials and --samples must be nonnegative");
  const FuzzSummary summary = fuzz_campaign(config);
  if (json) {
    std::cout << fuzz_summary_to_json(config, summary).dump(2) << '\n';
  } else {
    std::cout << "trials " << summary.trials << " (central " << summary.central_trials << ", non-central "
              << summary.noncentral_trials << ")\n"
              << "certificates verified " << summary.certificates_verified << " / " << summary.certificates_emitted
              << '\n'
              << "min central relative margin " << fmt(summary.min_central_margin) << '\n'
              << "min relative violation " << fmt(summary.min_violation_magnitude) << '\n'
              << "inconsistencies " << summary.inconsistencies << '\n';
  }
  if (summary.first_failure) {
    write_json_file(reproducer, reproducer_to_json(config, *summary.first_failure));
    std::cerr << "inconsistency in trial " << summary.first_failure->trial << ": " << summary.first_failure->message
              << "\nreproducer written to " << reproducer << '\n';
    return kExitInvalid;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Centrality checks and counterexample certificates for finite-dimensional *-algebras"};
  app.fallthrough();
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads, "OpenMP threads (0 = runtime default)");

  auto* check = app.add_subcommand("check", "Oracle verdict and all eleven condition verdicts");
  std::string check_path;
  std::optional<double> check_tol;
  int check_samples = kDefaultSamples;
  std::uint64_t check_seed = 0;
  bool check_json = false;
  check->add_option("INSTANCE", check_path, "instance file")->required();
  check->add_option("--tol", check_tol, "relative tolerance (default: file value or 1e-9)");
  check->add_option("--samples", check_samples, "samples per condition")->check(CLI::NonNegativeNumber);
  check->add_option("--seed", check_seed, "master seed");
  check->add_flag("--json", check_json, "machine-readable output");

  auto* witness = app.add_subcommand("witness", "Write certificate files for a non-central element");
  std::string witness_path;
  std::string witness_condition = "all";
  std::string witness_out = ".";
  std::uint64_t witness_seed = 0;
  witness->add_option("INSTANCE", witness_path, "instance file")->required();
  witness->add_option("--condition", witness_condition, "ii|iii|iv|v|vi|vii|viii|ix|x|xi|gardner|all");
  witness->add_option("--out", witness_out, "output directory");
  witness->add_option("--seed", witness_seed, "master seed recorded in the certificates");

  auto* verify = app.add_subcommand("verify", "Recompute a certificate against an instance");
  std::string verify_cert;
  std::string verify_instance;
  std::optional<double> verify_tol;
  verify->add_option("CERT", verify_cert, "certificate file")->required();
  verify->add_option("INSTANCE", verify_instance, "instance file")->required();
  verify->add_option("--tol", verify_tol, "relative tolerance");

  auto* fuzz = app.add_subcommand("fuzz", "Seeded campaign over central and non-central instances");
  std::string fuzz_blocks = "2";
  int fuzz_trials = 1000;
  std::uint64_t fuzz_seed = 42;
  std::string fuzz_mix = "central:0.5";
  int fuzz_samples = kDefaultSamples;
  double fuzz_tol = kDefaultTol;
  bool fuzz_json = false;
  std::string fuzz_reproducer = "fuzz-reproducer.json";
  fuzz->add_option("--blocks", fuzz_blocks, "block dimensions, e.g. 2,3");
  fuzz->add_option("--trials", fuzz_trials, "number of trials");
  fuzz->add_option("--seed", fuzz_seed, "master seed");
  fuzz->add_option("--mix", fuzz_mix, "central:<fraction>");
  fuzz->add_option("--samples", fuzz_samples, "samples per condition on central trials");
  fuzz->add_option("--tol", fuzz_tol, "relative tolerance");
  fuzz->add_flag("--json", fuzz_json, "machine-readable output");
  fuzz->add_option("--reproducer", fuzz_reproducer, "where to write the reproducer on inconsistency");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }
  if (threads > 0) omp_set_num_threads(threads);

  try {
    if (*check) return run_check(check_path, check_tol, check_samples, check_seed, check_json);
    if (*witness) return run_witness(witness_path, witness_condition, witness_out, witness_seed);
    if (*verify) return run_verify(verify_cert, verify_instance, verify_tol);
    if (*fuzz) {
      return run_fuzz(fuzz_blocks, fuzz_trials, fuzz_seed, fuzz_mix, fuzz_samples, fuzz_tol, fuzz_json,
                      fuzz_reproducer);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.code() == ErrorCode::InconsistentMath ? kExitInvalid : kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitInput;
}
