#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tpadic/construct.hpp"
#include "tpadic/verify.hpp"

namespace tpadic {

// Exit statuses of the command-line tool.
enum ExitCode : int {
  kPass = 0,
  kInternal = 1,
  kCertificateFailed = 2,
  kInputRejected = 3,
  kResourceExceeded = 4,
};

struct ParsedConfig {
  JobConfig job;
  std::string out;  // [run] out, empty if absent
};

// Key-value text format with [field], [prime] (repeatable) and [run]
// sections; '#' starts a comment.
ParsedConfig parse_config(const std::string& text);
std::string read_text_file(const std::string& path);

struct Verification {
  std::vector<std::string> global_failures;
  std::vector<SplittingCertificate> splitting;
  IrreducibilityCertificate irreducible;
  HeightReport bound;
  std::optional<ExactHeight> exact;
  std::string exact_failure;
  std::optional<long double> lower;
  bool pass() const;
};

Verification verify_construction(const Construction& C, const std::vector<AlgebraicInt>& g, Exec exec = Exec::parallel);

// Report document (JSON text, schema 1). Integers are decimal strings.
std::string render_report(const Construction& C, const Verification& V, const std::string* timing_json = nullptr);

struct ConstructOptions {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out;
  bool timing = false;
};

struct VerifyOptions {
  std::string report_path;
};

struct SearchCliOptions {
  std::vector<Int> primes;
  int deg_max = 3;
  long coeff_bound = 10;
  std::string out;
};

// Each command reports problems on stderr and returns an ExitCode.
int cmd_construct(const ConstructOptions& opt);
int cmd_verify(const VerifyOptions& opt);
int cmd_search(const SearchCliOptions& opt);

std::vector<Int> parse_prime_list(const std::string& text);

}  // namespace tpadic
