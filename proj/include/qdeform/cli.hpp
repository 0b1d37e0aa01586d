#pragma once

#include "qdeform/verify.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qdeform {

inline constexpr const char* kVersion = "1.0.0";
inline constexpr std::uint64_t kDefaultSeed = 20240917;

// Thrown for anything the user got wrong; maps to exit code 2.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// "0.7", "1+0.5i", "0.3i", "root:3", "phase:1/3", "exp:0.1i" (q = e^z).
DeformationParam parse_q_spec(const std::string& spec);

struct RunConfig {
  std::string suite;
  std::vector<std::string> q;  // empty: per-suite defaults
  std::optional<int> cutoff;
  std::optional<int> margin;
  std::optional<Statistics> stats;
  std::map<std::string, double> tolerances;
  std::string format = "json";
  std::string out;
  std::uint64_t seed = kDefaultSeed;
};

std::optional<std::uint64_t> parse_seed(const char* text);
// "PREFIX=VAL"
std::pair<std::string, double> parse_tolerance(const std::string& text);

struct SuiteInfo {
  std::string name;
  std::string summary;
  std::vector<std::string> default_q;
  int default_cutoff = 12;
};

const std::vector<SuiteInfo>& suite_registry();

struct RunReport {
  std::string version = kVersion;
  std::map<std::string, std::string> config;
  // one block per suite and q
  std::vector<SuiteReport> suites;

  bool passed() const;
  bool operator==(const RunReport& other) const;
};

// Throws UsageError for bad configurations and lets construction failures
// propagate.
RunReport run(const RunConfig& config);

// 0 pass, 1 verification failure
int exit_code(const RunReport& report);

std::string to_json(const RunReport& report);
RunReport from_json(const std::string& text);
std::string to_text(const RunReport& report);

// Runs a full invocation: parses nothing, but maps exceptions to exit codes
// and writes the serialized report to `out` or the stream.
int run_and_write(const RunConfig& config, std::ostream& os, std::ostream& err);

}  // namespace qdeform
