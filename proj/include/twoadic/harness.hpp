#pragma once

// Run configuration, suite orchestration and report emission behind the
// command-line tool and the C API.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "twoadic/report.hpp"

namespace twoadic {

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kLibraryVersion = "0.3.0";

struct IntRange {
  int lo = 0;
  int hi = 0;
  friend bool operator==(const IntRange&, const IntRange&) = default;
};

/// "a..b" or a single integer.
IntRange parse_range(const std::string& s);
std::string range_to_string(const IntRange& r);

struct RunConfig {
  int e = 1;
  std::vector<std::int64_t> eisenstein{-2, 1};
  IntRange n{1, 1};
  IntRange m{0, 0};
  std::optional<IntRange> l;  // defaults to the m range
  std::optional<int> precision;
  bool sampled = false;
  std::uint64_t seed = 1;
  std::int64_t samples = 10000;
  std::vector<std::string> suites;  // expanded, in canonical order
  std::string format = "text";
  std::string output;  // empty: stdout
  int workers = 1;
  bool timing = false;  // wall-time in reports breaks byte-identical output
  std::int64_t cap = std::int64_t{1} << 24;

  IntRange l_range() const { return l ? *l : m; }
  /// Throws ConfigError naming the offending key.
  void validate() const;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

const std::vector<std::string>& known_suites();

/// key = value lines, '#' starts a comment; later keys override earlier ones.
RunConfig parse_config_text(const std::string& text);
/// Single assignment, shared by the text parser and flag handling.
void apply_config_key(RunConfig& cfg, const std::string& key, const std::string& value);
std::string config_to_text(const RunConfig& cfg);

struct RunReport {
  int schema_version = kSchemaVersion;
  std::string version = kLibraryVersion;
  std::string field;
  RunConfig config;
  std::vector<CheckReport> suites;

  /// 0 iff nothing failed; out-of-hypothesis and refused entries do not count.
  int exit_code() const;
  std::int64_t count(Verdict v) const;

  friend bool operator==(const RunReport&, const RunReport&) = default;
};

/// Worker count actually used: config value capped by TWOADIC_WORKERS.
int effective_workers(const RunConfig& cfg);

RunReport run_suites(const RunConfig& cfg);

std::string emit_json(const RunReport& r);
RunReport parse_report_json(const std::string& text);
/// One line per (suite, check, parameter tuple).
std::string emit_text(const RunReport& r);
std::string emit_report(const RunReport& r, const std::string& format);

}  // namespace twoadic
