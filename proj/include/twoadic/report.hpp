#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace twoadic {

enum class Verdict { Pass, Fail, OutOfHypothesis, Refused };

const char* verdict_name(Verdict v) noexcept;
Verdict parse_verdict(const std::string& s);

/// Outcome of one verification routine for one parameter tuple.
struct CheckReport {
  std::string suite;
  std::string name;
  std::map<std::string, std::int64_t> params;
  Verdict verdict = Verdict::Pass;
  std::map<std::string, std::int64_t> counts;
  std::vector<std::string> witnesses;
  std::vector<std::string> notes;
  std::int64_t millis = 0;

  bool passed() const { return verdict == Verdict::Pass; }
  /// Pass, or explicitly outside the hypothesis, or refused.
  bool acceptable() const { return verdict != Verdict::Fail; }

  void add_witness(std::string w, std::size_t cap = 8) {
    if (witnesses.size() < cap) witnesses.push_back(std::move(w));
  }

  friend bool operator==(const CheckReport&, const CheckReport&) = default;
};

/// How exhaustive sweeps are performed.
struct SweepOptions {
  bool sampled = false;
  std::uint64_t seed = 1;
  std::int64_t samples = 10000;
  std::int64_t cap = std::int64_t{1} << 24;  // Overflow beyond this many enumerated elements
};

}  // namespace twoadic
