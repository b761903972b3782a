#include "twoadic/report.hpp"

#include "twoadic/error.hpp"

namespace twoadic {

const char* verdict_name(Verdict v) noexcept {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::OutOfHypothesis: return "out-of-hypothesis";
    case Verdict::Refused: return "refused";
  }
  return "unknown";
}

Verdict parse_verdict(const std::string& s) {
  for (Verdict v : {Verdict::Pass, Verdict::Fail, Verdict::OutOfHypothesis, Verdict::Refused})
    if (s == verdict_name(v)) return v;
  fail(ErrorCode::ConfigError, "unknown verdict '" + s + "'");
}

}  // namespace twoadic
