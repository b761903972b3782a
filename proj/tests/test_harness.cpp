#include <doctest.h>

#include <cstdlib>
#include <sstream>

#include "twoadic/error.hpp"
#include "twoadic/harness.hpp"

using namespace twoadic;

namespace {

ErrorCode code_of(const std::string& text) {
  try {
    parse_config_text(text);
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::Internal;
}

std::string message_of(const std::string& text) {
  try {
    parse_config_text(text);
  } catch (const Error& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("ranges") {
  CHECK(parse_range("1..2") == IntRange{1, 2});
  CHECK(parse_range(" 3 ") == IntRange{3, 3});
  CHECK(parse_range("-1..1") == IntRange{-1, 1});
  CHECK_THROWS_AS(parse_range("2..1"), Error);
  CHECK_THROWS_AS(parse_range("x"), Error);
  CHECK(range_to_string({0, 2}) == "0..2");
}

TEST_CASE("config parsing") {
  const RunConfig a = parse_config_text("e = 1\neisenstein =  -2,1\nsuite = duality\nn = 1\nm = 0\nl = 0\n");
  CHECK(a.e == 1);
  CHECK(a.eisenstein == std::vector<std::int64_t>{-2, 1});
  CHECK(a.suites == std::vector<std::string>{"duality"});
  CHECK(a.l_range() == IntRange{0, 0});

  const RunConfig b = parse_config_text("# sweep\ne = 2\neisenstein = -2,0,1\nsuite = all\nn = 1..2\nm = 0..2\n");
  CHECK(b.n == IntRange{1, 2});
  CHECK(b.m == IntRange{0, 2});
  CHECK(b.l_range() == IntRange{0, 2});  // l follows m by default

  // e alone picks x^e - 2
  CHECK(parse_config_text("e = 3\n").eisenstein == std::vector<std::int64_t>{-2, 0, 0, 1});
  CHECK(parse_config_text("mode = sampled\nseed = 42\n").sampled);
  CHECK(config_to_text(b).find("n = 1..2") != std::string::npos);
  CHECK(parse_config_text(config_to_text(b)) == b);
}

TEST_CASE("config errors name the field") {
  CHECK(code_of("m = 3\ne = 2\nsuite = duality\n") == ErrorCode::ConfigError);
  CHECK(message_of("m = 3\ne = 2\nsuite = duality\n").find("duality") != std::string::npos);
  CHECK(message_of("e = 2\nm = -2\n").find("m:") != std::string::npos);
  CHECK(message_of("bogus = 1\n").find("bogus") != std::string::npos);
  CHECK(message_of("e = 2\neisenstein = -4,0,1\n").find("eisenstein") != std::string::npos);
  CHECK(message_of("e = 2\neisenstein = -2,1\n").find("eisenstein") != std::string::npos);
  CHECK(message_of("format = xml\n").find("format") != std::string::npos);
  CHECK(message_of("suite = nope\n").find("suite") != std::string::npos);
  CHECK(message_of("n = 0\n").find("n:") != std::string::npos);
  CHECK(message_of("no equals sign\n").find("line 1") != std::string::npos);
  // precision may only raise the minimum (Q2, n = m = l = 1 needs 5)
  CHECK(message_of("n = 1\nm = 1\nprecision = 3\n").find("precision") != std::string::npos);
  CHECK_NOTHROW(parse_config_text("n = 1\nm = 1\nprecision = 9\n"));
  // with suite = all, duality tuples outside the hypothesis are reported, not refused up front
  CHECK_NOTHROW(parse_config_text("e = 2\nm = 3\nsuite = all\n"));
}

TEST_CASE("empty suite list") {
  const RunReport r = run_suites(parse_config_text("suite =\n"));
  CHECK(r.suites.empty());
  CHECK(r.exit_code() == 0);
}

TEST_CASE("projline run, JSON round trip and text lines") {
  RunConfig c = parse_config_text("suite = projline\nn = 1..2\nm = 0..1\nformat = json\n");
  const RunReport r = run_suites(c);
  CHECK(r.exit_code() == 0);
  // stabilizer and action per n, trivial action per (n, m)
  CHECK(r.suites.size() == 8);
  const std::string js = emit_json(r);
  CHECK(js.find("\"schemaVersion\": 1") != std::string::npos);
  const RunReport back = parse_report_json(js);
  CHECK(back == r);
  CHECK(emit_json(back) == js);

  const std::string text = emit_text(r);
  std::istringstream is(text);
  std::string line;
  int verdict_lines = 0;
  while (std::getline(is, line))
    if (line.rfind("PASS  ", 0) == 0 || line.rfind("FAIL  ", 0) == 0) ++verdict_lines;
  CHECK(verdict_lines == static_cast<int>(r.suites.size()));
}

TEST_CASE("reports are sorted by suite then parameters") {
  const RunReport r = run_suites(parse_config_text("suite = theta,projline\nn = 1\nm = 0..1\nl = 0\n"));
  for (std::size_t i = 1; i < r.suites.size(); ++i) {
    const auto& a = r.suites[i - 1];
    const auto& b = r.suites[i];
    CHECK((a.suite < b.suite || (a.suite == b.suite && a.params <= b.params)));
  }
}

TEST_CASE("worker count does not change the report") {
  const std::string base = "suite = pairing,theta,projline\nn = 1\nm = 0..1\nl = 0\nformat = json\n";
  const RunReport one = run_suites(parse_config_text(base + "workers = 1\n"));
  const RunReport three = run_suites(parse_config_text(base + "workers = 3\n"));
  CHECK(one.suites == three.suites);
  CHECK(emit_json(run_suites(parse_config_text(base + "workers = 1\n"))) == emit_json(one));
}

TEST_CASE("TWOADIC_WORKERS caps the worker count") {
  RunConfig c;
  c.workers = 8;
  ::setenv("TWOADIC_WORKERS", "2", 1);
  CHECK(effective_workers(c) == 2);
  ::setenv("TWOADIC_WORKERS", "garbage", 1);
  CHECK(effective_workers(c) == 8);
  ::unsetenv("TWOADIC_WORKERS");
  CHECK(effective_workers(c) == 8);
}

TEST_CASE("sampled mode records its seed") {
  const RunReport r = run_suites(parse_config_text("suite = pairing\nn = 1\nm = 0\nmode = sampled\nseed = 77\n"));
  const std::string js = emit_json(r);
  CHECK(js.find("\"seed\": 77") != std::string::npos);
  CHECK(emit_text(r).find("seed=77") != std::string::npos);
}

TEST_CASE("out-of-hypothesis normality probe") {
  const RunReport r = run_suites(parse_config_text("suite = normality\nn = 2\nm = 2\n"));
  bool seen = false;
  for (const auto& c : r.suites)
    if (c.name == "K_n^m normal in K") {
      seen = true;
      CHECK(c.verdict == Verdict::OutOfHypothesis);
      CHECK_FALSE(c.notes.empty());
    }
  CHECK(seen);
  CHECK(r.count(Verdict::Fail) == 0);
  CHECK(r.exit_code() == 0);
}

TEST_CASE("duality tuples outside the hypothesis inside an all-suite sweep are refused entries") {
  const RunReport s = run_suites(parse_config_text("suite = all\nn = 1\nm = 2\nl = 0\n"));
  bool refused = false;
  for (const auto& c : s.suites)
    if (c.suite == "duality" && c.params.count("m") && c.params.at("m") == 2) refused |= c.verdict == Verdict::Refused;
  CHECK(refused);
}

TEST_CASE("timing off gives zero millis") {
  const RunReport r = run_suites(parse_config_text("suite = projline\nn = 1\n"));
  for (const auto& c : r.suites) CHECK(c.millis == 0);
}
