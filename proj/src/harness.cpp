#include "twoadic/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cstdlib>
#include <functional>
#include <set>
#include <sstream>
#include <thread>
#include <tuple>

#include <json.hpp>

#include "twoadic/characters.hpp"
#include "twoadic/error.hpp"
#include "twoadic/filtration.hpp"
#include "twoadic/lattice.hpp"
#include "twoadic/padic.hpp"
#include "twoadic/projective_line.hpp"

namespace twoadic {

using nlohmann::json;

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

template <class T>
T parse_number(const std::string& key, const std::string& raw) {
  const std::string s = trim(raw);
  T v{};
  const char* end = s.data() + s.size();
  auto [p, ec] = std::from_chars(s.data(), end, v);
  if (s.empty() || ec != std::errc() || p != end)
    fail(ErrorCode::ConfigError, key + ": expected an integer, got '" + raw + "'");
  return v;
}

bool parse_bool(const std::string& key, const std::string& raw) {
  const std::string s = trim(raw);
  if (s == "1" || s == "true" || s == "yes" || s == "on") return true;
  if (s == "0" || s == "false" || s == "no" || s == "off") return false;
  fail(ErrorCode::ConfigError, key + ": expected a boolean, got '" + raw + "'");
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(trim(cur));
  return out;
}

bool contains(const std::vector<std::string>& v, const std::string& s) {
  return std::find(v.begin(), v.end(), s) != v.end();
}

std::vector<std::string> expanded_suites(const RunConfig& cfg) {
  if (contains(cfg.suites, "all")) return known_suites();
  std::vector<std::string> out;
  for (const auto& s : known_suites())
    if (contains(cfg.suites, s)) out.push_back(s);
  return out;
}

// Largest working precision any tuple of the sweep asks for.
int sweep_precision(const RunConfig& cfg) {
  int p = 1;
  const IntRange l = cfg.l_range();
  for (int n = cfg.n.lo; n <= cfg.n.hi; ++n)
    for (int m = cfg.m.lo; m <= cfg.m.hi; ++m)
      for (int k = l.lo; k <= l.hi; ++k) p = std::max(p, minimum_precision(cfg.e, n, m, k));
  return p;
}

struct Task {
  std::string suite;
  std::string name;
  std::map<std::string, std::int64_t> params;
  std::function<CheckReport()> run;
};

CheckReport run_task(const Task& t, bool timing) {
  const auto start = std::chrono::steady_clock::now();
  CheckReport r;
  try {
    r = t.run();
  } catch (const Error& err) {
    r = CheckReport{};
    r.suite = t.suite;
    r.name = t.name;
    r.params = t.params;
    switch (err.code()) {
      case ErrorCode::HypothesisViolated:
      case ErrorCode::InvalidArgument:
      case ErrorCode::NotASubgroup:
      case ErrorCode::Overflow:
        r.verdict = Verdict::Refused;
        break;
      default:
        r.verdict = Verdict::Fail;
        break;
    }
    r.notes.push_back(err.what());
  }
  r.millis = 0;
  if (timing)
    r.millis = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::vector<Task> plan(const RunConfig& cfg, const FieldSpec& f) {
  SweepOptions opts;
  opts.sampled = cfg.sampled;
  opts.seed = cfg.seed;
  opts.samples = cfg.samples;
  opts.cap = cfg.cap;
  const int e = f.e();
  const IntRange lr = cfg.l_range();
  std::vector<Task> tasks;
  std::set<std::tuple<std::string, std::string, std::map<std::string, std::int64_t>>> seen;
  auto add = [&](std::string suite, std::string name, std::map<std::string, std::int64_t> params,
                 std::function<CheckReport()> fn) {
    params["e"] = e;
    if (!seen.insert({suite, name, params}).second) return;
    tasks.push_back({std::move(suite), std::move(name), std::move(params), std::move(fn)});
  };
  const FieldSpec* fp = &f;
  const std::optional<int> prec = cfg.precision;

  for (const auto& suite : expanded_suites(cfg)) {
    for (int n = cfg.n.lo; n <= cfg.n.hi; ++n) {
      if (suite == "projline") {
        add(suite, "stabilizer", {{"n", n}}, [=] { return verify_stabilizer(*fp, n); });
        add(suite, "action", {{"n", n}}, [=] { return action_check(*fp, n, opts); });
      }
      if (suite == "duality") {
        const int depth = n + e + 2;
        add(suite, "additive character", {{"depth", depth}, {"conductor", 0}, {"variant", 0}},
            [=] { return character_check(*fp, depth, 0, 0); });
      }
      for (int m = cfg.m.lo; m <= cfg.m.hi; ++m) {
        if (suite == "normality") {
          add(suite, "K_n^m normal in K", {{"n", n}, {"m", m}}, [=] { return normality_check(*fp, n, m, opts); });
          add(suite, "conjugate intersection", {{"n", n}, {"m", m}},
              [=] { return conjugate_intersection_check(*fp, n, m, opts); });
        }
        if (suite == "projline")
          add(suite, "trivial_action", {{"n", n}, {"m", m}}, [=] { return trivial_action_check(*fp, n, m); });
        for (int l = lr.lo; l <= lr.hi; ++l) {
          const std::map<std::string, std::int64_t> p{{"n", n}, {"m", m}, {"l", l}};
          if (suite == "pairing") {
            add(suite, "closed form", p, [=] { return closed_form_check(*fp, n, m, l, opts); });
            add(suite, "nondegeneracy", p, [=] { return nondegeneracy_check(*fp, n, m, l, opts); });
          }
          if (suite == "theta")
            add(suite, "X -> X-1 isomorphism", p, [=] { return theta_check(*fp, n, m, l, opts, prec); });
          if (suite == "duality") {
            DualityOptions d;
            d.precision = prec;
            add(suite, "characters of G(n,m,l)/G(2n,m,l)", p, [=] { return verify_duality(*fp, n, m, l, opts, d); });
            add(suite, "psi_A psi_B = psi_(A+B)", p, [=] { return psi_product_check(*fp, n, m, l, opts); });
            add(suite, "equivariance psi_A(X^g) = psi_(A^g)(X)", p,
                [=] { return equivariance_check(*fp, n, m, l, opts); });
          }
        }
      }
    }
  }
  return tasks;
}

bool report_less(const CheckReport& a, const CheckReport& b) {
  return std::tie(a.suite, a.params, a.name) < std::tie(b.suite, b.params, b.name);
}

json config_json(const RunConfig& c) {
  json j;
  j["e"] = c.e;
  j["eisenstein"] = c.eisenstein;
  j["n"] = range_to_string(c.n);
  j["m"] = range_to_string(c.m);
  j["l"] = c.l ? json(range_to_string(*c.l)) : json(nullptr);
  j["precision"] = c.precision ? json(*c.precision) : json(nullptr);
  j["mode"] = c.sampled ? "sampled" : "exhaustive";
  j["seed"] = c.seed;
  j["samples"] = c.samples;
  j["suites"] = c.suites;
  j["format"] = c.format;
  j["output"] = c.output;
  j["workers"] = c.workers;
  j["timing"] = c.timing;
  j["cap"] = c.cap;
  return j;
}

RunConfig config_from_json(const json& j) {
  RunConfig c;
  c.e = j.at("e").get<int>();
  c.eisenstein = j.at("eisenstein").get<std::vector<std::int64_t>>();
  c.n = parse_range(j.at("n").get<std::string>());
  c.m = parse_range(j.at("m").get<std::string>());
  if (!j.at("l").is_null()) c.l = parse_range(j.at("l").get<std::string>());
  if (!j.at("precision").is_null()) c.precision = j.at("precision").get<int>();
  c.sampled = j.at("mode").get<std::string>() == "sampled";
  c.seed = j.at("seed").get<std::uint64_t>();
  c.samples = j.at("samples").get<std::int64_t>();
  c.suites = j.at("suites").get<std::vector<std::string>>();
  c.format = j.at("format").get<std::string>();
  c.output = j.at("output").get<std::string>();
  c.workers = j.at("workers").get<int>();
  c.timing = j.at("timing").get<bool>();
  c.cap = j.at("cap").get<std::int64_t>();
  return c;
}

std::string upper_verdict(Verdict v) {
  std::string s = verdict_name(v);
  for (auto& ch : s) ch = static_cast<char>(ch >= 'a' && ch <= 'z' ? ch - 'a' + 'A' : ch);
  return s;
}

}  // namespace

IntRange parse_range(const std::string& raw) {
  const std::string s = trim(raw);
  const auto dots = s.find("..");
  IntRange r;
  if (dots == std::string::npos) {
    r.lo = r.hi = parse_number<int>("range", s);
  } else {
    r.lo = parse_number<int>("range", s.substr(0, dots));
    r.hi = parse_number<int>("range", s.substr(dots + 2));
  }
  if (r.hi < r.lo) fail(ErrorCode::ConfigError, "range '" + raw + "' is empty");
  return r;
}

std::string range_to_string(const IntRange& r) {
  if (r.lo == r.hi) return std::to_string(r.lo);
  return std::to_string(r.lo) + ".." + std::to_string(r.hi);
}

const std::vector<std::string>& known_suites() {
  static const std::vector<std::string> s{"duality", "normality", "pairing", "projline", "theta"};
  return s;
}

void apply_config_key(RunConfig& c, const std::string& raw_key, const std::string& value) {
  const std::string key = trim(raw_key);
  if (key == "e") {
    c.e = parse_number<int>(key, value);
    // Default polynomial x^e - 2 unless one is given later.
    c.eisenstein.assign(static_cast<std::size_t>(std::max(c.e, 0)) + 1, 0);
    c.eisenstein.front() = -2;
    c.eisenstein.back() = 1;
  } else if (key == "eisenstein") {
    c.eisenstein.clear();
    for (const auto& t : split(value, ',')) c.eisenstein.push_back(parse_number<std::int64_t>(key, t));
  } else if (key == "n") {
    c.n = parse_range(value);
  } else if (key == "m") {
    c.m = parse_range(value);
  } else if (key == "l") {
    if (trim(value).empty()) c.l.reset();
    else c.l = parse_range(value);
  } else if (key == "precision") {
    if (trim(value).empty()) c.precision.reset();
    else c.precision = parse_number<int>(key, value);
  } else if (key == "mode") {
    const std::string v = trim(value);
    if (v != "exhaustive" && v != "sampled") fail(ErrorCode::ConfigError, "mode: expected exhaustive or sampled");
    c.sampled = v == "sampled";
  } else if (key == "seed") {
    c.seed = parse_number<std::uint64_t>(key, value);
  } else if (key == "samples") {
    c.samples = parse_number<std::int64_t>(key, value);
  } else if (key == "suite" || key == "suites") {
    c.suites.clear();
    for (const auto& s : split(value, ','))
      if (!s.empty() && !contains(c.suites, s)) c.suites.push_back(s);
  } else if (key == "format") {
    c.format = trim(value);
  } else if (key == "output") {
    c.output = trim(value);
  } else if (key == "workers") {
    c.workers = parse_number<int>(key, value);
  } else if (key == "timing") {
    c.timing = parse_bool(key, value);
  } else if (key == "cap") {
    c.cap = parse_number<std::int64_t>(key, value);
  } else {
    fail(ErrorCode::ConfigError, "unknown key '" + key + "'");
  }
}

RunConfig parse_config_text(const std::string& text) {
  RunConfig c;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      fail(ErrorCode::ConfigError, "line " + std::to_string(lineno) + ": expected key = value");
    apply_config_key(c, line.substr(0, eq), line.substr(eq + 1));
  }
  c.validate();
  return c;
}

std::string config_to_text(const RunConfig& c) {
  std::ostringstream os;
  os << "e = " << c.e << "\neisenstein = ";
  for (std::size_t i = 0; i < c.eisenstein.size(); ++i) os << (i ? "," : "") << c.eisenstein[i];
  os << "\nn = " << range_to_string(c.n) << "\nm = " << range_to_string(c.m) << "\n";
  if (c.l) os << "l = " << range_to_string(*c.l) << "\n";
  if (c.precision) os << "precision = " << *c.precision << "\n";
  os << "mode = " << (c.sampled ? "sampled" : "exhaustive") << "\nseed = " << c.seed << "\nsamples = " << c.samples
     << "\nsuites = ";
  for (std::size_t i = 0; i < c.suites.size(); ++i) os << (i ? "," : "") << c.suites[i];
  os << "\nformat = " << c.format << "\n";
  if (!c.output.empty()) os << "output = " << c.output << "\n";
  os << "workers = " << c.workers << "\ntiming = " << (c.timing ? "true" : "false") << "\ncap = " << c.cap << "\n";
  return os.str();
}

void RunConfig::validate() const {
  if (e < 1 || e > kMaxDegree) fail(ErrorCode::ConfigError, "e: must be between 1 and " + std::to_string(kMaxDegree));
  if (eisenstein.size() != static_cast<std::size_t>(e) + 1)
    fail(ErrorCode::ConfigError, "eisenstein: expected " + std::to_string(e + 1) + " coefficients, constant term first");
  if (n.lo < 1) fail(ErrorCode::ConfigError, "n: must be >= 1");
  if (m.lo < -1) fail(ErrorCode::ConfigError, "m: must be >= -1");
  if (l_range().lo < -1) fail(ErrorCode::ConfigError, "l: must be >= -1");
  if (samples < 1) fail(ErrorCode::ConfigError, "samples: must be positive");
  if (workers < 1) fail(ErrorCode::ConfigError, "workers: must be positive");
  if (cap < 1) fail(ErrorCode::ConfigError, "cap: must be positive");
  if (format != "text" && format != "json") fail(ErrorCode::ConfigError, "format: expected text or json");
  for (const auto& s : suites)
    if (s != "all" && !contains(known_suites(), s)) fail(ErrorCode::ConfigError, "suite: unknown suite '" + s + "'");
  // An explicitly requested duality run outside its hypothesis is refused up front.
  if (contains(suites, "duality")) {
    const IntRange lr = l_range();
    if (m.hi > e || lr.hi > e)
      fail(ErrorCode::ConfigError, "suite duality refused: needs m, l <= e = " + std::to_string(e));
  }
  const int need = sweep_precision(*this);
  if (precision && *precision < need)
    fail(ErrorCode::ConfigError, "precision: override " + std::to_string(*precision) +
                                     " is below the working minimum " + std::to_string(need));
  try {
    const int limit = kCoeffBits * e;
    if (std::max(need, precision.value_or(0)) > limit)
      fail(ErrorCode::ConfigError, "precision: sweep needs " + std::to_string(need) + " digits, limit is " +
                                       std::to_string(limit));
    make_field(e, eisenstein, std::max(need, precision.value_or(0)));
  } catch (const Error& err) {
    if (err.code() == ErrorCode::ConfigError) throw;
    fail(ErrorCode::ConfigError, std::string("eisenstein: ") + err.what());
  }
}

int RunReport::exit_code() const { return count(Verdict::Fail) == 0 ? 0 : 1; }

std::int64_t RunReport::count(Verdict v) const {
  return std::count_if(suites.begin(), suites.end(), [v](const CheckReport& r) { return r.verdict == v; });
}

int effective_workers(const RunConfig& cfg) {
  int w = cfg.workers;
  if (const char* env = std::getenv("TWOADIC_WORKERS")) {
    int cap = 0;
    const std::string s(env);
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), cap);
    if (ec == std::errc() && p == s.data() + s.size() && cap >= 1) w = std::min(w, cap);
  }
  return std::max(w, 1);
}

RunReport run_suites(const RunConfig& cfg) {
  cfg.validate();
  const Field field = make_field(cfg.e, cfg.eisenstein, std::max(sweep_precision(cfg), cfg.precision.value_or(0)));
  RunReport out;
  out.field = field->describe();
  out.config = cfg;

  const std::vector<Task> tasks = plan(cfg, *field);
  std::vector<CheckReport> results(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) results[i] = run_task(tasks[i], cfg.timing);
  };
  const int w = std::min<int>(effective_workers(cfg), static_cast<int>(std::max<std::size_t>(tasks.size(), 1)));
  if (w <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < w; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  std::stable_sort(results.begin(), results.end(), report_less);
  out.suites = std::move(results);
  return out;
}

std::string emit_json(const RunReport& r) {
  json j;
  j["schemaVersion"] = r.schema_version;
  j["version"] = r.version;
  j["field"] = r.field;
  j["config"] = config_json(r.config);
  json suites = json::array();
  for (const auto& c : r.suites) {
    json s;
    s["suite"] = c.suite;
    s["name"] = c.name;
    s["params"] = c.params;
    s["verdict"] = verdict_name(c.verdict);
    s["counts"] = c.counts;
    s["witnesses"] = c.witnesses;
    s["notes"] = c.notes;
    s["millis"] = c.millis;
    suites.push_back(std::move(s));
  }
  j["suites"] = std::move(suites);
  return j.dump(2) + "\n";
}

RunReport parse_report_json(const std::string& text) {
  RunReport r;
  try {
    const json j = json::parse(text);
    r.schema_version = j.at("schemaVersion").get<int>();
    if (r.schema_version != kSchemaVersion)
      fail(ErrorCode::ConfigError, "unsupported schemaVersion " + std::to_string(r.schema_version));
    r.version = j.at("version").get<std::string>();
    r.field = j.at("field").get<std::string>();
    r.config = config_from_json(j.at("config"));
    for (const auto& s : j.at("suites")) {
      CheckReport c;
      c.suite = s.at("suite").get<std::string>();
      c.name = s.at("name").get<std::string>();
      c.params = s.at("params").get<std::map<std::string, std::int64_t>>();
      c.verdict = parse_verdict(s.at("verdict").get<std::string>());
      c.counts = s.at("counts").get<std::map<std::string, std::int64_t>>();
      c.witnesses = s.at("witnesses").get<std::vector<std::string>>();
      c.notes = s.at("notes").get<std::vector<std::string>>();
      c.millis = s.at("millis").get<std::int64_t>();
      r.suites.push_back(std::move(c));
    }
  } catch (const json::exception& err) {
    fail(ErrorCode::ConfigError, std::string("report json: ") + err.what());
  }
  return r;
}

std::string emit_text(const RunReport& r) {
  std::ostringstream os;
  os << "twoadic " << r.version << "  field " << r.field << "  mode " << (r.config.sampled ? "sampled" : "exhaustive");
  if (r.config.sampled) os << " seed=" << r.config.seed << " samples=" << r.config.samples;
  os << "\n";
  std::string current;
  for (const auto& c : r.suites) {
    if (c.suite != current) {
      current = c.suite;
      os << "\n[" << current << "]\n";
    }
    os << upper_verdict(c.verdict) << "  " << c.name << "  ";
    bool first = true;
    for (const auto& [k, v] : c.params) {
      os << (first ? "" : " ") << k << "=" << v;
      first = false;
    }
    if (r.config.timing) os << "  " << c.millis << " ms";
    os << "\n";
    for (const auto& w : c.witnesses) os << "    witness: " << w << "\n";
    if (c.verdict != Verdict::Pass)
      for (const auto& n : c.notes) os << "    note: " << n << "\n";
  }
  os << "\npass=" << r.count(Verdict::Pass) << " fail=" << r.count(Verdict::Fail)
     << " out-of-hypothesis=" << r.count(Verdict::OutOfHypothesis) << " refused=" << r.count(Verdict::Refused) << "\n";
  return os.str();
}

std::string emit_report(const RunReport& r, const std::string& format) {
  if (format == "json") return emit_json(r);
  if (format == "text") return emit_text(r);
  fail(ErrorCode::ConfigError, "format: expected text or json");
}

}  // namespace twoadic
