#include "twoadic/twoadic.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "twoadic/error.hpp"
#include "twoadic/harness.hpp"
#include "twoadic/padic.hpp"

struct twoadic_field {
  twoadic::Field field;
};

struct twoadic_config {
  twoadic::RunConfig cfg;
};

struct twoadic_report {
  twoadic::RunReport report;
};

namespace {

thread_local std::string g_last_error;

twoadic_status status_of(twoadic::ErrorCode c) {
  using twoadic::ErrorCode;
  switch (c) {
    case ErrorCode::ConfigError: return TWOADIC_ERR_CONFIG;
    case ErrorCode::NotEisenstein: return TWOADIC_ERR_NOT_EISENSTEIN;
    case ErrorCode::PrecisionTooSmall:
    case ErrorCode::PrecisionMismatch:
    case ErrorCode::PrecisionExhausted: return TWOADIC_ERR_PRECISION;
    case ErrorCode::HypothesisViolated: return TWOADIC_ERR_HYPOTHESIS;
    case ErrorCode::Overflow: return TWOADIC_ERR_OVERFLOW;
    case ErrorCode::Internal: return TWOADIC_ERR_INTERNAL;
    default: return TWOADIC_ERR_INVALID_ARGUMENT;
  }
}

template <class F>
twoadic_status guarded(F&& f) {
  g_last_error.clear();
  try {
    f();
    return TWOADIC_OK;
  } catch (const twoadic::Error& e) {
    g_last_error = e.what();
    return status_of(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return TWOADIC_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown exception";
    return TWOADIC_ERR_INTERNAL;
  }
}

twoadic_status null_arg(const char* what) {
  g_last_error = std::string("null argument: ") + what;
  return TWOADIC_ERR_NULL_ARGUMENT;
}

char* dup_string(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (p == nullptr) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

}  // namespace

extern "C" {

const char* twoadic_version(void) { return twoadic::kLibraryVersion; }

const char* twoadic_status_name(twoadic_status s) {
  switch (s) {
    case TWOADIC_OK: return "ok";
    case TWOADIC_ERR_NULL_ARGUMENT: return "null argument";
    case TWOADIC_ERR_CONFIG: return "config error";
    case TWOADIC_ERR_NOT_EISENSTEIN: return "not eisenstein";
    case TWOADIC_ERR_PRECISION: return "precision error";
    case TWOADIC_ERR_HYPOTHESIS: return "hypothesis violated";
    case TWOADIC_ERR_OVERFLOW: return "overflow";
    case TWOADIC_ERR_INVALID_ARGUMENT: return "invalid argument";
    case TWOADIC_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* twoadic_last_error(void) { return g_last_error.c_str(); }

void twoadic_string_free(char* s) { std::free(s); }

twoadic_status twoadic_field_new(int e, const int64_t* coeffs, size_t ncoeffs, int precision, twoadic_field** out) {
  if (out == nullptr) return null_arg("out");
  *out = nullptr;
  if (coeffs == nullptr && ncoeffs != 0) return null_arg("coeffs");
  return guarded([&] {
    const std::span<const std::int64_t> c(coeffs, ncoeffs);
    *out = new twoadic_field{twoadic::make_field(e, c, precision)};
  });
}

void twoadic_field_free(twoadic_field* f) { delete f; }

int twoadic_field_degree(const twoadic_field* f) { return f ? f->field->e() : 0; }

twoadic_status twoadic_field_describe(const twoadic_field* f, char** out) {
  if (f == nullptr) return null_arg("field");
  if (out == nullptr) return null_arg("out");
  *out = nullptr;
  return guarded([&] { *out = dup_string(f->field->describe()); });
}

twoadic_status twoadic_config_from_text(const char* text, twoadic_config** out) {
  if (out == nullptr) return null_arg("out");
  *out = nullptr;
  if (text == nullptr) return null_arg("text");
  return guarded([&] { *out = new twoadic_config{twoadic::parse_config_text(text)}; });
}

void twoadic_config_free(twoadic_config* c) { delete c; }

const char* twoadic_config_output(const twoadic_config* c) { return c ? c->cfg.output.c_str() : ""; }

const char* twoadic_config_format(const twoadic_config* c) { return c ? c->cfg.format.c_str() : ""; }

twoadic_status twoadic_run(const twoadic_config* c, twoadic_report** out) {
  if (out == nullptr) return null_arg("out");
  *out = nullptr;
  if (c == nullptr) return null_arg("config");
  return guarded([&] { *out = new twoadic_report{twoadic::run_suites(c->cfg)}; });
}

void twoadic_report_free(twoadic_report* r) { delete r; }

twoadic_status twoadic_report_emit(const twoadic_report* r, const char* format, char** out) {
  if (out == nullptr) return null_arg("out");
  *out = nullptr;
  if (r == nullptr) return null_arg("report");
  return guarded([&] {
    const std::string fmt = format ? format : r->report.config.format;
    *out = dup_string(twoadic::emit_report(r->report, fmt));
  });
}

twoadic_status twoadic_report_from_json(const char* text, twoadic_report** out) {
  if (out == nullptr) return null_arg("out");
  *out = nullptr;
  if (text == nullptr) return null_arg("text");
  return guarded([&] { *out = new twoadic_report{twoadic::parse_report_json(text)}; });
}

size_t twoadic_report_size(const twoadic_report* r) { return r ? r->report.suites.size() : 0; }

size_t twoadic_report_failures(const twoadic_report* r) {
  return r ? static_cast<size_t>(r->report.count(twoadic::Verdict::Fail)) : 0;
}

int twoadic_report_exit_code(const twoadic_report* r) { return r ? r->report.exit_code() : 2; }

}  // extern "C"
