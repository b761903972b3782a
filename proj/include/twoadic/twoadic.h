#ifndef TWOADIC_TWOADIC_H
#define TWOADIC_TWOADIC_H

/* C interface to the verification library. Every handle is opaque; every
   call that can fail returns a status and leaves a thread-local message
   readable through twoadic_last_error(). Strings handed out by the library
   are released with twoadic_string_free(). */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  ifdef TWOADIC_BUILDING
#    define TWOADIC_API __declspec(dllexport)
#  else
#    define TWOADIC_API __declspec(dllimport)
#  endif
#else
#  define TWOADIC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum twoadic_status {
  TWOADIC_OK = 0,
  TWOADIC_ERR_NULL_ARGUMENT = 1,
  TWOADIC_ERR_CONFIG = 2,
  TWOADIC_ERR_NOT_EISENSTEIN = 3,
  TWOADIC_ERR_PRECISION = 4,
  TWOADIC_ERR_HYPOTHESIS = 5,
  TWOADIC_ERR_OVERFLOW = 6,
  TWOADIC_ERR_INVALID_ARGUMENT = 7,
  TWOADIC_ERR_INTERNAL = 8
} twoadic_status;

typedef struct twoadic_field twoadic_field;
typedef struct twoadic_config twoadic_config;
typedef struct twoadic_report twoadic_report;

TWOADIC_API const char* twoadic_version(void);
TWOADIC_API const char* twoadic_status_name(twoadic_status s);
/* Message of the last failing call on this thread; "" if none. */
TWOADIC_API const char* twoadic_last_error(void);
TWOADIC_API void twoadic_string_free(char* s);

/* Totally ramified extension of Q_2 cut out by the Eisenstein polynomial
   with coefficients c_0..c_e (constant term first). */
TWOADIC_API twoadic_status twoadic_field_new(int e, const int64_t* coeffs, size_t ncoeffs, int precision,
                                             twoadic_field** out);
TWOADIC_API void twoadic_field_free(twoadic_field* f);
TWOADIC_API int twoadic_field_degree(const twoadic_field* f);
TWOADIC_API twoadic_status twoadic_field_describe(const twoadic_field* f, char** out);

/* key = value lines; see the README for the keys. */
TWOADIC_API twoadic_status twoadic_config_from_text(const char* text, twoadic_config** out);
TWOADIC_API void twoadic_config_free(twoadic_config* c);
/* Output path ("" for stdout) and format ("text" or "json"); owned by the handle. */
TWOADIC_API const char* twoadic_config_output(const twoadic_config* c);
TWOADIC_API const char* twoadic_config_format(const twoadic_config* c);

TWOADIC_API twoadic_status twoadic_run(const twoadic_config* c, twoadic_report** out);
TWOADIC_API void twoadic_report_free(twoadic_report* r);
/* format NULL uses the format of the config the report was run with. */
TWOADIC_API twoadic_status twoadic_report_emit(const twoadic_report* r, const char* format, char** out);
TWOADIC_API twoadic_status twoadic_report_from_json(const char* text, twoadic_report** out);
TWOADIC_API size_t twoadic_report_size(const twoadic_report* r);
TWOADIC_API size_t twoadic_report_failures(const twoadic_report* r);
/* 0 iff no entry failed. */
TWOADIC_API int twoadic_report_exit_code(const twoadic_report* r);

#ifdef __cplusplus
}
#endif

#endif
