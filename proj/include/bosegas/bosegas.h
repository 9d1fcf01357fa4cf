#ifndef BOSEGAS_H
#define BOSEGAS_H

/* C interface of the bosegas library. Handles are opaque; every call that can
 * fail returns a status and leaves a message in bosegas_last_error(), which
 * is per thread and valid until the next failing call on that thread.
 * Strings returned by accessors live as long as their handle. */

#include <stddef.h>

#if defined(_WIN32)
#define BOSEGAS_API __declspec(dllexport)
#else
#define BOSEGAS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
  BOSEGAS_OK = 0,
  BOSEGAS_ERR_CONFIG = 1,     /* bad configuration or arguments */
  BOSEGAS_ERR_CONTRACT = 2,   /* precondition violated */
  BOSEGAS_ERR_RESOLUTION = 3, /* truncation or tail budget not met */
  BOSEGAS_ERR_SOLVER = 4,     /* root finder or inversion failed */
  BOSEGAS_ERR_MODEL = 5,      /* inputs outside the model */
  BOSEGAS_ERR_INTERNAL = 6
} bosegas_status;

typedef struct bosegas_config bosegas_config;
typedef struct bosegas_result bosegas_result;
typedef struct bosegas_sweep bosegas_sweep;
typedef struct bosegas_verification bosegas_verification;

BOSEGAS_API const char* bosegas_last_error(void);
BOSEGAS_API const char* bosegas_status_name(bosegas_status s);

BOSEGAS_API bosegas_status bosegas_config_load(const char* path, bosegas_config** out);
BOSEGAS_API bosegas_status bosegas_config_parse(const char* text, bosegas_config** out);
/* Output path from the config, "" when absent. */
BOSEGAS_API const char* bosegas_config_out(const bosegas_config* c);
BOSEGAS_API void bosegas_config_free(bosegas_config* c);

BOSEGAS_API bosegas_status bosegas_compute(const bosegas_config* c, bosegas_result** out);
BOSEGAS_API const char* bosegas_csv_header(void);
BOSEGAS_API const char* bosegas_result_csv_row(const bosegas_result* r);
BOSEGAS_API const char* bosegas_result_describe(const bosegas_result* r);
BOSEGAS_API double bosegas_result_total(const bosegas_result* r);
BOSEGAS_API void bosegas_result_free(bosegas_result* r);

/* range is "START:STOP:STEP". */
BOSEGAS_API bosegas_status bosegas_sweep_run(const bosegas_config* c, const char* range, bosegas_sweep** out);
BOSEGAS_API size_t bosegas_sweep_rows(const bosegas_sweep* s);
/* Header and one line per kappa, newline terminated. */
BOSEGAS_API const char* bosegas_sweep_csv(const bosegas_sweep* s);
/* 1 and the bracketing kappas when the selected branch changes, else 0. */
BOSEGAS_API int bosegas_sweep_branch_switch(const bosegas_sweep* s, double* kappa_lo, double* kappa_hi);
BOSEGAS_API void bosegas_sweep_free(bosegas_sweep* s);

/* suite is a module name or "all". */
BOSEGAS_API bosegas_status bosegas_verify_run(const bosegas_config* c, const char* suite, bosegas_verification** out);
/* One JSON object per check, newline terminated. */
BOSEGAS_API const char* bosegas_verification_jsonl(const bosegas_verification* v);
BOSEGAS_API size_t bosegas_verification_count(const bosegas_verification* v);
BOSEGAS_API size_t bosegas_verification_failed(const bosegas_verification* v);
BOSEGAS_API void bosegas_verification_free(bosegas_verification* v);

#ifdef __cplusplus
}
#endif

#endif
