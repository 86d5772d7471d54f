#ifndef TGRING_H
#define TGRING_H

/* C interface to the twisted group ring workbench. Every call returns a
 * tgr_status; on failure tgr_last_error() holds a message for the calling
 * thread until its next call into the library. */

#include <stddef.h>

#if defined(_WIN32)
#define TGR_API __declspec(dllexport)
#else
#define TGR_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tgr_status {
    TGR_OK = 0,
    TGR_E_USAGE = 1,        /* bad arguments, including p not an odd prime */
    TGR_E_DOMAIN = 2,       /* mathematically undefined request */
    TGR_E_PRECONDITION = 3, /* an input lacks a required property */
    TGR_E_CONSISTENCY = 4,  /* an internal identity failed */
    TGR_E_RESOURCE = 5,     /* size guard; retry with force */
    TGR_E_INTERNAL = 6
} tgr_status;

typedef struct tgr_options {
    long p;
    long n;
    unsigned threads; /* 0 means 1 */
    int force;
} tgr_options;

typedef struct tgr_tower tgr_tower;
typedef struct tgr_report tgr_report;

TGR_API const char* tgr_version(void);
TGR_API const char* tgr_last_error(void);
TGR_API void tgr_options_init(tgr_options* o);

/* command: "ring" (target ignored), "verify", "appendix" or "oracle" */
TGR_API tgr_status tgr_run(const char* command, const char* target, const tgr_options* o, tgr_report** out);
TGR_API void tgr_report_free(tgr_report* r);
/* 1 if no check failed */
TGR_API int tgr_report_passed(const tgr_report* r);
TGR_API size_t tgr_report_check_count(const tgr_report* r);
/* status is "pass", "fail" or "evidence"; strings live as long as the report */
TGR_API tgr_status tgr_report_check(const tgr_report* r, size_t i, const char** name, const char** status,
                                    const char** expected, const char** actual, const char** detail);
TGR_API long tgr_report_elapsed_ms(const tgr_report* r);
/* rendered reports; with timing = 0 the output is byte-identical across runs */
TGR_API const char* tgr_report_json(tgr_report* r, int timing);
TGR_API const char* tgr_report_text(tgr_report* r, int timing);

TGR_API tgr_status tgr_tower_create(long p, long n, tgr_tower** out);
TGR_API void tgr_tower_free(tgr_tower* t);
TGR_API tgr_status tgr_tower_invariants(const tgr_tower* t, long* b, long* b_bar, long* b_under, long* disc_val);
/* presentation of the cohomology ring; the string lives as long as the tower */
TGR_API tgr_status tgr_tower_ring(tgr_tower* t, const char** text);

TGR_API tgr_status tgr_structure_constant(long p, long b, long j, long k, int* present, long* exponent, long* unit,
                                          int* zero_in_quotient);

#ifdef __cplusplus
}
#endif

#endif
