#ifndef WW_WW_H
#define WW_WW_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define WW_API __declspec(dllexport)
#else
#define WW_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes returned by every call. */
typedef enum {
    WW_OK = 0,
    WW_ERR_ARGUMENT = 1, /* null pointer, zero depth, bad bound */
    WW_ERR_UNKNOWN = 2,  /* unknown problem, reduction, adversary or strategy name */
    WW_ERR_PARSE = 3,    /* malformed instance text, map code or strategy file */
    WW_ERR_INTERNAL = 4
} ww_status;

/* What a finished run means for its caller. */
typedef enum {
    WW_OUTCOME_EXPECTED = 0,  /* all Pass / the expected player won */
    WW_OUTCOME_FAILED = 1,    /* some Fail / the other player won */
    WW_OUTCOME_UNDECIDED = 3  /* Indeterminate / budget exhausted */
} ww_outcome;

typedef enum { WW_PASS = 0, WW_FAIL = 1, WW_INDETERMINATE = 2 } ww_verdict;

typedef enum { WW_LIST_PROBLEMS, WW_LIST_REDUCTIONS, WW_LIST_ADVERSARIES, WW_LIST_CODE_STRATEGIES, WW_LIST_BOUND_STRATEGIES } ww_list_kind;

typedef struct ww_problem ww_problem;
typedef struct ww_result ww_result;

WW_API const char* ww_version(void);
WW_API const char* ww_status_text(int status);
/* Message of the last failed call on this thread; "" when none. */
WW_API const char* ww_last_error(void);

/* Newline-separated names; for WW_LIST_CODE_STRATEGIES `adversary` is ignored,
   WW_LIST_ADVERSARIES with a non-null adversary lists that adversary's corpus. */
WW_API int ww_list(int kind, const char* adversary, ww_result** out);

WW_API int ww_problem_open(const char* name, ww_problem** out);
WW_API void ww_problem_close(ww_problem* p);
WW_API const char* ww_problem_name(const ww_problem* p);
/* Instance text in the value block format. */
WW_API int ww_problem_generate(const ww_problem* p, uint64_t seed, size_t depth, ww_result** out);
WW_API int ww_problem_check_instance(const ww_problem* p, const char* text, size_t depth, int* verdict);
WW_API int ww_problem_check_solution(const ww_problem* p, const char* instance, const char* solution, size_t depth,
                                     int* verdict);

/* Shipped reduction by name (both directions when present), seeds first_seed.. */
WW_API int ww_verify_reduction(const char* name, uint64_t first_seed, size_t seeds, size_t depth, ww_result** out);
/* Witness file: lines "f NAME", "g NAME", "inner CODE", "outer CODE"; '#' comments. */
WW_API int ww_verify_witness_text(const char* text, uint64_t first_seed, size_t seeds, size_t depth, ww_result** out);

/* strategy: a code-strategy name, or strategy file text when strategy_is_text is nonzero.
   The expected winner is II. */
WW_API int ww_play(const char* f, const char* g, const char* strategy, int strategy_is_text, uint64_t seed,
                   size_t max_rounds, size_t depth, ww_result** out);
/* The expected winner is I. */
WW_API int ww_adversary(const char* adversary, const char* strategy, size_t max_stage, ww_result** out);
WW_API int ww_bound(const char* strategy, uint64_t seed, size_t max_stage, size_t depth, ww_result** out);

WW_API const char* ww_result_text(const ww_result* r);
WW_API int ww_result_outcome(const ww_result* r);
WW_API void ww_result_free(ww_result* r);

#ifdef __cplusplus
}
#endif

#endif
