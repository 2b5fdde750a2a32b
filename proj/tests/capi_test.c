#include "ww/ww.h"

#include <stdio.h>
#include <string.h>

static int failures = 0;

#define EXPECT(cond)                                                    \
    do {                                                                \
        if (!(cond)) {                                                  \
            fprintf(stderr, "%s:%d: %s\n", __FILE__, __LINE__, #cond); \
            ++failures;                                                 \
        }                                                               \
    } while (0)

int main(void)
{
    ww_problem* p = NULL;
    ww_result* r = NULL;
    int verdict = -1;

    EXPECT(strlen(ww_version()) > 0);
    EXPECT(ww_problem_open("nope", &p) == WW_ERR_UNKNOWN);
    EXPECT(p == NULL);
    EXPECT(strlen(ww_last_error()) > 0);
    EXPECT(ww_problem_open(NULL, &p) == WW_ERR_ARGUMENT);

    EXPECT(ww_problem_open("llpo", &p) == WW_OK);
    EXPECT(p != NULL);
    EXPECT(strcmp(ww_problem_name(p), "llpo") == 0);
    EXPECT(ww_problem_generate(p, 3, 0, &r) == WW_ERR_ARGUMENT);
    EXPECT(ww_problem_generate(p, 3, 16, &r) == WW_OK);
    EXPECT(ww_problem_check_instance(p, ww_result_text(r), 16, &verdict) == WW_OK);
    EXPECT(verdict == WW_PASS);
    ww_result_free(r);
    r = NULL;
    EXPECT(ww_problem_check_instance(p, "not a value ((", 16, &verdict) == WW_ERR_PARSE);
    ww_problem_close(p);
    ww_problem_close(NULL);

    EXPECT(ww_list(WW_LIST_REDUCTIONS, NULL, &r) == WW_OK);
    EXPECT(strstr(ww_result_text(r), "dne-limn") != NULL);
    ww_result_free(r);

    EXPECT(ww_verify_reduction("dml-rt12", 0, 3, 16, &r) == WW_OK);
    EXPECT(ww_result_outcome(r) == WW_OUTCOME_EXPECTED);
    ww_result_free(r);
    EXPECT(ww_verify_reduction("nope", 0, 3, 16, &r) == WW_ERR_UNKNOWN);

    EXPECT(ww_play("llpo", "llpo", "echo", 0, 1, 8, 16, &r) == WW_OK);
    EXPECT(ww_result_outcome(r) == WW_OUTCOME_EXPECTED);
    ww_result_free(r);
    EXPECT(ww_play("llpo", "llpo", "query (take\n", 1, 1, 8, 16, &r) == WW_ERR_PARSE);

    EXPECT(ww_adversary("two-vs-aou-game", "echo", 30, &r) == WW_OK);
    EXPECT(ww_result_outcome(r) == WW_OUTCOME_EXPECTED);
    ww_result_free(r);

    EXPECT(ww_bound("declare-now", 0, 10, 16, &r) == WW_OK);
    EXPECT(strlen(ww_result_text(r)) > 0);
    ww_result_free(r);
    ww_result_free(NULL);

    EXPECT(strcmp(ww_status_text(WW_ERR_PARSE), ww_status_text(WW_OK)) != 0);

    if (failures) fprintf(stderr, "%d failures\n", failures);
    else printf("capi: ok\n");
    return failures ? 1 : 0;
}
