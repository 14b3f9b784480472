/* Links against libqsym_ffi.a through the generated header. */
#include <stdio.h>
#include <string.h>
#include "qsym.h"

int main(void) {
    QsymRatFun *b = NULL;
    char *s = NULL;
    bool holds = false;
    if (qsym_beta_higher(1, 1, 1, 0, &b) != QSYM_STATUS_OK) return 10;
    if (qsym_ratfun_to_pretty(b, &s) != QSYM_STATUS_OK) return 11;
    if (strcmp(s, "-1/(1+q)") != 0) return 12;
    qsym_string_free(s);
    if (qsym_ratfun_eval(b, "2", &s) != QSYM_STATUS_OK) return 13;
    if (strcmp(s, "-1/3") != 0) return 14;
    qsym_string_free(s);
    qsym_ratfun_free(b);
    if (qsym_beta_weighted(1, 0, 1, 1, 0, &b) != QSYM_STATUS_DEGENERATE) return 15;
    if (qsym_last_error() == NULL) return 16;
    if (qsym_check("thm3", 2, 1, 0, 2, 3, 1, &holds, NULL) != QSYM_STATUS_OK || !holds) return 17;
    puts("ok");
    return 0;
}
