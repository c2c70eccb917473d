/* Verifies a matrix given on the command line and prints the text report. */
#include <stdio.h>

#include "weylcheck.h"

static int fail(WcStatus status) {
    const char *msg = wc_last_error();
    fprintf(stderr, "error %d: %s\n", (int)status, msg ? msg : "(none)");
    return 2;
}

int main(int argc, char **argv) {
    const char *input = argc > 1 ? argv[1] : "2 -2; -1 2";
    const char *checks = argc > 2 ? argv[2] : NULL;
    WcMatrix *m = NULL;
    WcReport *r = NULL;
    char *text = NULL;
    int passed = 0;
    WcStatus s = wc_matrix_parse(input, &m);
    if (s != WC_STATUS_OK) return fail(s);
    s = wc_verify(m, WC_MODE_BOTH, checks, 4, &r);
    if (s != WC_STATUS_OK) {
        wc_matrix_free(m);
        return fail(s);
    }
    wc_report_passed(r, &passed);
    if (wc_report_text(r, &text) == WC_STATUS_OK) {
        fputs(text, stdout);
        wc_string_free(text);
    }
    char *nf = NULL;
    if (wc_rewrite(m, 1, "F1*E1", &nf) == WC_STATUS_OK) {
        printf("quantum F1*E1 -> %s\n", nf);
        wc_string_free(nf);
    }
    wc_report_free(r);
    wc_matrix_free(m);
    return passed ? 0 : 1;
}
