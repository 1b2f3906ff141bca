#include <stdio.h>
#include "cckit.h"

int main(void) {
    CckitStructure *s = NULL;
    if (cckit_structure_from_example("acc3", &s) != CCKIT_STATUS_OK) {
        fprintf(stderr, "%s\n", cckit_last_error_message());
        return 2;
    }
    char *report = NULL;
    CckitStatus status = cckit_verify_json(s, &report);
    printf("%s\n", report);
    cckit_string_free(report);
    cckit_structure_free(s);
    return status == CCKIT_STATUS_OK ? 0 : 1;
}
