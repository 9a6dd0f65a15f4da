#include <stdio.h>
#include <string.h>

#include "parmon.h"

int main(void) {
    PmMonoid *m = NULL;
    if (pm_gen_no_common_letters("abc", &m) != PM_STATUS_OK) {
        fprintf(stderr, "%s\n", pm_last_error_message());
        return 1;
    }
    bool confluent = true;
    pm_monoid_is_confluent(m, &confluent);

    char *nf = NULL;
    if (pm_normalize(m, "a b a", &nf) != PM_STATUS_OK) {
        fprintf(stderr, "%s\n", pm_last_error_message());
        return 1;
    }
    printf("size=%zu confluent=%d lstd=%s\n", pm_monoid_size(m), confluent, nf);
    int ok = pm_monoid_size(m) == 16 && !confluent && strcmp(nf, "ab a") == 0;

    char *bad = NULL;
    ok = ok && pm_star(m, "a b", "a", &bad) == PM_STATUS_NOT_IRREDUCIBLE && bad == NULL;

    pm_string_free(nf);
    pm_monoid_free(m);
    return ok ? 0 : 1;
}
