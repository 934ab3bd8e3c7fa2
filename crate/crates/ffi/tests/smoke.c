#include <stdio.h>
#include <string.h>

#include "dpcy.h"

int main(void) {
    DpcyIdeal *d6 = NULL;
    if (dpcy_surface_new(DPCY_SURFACE_D6, 0, 7, 32003, &d6) != DPCY_STATUS_OK) {
        fprintf(stderr, "construct: %s\n", dpcy_last_error());
        return 1;
    }
    size_t quadrics = 0;
    int64_t dim = 0, deg = 0;
    if (dpcy_ideal_generator_count(d6, 2, &quadrics) != DPCY_STATUS_OK ||
        dpcy_ideal_dimension_degree(d6, &dim, &deg) != DPCY_STATUS_OK) {
        return 1;
    }
    char *census = NULL;
    dpcy_ideal_census(d6, &census);
    printf("%zu %lld %lld %s\n", quadrics, (long long)dim, (long long)deg, census);
    dpcy_string_free(census);
    dpcy_ideal_free(d6);

    DpcyIdeal *bad = NULL;
    DpcyStatus s = dpcy_ideal_from_json("{\"ring\":{\"vars\":[\"x\"],\"char\":32003},\"gens\":[\"y\"]}", &bad);
    printf("%d %s\n", (int)s, dpcy_last_error());
    return bad == NULL ? 0 : 1;
}
