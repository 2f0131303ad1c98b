#include <math.h>
#include <stdio.h>
#include <string.h>

#include "berezin.h"

#define CHECK(cond)                                              \
    do {                                                         \
        if (!(cond)) {                                           \
            fprintf(stderr, "%s:%d: %s\n", __FILE__, __LINE__, #cond); \
            return 1;                                            \
        }                                                        \
    } while (0)

int main(void) {
    BzOperator *op = NULL;
    CHECK(bz_operator_parse("rank1:m=2,n=3", &op) == BZ_STATUS_OK);

    BzRange range;
    CHECK(bz_predict_range(op, 0.5, &range) == BZ_STATUS_OK);
    CHECK(range.shape == BZ_SHAPE_CLOSED_DISC);
    CHECK(fabs(range.radius - 25.0 * sqrt(5.0) / 216.0) < 1e-12);

    BzComplex lambda = {0.3, -0.4}, value;
    CHECK(bz_berezin_transform(op, 0.5, lambda, &value) == BZ_STATUS_OK);
    CHECK(hypot(value.re, value.im) <= range.radius);
    bz_operator_free(op);

    CHECK(bz_operator_parse("geom:a=1.2", &op) == BZ_STATUS_INVALID_ARGUMENT);
    CHECK(strstr(bz_last_error_message(), "|a|") != NULL);

    printf("ok %s\n", bz_version());
    return 0;
}
