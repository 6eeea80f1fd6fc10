#include <stdio.h>
#include <string.h>
#include "cy3lab.h"

int main(void) {
    Cy3Quiver *q = NULL;
    size_t v = 0, a = 0, t = 0;
    if (cy3_catalog_quiver("yN0", 3, &q) != CY3_STATUS_OK) return 1;
    if (cy3_quiver_counts(q, &v, &a, &t) != CY3_STATUS_OK) return 2;
    cy3_quiver_free(q);
    if (v != 6) return 3;
    if (cy3_catalog_quiver("nosuch", 0, &q) != CY3_STATUS_NOT_FOUND) return 4;
    if (strcmp(cy3_last_error_code(), "UnknownEntry") != 0) return 5;
    Cy3Series *s = NULL;
    if (cy3_dt0_product(1, 2, &s) != CY3_STATUS_OK) return 6;
    char *text = NULL;
    if (cy3_series_to_text(s, &text) != CY3_STATUS_OK) return 7;
    printf("%s", text);
    cy3_string_free(text);
    cy3_series_free(s);
    return 0;
}
