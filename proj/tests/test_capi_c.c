/* Compiles the public header as C and exercises a few calls. */
#include <stdio.h>
#include <string.h>

#include "cwsearch/cwsearch.h"

static int failures = 0;

#define EXPECT(cond)                                               \
    do {                                                           \
        if (!(cond)) {                                             \
            fprintf(stderr, "%s:%d: %s\n", __FILE__, __LINE__, #cond); \
            ++failures;                                            \
        }                                                          \
    } while (0)

static int count_cb(const int* seq, size_t d, int paf_zero, void* user) {
    (void)seq;
    (void)d;
    (void)paf_zero;
    ++*(int*)user;
    return 0;
}

int main(void) {
    const int b2[20] = {0, 0, 0, 0, 0, 0, 0, 0, 3, 3, 0, 0, 0, 0, 0, 0, 0, 0, 3, -3};
    const int mu[7] = {16, 0, 0, 0, 0, 3, 1};
    int ok = 0;
    int count = 0;
    char* size = NULL;
    cw_content_list* list = NULL;

    EXPECT(cw_verify_sequence(b2, 20, 36, &ok) == CW_OK && ok == 1);
    EXPECT(cw_fiber_size(b2, 20, 3, &size) == CW_OK);
    EXPECT(size != NULL && strcmp(size, "33232930569601") == 0);
    cw_string_free(size);

    EXPECT(cw_contents_solve(20, 36, 6, 3, &list) == CW_OK);
    EXPECT(cw_content_list_size(list) == 76);
    cw_content_list_free(list);

    EXPECT(cw_bracelets(mu, 7, 1, count_cb, &count) == CW_OK);
    EXPECT(count == 3);

    EXPECT(cw_contents_solve(-1, 36, 6, 3, &list) == CW_E_INVALID_ARGUMENT);
    EXPECT(strlen(cw_last_error()) > 0);

    if (failures == 0) printf("C API smoke test passed\n");
    return failures == 0 ? 0 : 1;
}
