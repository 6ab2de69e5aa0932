#include <stdio.h>
#include <string.h>

#include "giant_steps.h"

int main(void) {
    GstCount *h = NULL;
    if (gst_count_new("0011100011100", false, &h) != GST_STATUS_OK) {
        fprintf(stderr, "count failed: %s\n", gst_last_error());
        return 1;
    }
    char *count = NULL;
    if (gst_count_value(h, &count) != GST_STATUS_OK) {
        return 1;
    }
    printf("depth %zu count %s\n", gst_count_depth(h), count);
    gst_string_free(count);
    gst_count_free(h);

    if (gst_count_new("DRLD", false, &h) != GST_STATUS_PARSE_ERROR) {
        return 1;
    }
    printf("error %s\n", gst_last_error());
    return 0;
}
