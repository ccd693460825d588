/* Minimal C consumer: parse a channel, transform it, read metrics. */
#include <stdio.h>
#include <stdlib.h>
#include "../include/polarch.h"

static void bail(const char *where) {
    char *msg = polarch_last_error_message();
    fprintf(stderr, "%s failed: %s\n", where, msg);
    polarch_string_free(msg);
    exit(1);
}

int main(void) {
    PolarchChannel *ch = NULL;
    if (polarch_channel_parse("bsc:1/4", &ch) != POLARCH_STATUS_OK) bail("parse");

    PolarchChannel *up = NULL;
    if (polarch_transform(ch, "11", &up) != POLARCH_STATUS_OK) bail("transform");

    char *json = NULL;
    if (polarch_channel_to_json(up, &json) != POLARCH_STATUS_OK) bail("to_json");
    printf("A_11(B(1/4)) = %s\n", json);
    polarch_string_free(json);

    double capacity = 0.0, bhatt = 0.0;
    char *error_prob = NULL;
    if (polarch_channel_metrics(up, &capacity, &error_prob, &bhatt) != POLARCH_STATUS_OK)
        bail("metrics");
    printf("capacity=%.6f error_prob=%s bhattacharyya=%.6f parts=%zu\n",
           capacity, error_prob, bhatt, polarch_channel_part_count(up));
    polarch_string_free(error_prob);

    char *erasure = NULL;
    if (polarch_bec_erasure("1/2", "0110", &erasure) != POLARCH_STATUS_OK) bail("bec");
    printf("F_0110(1/2) = %s\n", erasure);
    polarch_string_free(erasure);

    polarch_channel_free(up);
    polarch_channel_free(ch);
    return 0;
}
