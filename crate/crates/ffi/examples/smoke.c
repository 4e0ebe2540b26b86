/* Builds the map for E = {turn 0} and probes two points. */
#include <stdio.h>
#include "clarkkit.h"

int main(void) {
    ClarkkitSet *set = NULL, *bad = NULL;
    ClarkkitMap *map = NULL;
    ClarkkitVerdict v;
    if (clarkkit_set_from_json("{\"kind\":\"points\",\"points\":[\"0/1\"]}", &set) != CLARKKIT_STATUS_OK ||
        clarkkit_map_construct(set, CLARKKIT_MODE_DISTANCE, 12, &map) != CLARKKIT_STATUS_OK) {
        fprintf(stderr, "error: %s\n", clarkkit_last_error());
        return 1;
    }
    if (clarkkit_detect(map, 0, 1, 14, &v) != CLARKKIT_STATUS_OK) return 1;
    printf("0/1 %d %.6f %.6f\n", (int)v.kind, v.value, v.julia_limit);
    if (clarkkit_detect(map, 1, 4, 14, &v) != CLARKKIT_STATUS_OK) return 1;
    printf("1/4 %d\n", (int)v.kind);
    if (clarkkit_set_from_json("{\"kind\":\"points\",\"points\":[\"2/4\"]}", &bad) == CLARKKIT_STATUS_OK) return 1;
    printf("rejected: %s\n", clarkkit_last_error());
    clarkkit_map_free(map);
    clarkkit_set_free(set);
    return 0;
}
