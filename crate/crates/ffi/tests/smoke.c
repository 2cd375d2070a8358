#include <stdio.h>
#include <string.h>
#include "tensor_duality.h"

static int check(TdStatus s, const char *what) {
    if (s != TD_STATUS_OK) {
        const char *msg = td_last_error_message();
        fprintf(stderr, "%s failed (%d): %s\n", what, (int)s, msg ? msg : "");
        return 1;
    }
    return 0;
}

int main(void) {
    const char *graph_json = "{\"D\":2,\"vertices\":2,\"strands\":[[[1,1],[2,1]],[[1,2],[2,2]]]}";
    const char *prop_json = "{\"terms\":[{\"pairs\":[[1,3],[2,4]],\"gamma\":\"1\"},{\"pairs\":[[1,4],[2,3]],\"gamma\":\"1\"}]}";
    TdGraph *graph = NULL;
    TdPropagator *prop = NULL;
    TdAmplitude *amp = NULL;
    char *text = NULL;
    bool holds = false;

    if (check(td_graph_from_json(graph_json, &graph), "graph")) return 1;
    if (check(td_propagator_from_json(prop_json, td_graph_strands(graph), 0, &prop), "propagator")) return 1;
    if (check(td_gaussian_expectation(graph, prop, 1, 2, &amp), "expectation")) return 1;
    if (check(td_amplitude_to_string(amp, &text), "to_string")) return 1;
    printf("%s\n", text);
    int bad = strcmp(text, "N^2 - N") != 0;
    td_string_free(text);
    if (check(td_duality_check(graph, prop, 1, &holds), "duality")) return 1;
    bad |= !holds;
    if (td_graph_from_json("{", &graph) != TD_STATUS_PARSE) bad = 1;

    td_amplitude_free(amp);
    td_propagator_free(prop);
    td_graph_free(graph);
    return bad;
}
