#include <stdio.h>
#include <string.h>

#include "branchwidth.h"

static const char *K4 = "p tw 4 6\n1 2\n1 3\n1 4\n2 3\n2 4\n3 4\n";

int main(void) {
    BwGraph *g = NULL;
    if (bw_graph_parse(K4, BW_FORMAT_GR, &g) != BW_STATUS_OK) return 1;
    if (bw_graph_vertex_count(g) != 4 || bw_graph_edge_count(g) != 6) return 2;

    size_t width = 0;
    if (bw_solve(g, BW_ALGORITHM_BLOCKS, -1.0, &width) != BW_STATUS_OK || width != 3) return 3;

    bool yes = true;
    if (bw_decide(g, BW_ALGORITHM_ROOT, 2, -1.0, &yes) != BW_STATUS_OK || yes) return 4;

    char *text = NULL;
    if (bw_solve_decomposition(g, BW_ALGORITHM_HYPER, -1.0, &width, &text) != BW_STATUS_OK) return 5;
    size_t checked = 0;
    if (bw_check_decomposition(g, text, width, &checked) != BW_STATUS_OK || checked != 3) return 6;
    bw_string_free(text);

    BwGraph *bad = NULL;
    if (bw_graph_parse("p tw 2 1\n1 9\n", BW_FORMAT_GR, &bad) != BW_STATUS_PARSE || bad != NULL) return 7;
    if (bw_last_error_message() == NULL) return 8;

    bw_graph_free(g);
    printf("ok\n");
    return 0;
}
