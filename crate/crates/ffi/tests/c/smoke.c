#include <math.h>
#include <stdio.h>
#include <string.h>

#include "graphstate.h"

#define CHECK(cond)                                                   \
    do {                                                              \
        if (!(cond)) {                                                \
            fprintf(stderr, "%s:%d: %s\n", __FILE__, __LINE__, #cond); \
            return 1;                                                 \
        }                                                             \
    } while (0)

int main(void) {
    GsGraph *g = NULL;
    CHECK(gs_graph_parse("n 4\ne 1 2\ne 1 3\ne 1 4\n", &g) == GS_STATUS_OK);
    CHECK(gs_graph_vertex_count(g) == 4 && gs_graph_edge_count(g) == 3);

    double rho[16];
    CHECK(gs_density_matrix(g, rho, 16) == GS_STATUS_OK);
    CHECK(fabs(rho[0] - 0.5) < 1e-15);
    CHECK(gs_density_matrix(g, rho, 15) == GS_STATUS_BUFFER_TOO_SMALL);

    GsSeparability status;
    double min_eig = 0.0;
    CHECK(gs_ppt_test(g, 2, 2, NULL, 1e-9, &status, &min_eig) == GS_STATUS_OK);
    CHECK(status == GS_SEPARABILITY_ENTANGLED_NPT);
    CHECK(fabs(min_eig - (0.25 - sqrt(17.0) / 12.0)) < 1e-9);

    char *json = NULL;
    CHECK(gs_analyze_json(g, 2, 2, NULL, 1e-9, &json) == GS_STATUS_OK);
    CHECK(strstr(json, "ENTANGLED_NPT") != NULL);
    gs_string_free(json);

    CHECK(gs_ppt_test(g, 2, 3, NULL, 1e-9, &status, NULL) == GS_STATUS_DIMENSION_MISMATCH);
    CHECK(strlen(gs_last_error_message()) > 0);

    gs_graph_free(g);
    printf("ok\n");
    return 0;
}
