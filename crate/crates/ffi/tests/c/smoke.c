#include <stdio.h>
#include <string.h>
#include "edgeideal.h"

#define CHECK(call)                                              \
  do {                                                           \
    EiStatus s_ = (call);                                        \
    if (s_ != EI_STATUS_OK) {                                    \
      fprintf(stderr, "%s -> %d: %s\n", #call, (int)s_,          \
              ei_last_error() ? ei_last_error() : "(none)");     \
      return 1;                                                  \
    }                                                            \
  } while (0)

int main(void) {
  EiGraph *g = NULL;
  EiIdeal *i = NULL;
  size_t v = 0, e = 0, sd = 0;
  EiInvariants inv;
  EiPrediction pred;
  char *csv = NULL;

  CHECK(ei_graph_from_spec("brs(q=1,tsnake(n=1,p=1))", &g));
  CHECK(ei_graph_vertex_count(g, &v));
  CHECK(ei_graph_edge_count(g, &e));
  CHECK(ei_edge_ideal(g, &i));
  CHECK(ei_ideal_invariants(i, 2, 16, &inv));
  CHECK(ei_ideal_sdepth(i, 10, &sd));
  CHECK(ei_ideal_betti_csv(i, 3, 16, &csv));
  CHECK(ei_closed_form("brs(q=1,tsnake(n=1,p=1))", &pred));
  printf("%zu %zu %zu %zu %zu %zu %lld\n", v, e, inv.depth, inv.reg, inv.pdim, sd, (long long)pred.depth);
  printf("%s", csv);
  ei_string_free(csv);
  ei_ideal_free(i);
  ei_graph_free(g);

  if (ei_graph_from_spec("tsnake(n=1", &g) != EI_STATUS_PARSE || ei_last_error() == NULL) {
    return 2;
  }
  return 0;
}
