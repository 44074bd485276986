#include <stdio.h>
#include <string.h>

#include "persuasion.h"

#define CHECK(cond)                                                     \
  do {                                                                  \
    if (!(cond)) {                                                      \
      fprintf(stderr, "%s:%d: %s (%s)\n", __FILE__, __LINE__, #cond,    \
              persuasion_last_error());                                 \
      return 1;                                                         \
    }                                                                   \
  } while (0)

int main(void) {
  const char *eci_text = "universe 2\nset A1 1\nset A2 2\nset A3 1 2\n";
  PersuasionEci *eci = NULL;
  CHECK(persuasion_eci_parse(eci_text, &eci) == PERSUASION_STATUS_OK);

  size_t cover[3];
  PersuasionOutcome outcome;
  CHECK(persuasion_eci_solve(eci, PERSUASION_COVER_ENGINE_DLX_COUNT, NULL, cover, 3,
                             &outcome) == PERSUASION_STATUS_OK);
  CHECK(outcome.solvable && outcome.count == 2);

  PersuasionReduction *red = NULL;
  CHECK(persuasion_reduce(eci, &red) == PERSUASION_STATUS_OK);
  persuasion_eci_free(eci);

  PersuasionPpi *ppi = NULL;
  CHECK(persuasion_reduction_instance(red, &ppi) == PERSUASION_STATUS_OK);

  size_t events[] = {0, 2};
  char *posterior = NULL;
  CHECK(persuasion_ppi_posterior(ppi, events, 2, &posterior) == PERSUASION_STATUS_OK);
  CHECK(strcmp(posterior, "21/41") == 0);
  persuasion_string_free(posterior);

  size_t witness[3];
  PersuasionSweep sweep = persuasion_sweep_default();
  sweep.workers = 2;
  CHECK(persuasion_ppi_solve(ppi, PERSUASION_SOLVER_BRUTE, &sweep, witness, 3, &outcome) ==
        PERSUASION_STATUS_OK);
  CHECK(outcome.solvable && outcome.witness_len == 1 && witness[0] == 2);

  bool passed = false;
  CHECK(persuasion_reduction_verify(red, &sweep, &passed, NULL) == PERSUASION_STATUS_OK);
  CHECK(passed);

  PersuasionPpi *bad = NULL;
  CHECK(persuasion_ppi_parse("world a 1\nnonsense\n", &bad) == PERSUASION_STATUS_SYNTAX);
  CHECK(strstr(persuasion_last_error(), "line 2") != NULL);

  persuasion_ppi_free(ppi);
  persuasion_reduction_free(red);
  puts("ok");
  return 0;
}
