/* Minimal C consumer: validate a qutrit, extract a qubit, damp it, and
 * check the dark state.
 *
 * Build (from the repo root, after `cargo build -p triq-capi`):
 *   cc crates/triq-capi/examples/smoke.c \
 *      -Icrates/triq-capi/include \
 *      target/debug/libtriq_capi.a -lm -o smoke
 */

#include <stdio.h>
#include <stdlib.h>

#include "triq.h"

static const double third = 1.0 / 3.0;

int main(void) {
  double mixed[18] = {
      third, 0, 0, 0, 0, 0,
      0, 0, third, 0, 0, 0,
      0, 0, 0, 0, third, 0,
  };
  TriqState *state = NULL;
  TriqStatus status = triq_state_new(3, mixed, &state);
  if (status != Ok) {
    fprintf(stderr, "state_new: %s\n", triq_status_message(status));
    return 1;
  }

  double qubit[8] = {0};
  status = triq_extract(state, 1, qubit);
  if (status != Ok) {
    fprintf(stderr, "extract: %s\n", triq_status_message(status));
    return 1;
  }
  printf("slot 1 populations: %.6f %.6f\n", qubit[0], qubit[6]);

  double entropy = 0;
  triq_slot_entropy(state, 1, &entropy);
  printf("slot 1 entropy: %.6f\n", entropy);

  double dark[6] = {0};
  triq_dark_state(0, 3.0, 4.0, dark);
  printf("dark state: (%.2f, %.2f, %.2f)\n", dark[0], dark[2], dark[4]);

  triq_state_free(state);
  return 0;
}
