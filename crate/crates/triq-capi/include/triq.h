#ifndef TRIQ_H
#define TRIQ_H

/* C ABI for the triq library.
 *
 * Complex matrices travel as flat double buffers, row-major, with each entry
 * interleaved as (re, im): a d x d matrix occupies 2*d*d doubles. Qubits are
 * 8 doubles, qutrits 18, the six transformed qubits 48 (slot-major).
 *
 * Generated to match crates/triq-capi/src/lib.rs; regenerate with
 *   cbindgen --config cbindgen.toml --output include/triq.h
 */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

/**
 * Status codes returned by every fallible function.
 */
typedef enum TriqStatus {
  Ok = 0,
  NullPointer = 1,
  InvalidArgument = 2,
  WrongDimension = 3,
  NotHermitian = 4,
  NotUnitary = 5,
  InvalidTrace = 6,
  NotPositive = 7,
  ConstraintViolation = 8,
  StepTooLarge = 9,
  NotConverged = 10,
  NumericalFailure = 11,
} TriqStatus;

/**
 * Opaque validated density matrix of dimension 2 or 3.
 */
typedef struct TriqState TriqState;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Validates a density matrix (dim 2 or 3) from an interleaved buffer of
 * `2*dim*dim` doubles and returns an owned handle through `out`.
 */
enum TriqStatus triq_state_new(size_t dim, const double *data, struct TriqState **out);

/**
 * Releases a handle created by `triq_state_new`. Null is a no-op.
 */
void triq_state_free(struct TriqState *state);

/**
 * Dimension of a state handle (0 for null).
 */
size_t triq_state_dim(const struct TriqState *state);

/**
 * Copies the state back into an interleaved buffer of `2*dim*dim` doubles.
 */
enum TriqStatus triq_state_get(const struct TriqState *state, double *out);

/**
 * Extracts qubit `slot` (1..=6) of a 3-dimensional state into 8 doubles.
 */
enum TriqStatus triq_extract(const struct TriqState *state, int slot, double *out);

/**
 * Von Neumann entropy of qubit `slot` of a 3-dimensional state.
 */
enum TriqStatus triq_slot_entropy(const struct TriqState *state, int slot, double *out);

/**
 * Transforms a 3-dimensional state by the unitary in `unitary` (18 doubles)
 * and writes the six transformed qubits (48 doubles, slot-major) plus the
 * worst deviation against the conjugation oracle.
 */
enum TriqStatus triq_transform_closed_form(const struct TriqState *state,
                                           const double *unitary,
                                           double *out_qubits,
                                           double *out_deviation);

/**
 * Applies a named channel (`kind` 0 = phase damping, 1 = amplitude damping)
 * `n` times to a 2-dimensional state and writes the final qubit (8 doubles).
 */
enum TriqStatus triq_channel_iterate(const struct TriqState *state,
                                     int kind,
                                     double p,
                                     size_t n,
                                     double *out);

/**
 * Worst deviation between one application of the named channel and its
 * system (x) environment dilation, for a 2-dimensional state.
 */
enum TriqStatus triq_channel_dilation_deviation(const struct TriqState *state,
                                                int kind,
                                                double p,
                                                double *out);

/**
 * Tomographic probabilities (p1, p2, p3) of a 2-dimensional state.
 */
enum TriqStatus triq_probabilities(const struct TriqState *state, double *out);

/**
 * Builds the qubit density matrix of a probability triple (8 doubles out).
 */
enum TriqStatus triq_qubit_from_probabilities(double p1, double p2, double p3, double *out);

/**
 * Binary Shannon entropy of a (p, 1-p) coin, in nats.
 */
double triq_coin_shannon(double p);

/**
 * Shannon entropy of the evolved coin (p3|u11|^2, 1 - p3|u11|^2).
 */
double triq_evolved_entropy(double p3, double u11_re, double u11_im);

/**
 * Tsallis entropy of a (p, 1-p) coin; fails for q = 1.
 */
enum TriqStatus triq_coin_tsallis(double p, double q_index, double *out);

/**
 * Embeds a 3-dimensional state with the given zero row/column (1..=4) and
 * runs the positive-partial-transpose check.
 */
enum TriqStatus triq_ppt_check(const struct TriqState *state,
                               size_t zero_index,
                               int *out_separable,
                               double *out_min_eig);

/**
 * Normalized dark state of a configuration (`config` 0 = Lambda, 1 = V,
 * 2 = Xi) as 6 doubles (3 interleaved complex amplitudes).
 */
enum TriqStatus triq_dark_state(int config, double rabi1, double rabi2, double *out);

/**
 * Integrates the dissipative three-level dynamics from a 3-dimensional
 * state (or the maximally mixed state when `state` is null) and writes the
 * final density matrix (18 doubles) plus the target-family residual.
 */
enum TriqStatus triq_simulate(int config,
                              double omega1,
                              double omega2,
                              double rabi1,
                              double rabi2,
                              double gamma31,
                              double gamma32,
                              double gamma1,
                              double gamma2,
                              double dt,
                              double t_end,
                              const struct TriqState *state,
                              double *out_final,
                              double *out_residual);

/**
 * Static description of a status code.
 */
const char *triq_status_message(enum TriqStatus status);

#ifdef __cplusplus
}  // extern "C"
#endif // __cplusplus

#endif  /* TRIQ_H */
