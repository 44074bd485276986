#ifndef PERSUASION_H
#define PERSUASION_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

// Exact Cover engines.
typedef enum PersuasionCoverEngine {
  // Exhaustive sweep; also counts solutions.
  PERSUASION_COVER_ENGINE_BRUTE = 0,
  // Dancing links, stopping at the first cover.
  PERSUASION_COVER_ENGINE_DLX = 1,
  // Dancing links, counting every cover.
  PERSUASION_COVER_ENGINE_DLX_COUNT = 2,
} PersuasionCoverEngine;

// Persuasion deciders.
typedef enum PersuasionSolver {
  // Exhaustive sweep over observations; any threshold.
  PERSUASION_SOLVER_BRUTE = 0,
  // Threshold one, requires positive mass on the intersection of all events.
  PERSUASION_SOLVER_STRONG_STANDARD = 1,
  // Threshold one, no further assumptions.
  PERSUASION_SOLVER_STRONG_GENERAL = 2,
} PersuasionSolver;

// Result of every fallible call.
typedef enum PersuasionStatus {
  PERSUASION_STATUS_OK = 0,
  PERSUASION_STATUS_NULL_POINTER = 1,
  PERSUASION_STATUS_INVALID_UTF8 = 2,
  // Malformed instance text; the message carries the line number.
  PERSUASION_STATUS_SYNTAX = 3,
  // Well-formed text or arguments describing an invalid instance.
  PERSUASION_STATUS_INVALID_INPUT = 4,
  // The observation leaves zero probability mass.
  PERSUASION_STATUS_UNDEFINED_POSTERIOR = 5,
  // An exhaustive sweep would exceed the configured cap.
  PERSUASION_STATUS_CAP_EXCEEDED = 6,
  // A threshold-one decider was called on an instance outside its domain.
  PERSUASION_STATUS_ASSUMPTION_VIOLATED = 7,
  // An output buffer is too small; the required length is still reported.
  PERSUASION_STATUS_BUFFER_TOO_SMALL = 8,
  // Internal failure; please report it.
  PERSUASION_STATUS_PANIC = 9,
} PersuasionStatus;

// An Exact Cover instance.
typedef struct PersuasionEci PersuasionEci;

// A persuasion instance.
typedef struct PersuasionPpi PersuasionPpi;

// A cover-to-persuasion reduction together with its world roles.
typedef struct PersuasionReduction PersuasionReduction;

// Limits for exhaustive sweeps. `cap` bounds the number of items swept
// (cost is `2^cap`); `workers` of 0 or 1 means single-threaded.
typedef struct PersuasionSweep {
  size_t cap;
  size_t workers;
} PersuasionSweep;

// Decision plus witness size. Witness indices go to the caller's buffer.
typedef struct PersuasionOutcome {
  bool solvable;
  // Number of indices in the witness; 0 when unsolvable.
  size_t witness_len;
  // Number of exact covers, or -1 when the engine does not count.
  int64_t count;
} PersuasionOutcome;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread, or an empty string.
// Valid until the next failing call on the same thread.
const char *persuasion_last_error(void);

// Default sweep limits: cap 24, single-threaded.
struct PersuasionSweep persuasion_sweep_default(void);

// Releases a string returned by this library. Null is ignored.
//
// # Safety
// `s` must come from this library and not have been freed already.
void persuasion_string_free(char *s);

// Parses a persuasion instance from its text format.
//
// # Safety
// `text` must be a NUL-terminated string; `out` must be writable.
enum PersuasionStatus persuasion_ppi_parse(const char *text, struct PersuasionPpi **out);

// Releases a persuasion instance. Null is ignored.
//
// # Safety
// `ppi` must come from this library and not have been freed already.
void persuasion_ppi_free(struct PersuasionPpi *ppi);

// Renders the canonical text of a persuasion instance.
//
// # Safety
// `ppi` must be a live handle; `out` must be writable.
enum PersuasionStatus persuasion_ppi_render(const struct PersuasionPpi *ppi, char **out);

// Number of events; 0 for a null handle.
//
// # Safety
// `ppi` must be null or a live handle.
size_t persuasion_ppi_num_events(const struct PersuasionPpi *ppi);

// Number of worlds; 0 for a null handle.
//
// # Safety
// `ppi` must be null or a live handle.
size_t persuasion_ppi_num_worlds(const struct PersuasionPpi *ppi);

// Exact posterior of the goal given the selected events, as `"p/q"`.
//
// # Safety
// `ppi` must be a live handle, `events` must hold `len` indices, and `out`
// must be writable.
enum PersuasionStatus persuasion_ppi_posterior(const struct PersuasionPpi *ppi,
                                               const size_t *events,
                                               size_t len,
                                               char **out);

// Whether the selected events push the posterior to the threshold. An
// observation with zero mass is not a solution.
//
// # Safety
// As for `persuasion_ppi_posterior`.
enum PersuasionStatus persuasion_ppi_is_solution(const struct PersuasionPpi *ppi,
                                                 const size_t *events,
                                                 size_t len,
                                                 bool *out);

// Decides a persuasion instance. The witness (event indices in ascending
// order) is copied into `witness`, which needs room for `witness_len`
// entries; the number of events always suffices. `sweep` may be null.
//
// # Safety
// `ppi` must be a live handle, `witness` must hold `witness_cap` entries
// (or be null with capacity 0), and `out` must be writable.
enum PersuasionStatus persuasion_ppi_solve(const struct PersuasionPpi *ppi,
                                           enum PersuasionSolver solver,
                                           const struct PersuasionSweep *sweep,
                                           size_t *witness,
                                           size_t witness_cap,
                                           struct PersuasionOutcome *out);

// Parses an Exact Cover instance from its text format.
//
// # Safety
// `text` must be a NUL-terminated string; `out` must be writable.
enum PersuasionStatus persuasion_eci_parse(const char *text, struct PersuasionEci **out);

// Releases an Exact Cover instance. Null is ignored.
//
// # Safety
// `eci` must come from this library and not have been freed already.
void persuasion_eci_free(struct PersuasionEci *eci);

// Renders the canonical text of an Exact Cover instance.
//
// # Safety
// `eci` must be a live handle; `out` must be writable.
enum PersuasionStatus persuasion_eci_render(const struct PersuasionEci *eci, char **out);

// Number of subsets; 0 for a null handle.
//
// # Safety
// `eci` must be null or a live handle.
size_t persuasion_eci_num_subsets(const struct PersuasionEci *eci);

// Decides an Exact Cover instance. The witness (subset indices in
// ascending order) is copied into `witness`; the number of subsets always
// suffices. `sweep` may be null and only affects the brute engine.
//
// # Safety
// As for `persuasion_ppi_solve`.
enum PersuasionStatus persuasion_eci_solve(const struct PersuasionEci *eci,
                                           enum PersuasionCoverEngine engine,
                                           const struct PersuasionSweep *sweep,
                                           size_t *witness,
                                           size_t witness_cap,
                                           struct PersuasionOutcome *out);

// Whether the chosen subsets form an exact cover. Out-of-range or repeated
// indices make the answer false.
//
// # Safety
// `eci` must be a live handle, `subsets` must hold `len` indices, and `out`
// must be writable.
enum PersuasionStatus persuasion_eci_verify_cover(const struct PersuasionEci *eci,
                                                  const size_t *subsets,
                                                  size_t len,
                                                  bool *out);

// Reduces an Exact Cover instance to a persuasion instance.
//
// # Safety
// `eci` must be a live handle; `out` must be writable.
enum PersuasionStatus persuasion_reduce(const struct PersuasionEci *eci,
                                        struct PersuasionReduction **out);

// Releases a reduction. Null is ignored.
//
// # Safety
// `red` must come from this library and not have been freed already.
void persuasion_reduction_free(struct PersuasionReduction *red);

// Copies the reduced persuasion instance into a new handle, which the
// caller releases with `persuasion_ppi_free`.
//
// # Safety
// `red` must be a live handle; `out` must be writable.
enum PersuasionStatus persuasion_reduction_instance(const struct PersuasionReduction *red,
                                                    struct PersuasionPpi **out);

// Renders the parameters and world roles of a reduction.
//
// # Safety
// `red` must be a live handle; `out` must be writable.
enum PersuasionStatus persuasion_reduction_render_roles(const struct PersuasionReduction *red,
                                                        char **out);

// Maps an observation of the reduced instance back to subset indices.
// The result never has more entries than the number of subsets.
//
// # Safety
// `red` must be a live handle, `events` must hold `len` indices, `subsets`
// must hold `subsets_cap` entries, and `subsets_len` must be writable.
enum PersuasionStatus persuasion_reduction_back_map(const struct PersuasionReduction *red,
                                                    const size_t *events,
                                                    size_t len,
                                                    size_t *subsets,
                                                    size_t subsets_cap,
                                                    size_t *subsets_len);

// Sweeps every observation of the reduced instance and checks that the
// reduction preserves solvability. `passed` receives the verdict and, when
// `report` is non-null, the full report text is written there.
//
// # Safety
// `red` must be a live handle, `passed` must be writable, `report` must be
// null or writable, and `sweep` must be null or valid.
enum PersuasionStatus persuasion_reduction_verify(const struct PersuasionReduction *red,
                                                  const struct PersuasionSweep *sweep,
                                                  bool *passed,
                                                  char **report);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PERSUASION_H */
