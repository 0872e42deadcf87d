#ifndef CHAMANARA_H
#define CHAMANARA_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Status codes returned by every entry point.
typedef enum ChmStatus {
  // Success.
  ChmStatus_Ok = 0,
  // A required pointer argument was null.
  ChmStatus_NullArgument = 1,
  // Malformed input: bad JSON, parameter out of range, invalid UTF-8.
  ChmStatus_InvalidArgument = 2,
  // A precondition failed: removed point, periodic expansion, same point.
  ChmStatus_Precondition = 3,
  // Certification inconclusive at this precision or depth; not a failure.
  ChmStatus_Inconclusive = 4,
  // The library panicked; state is untouched but the call did nothing.
  ChmStatus_Panicked = 5,
} ChmStatus;

// Opaque handle: a sparse exponent sequence.
typedef struct ChmSequence ChmSequence;

// Opaque handle: a special point with both coordinate streams.
typedef struct ChmSpecialPoint ChmSpecialPoint;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Version of the underlying library, static storage.
const char *chm_version(void);

// Message for the most recent failure on this thread. Valid until the next
// failing call on the same thread.
const char *chm_last_error_message(void);

// Frees a string returned by any `*_json` or digit-dump entry point.
//
// # Safety
// `s` must be null or a pointer previously returned by this library and
// not yet freed.
void chm_string_free(char *s);

// Parses a sequence-family JSON description (the same schema the CLI
// accepts) and requires a genuine divergence witness.
//
// # Safety
// `json` must be a valid NUL-terminated string; `out` must be a valid
// pointer to a pointer slot.
enum ChmStatus chm_sequence_parse_json(const char *json, struct ChmSequence **out);

// # Safety
// `seq` must be null or an unfreed pointer from [`chm_sequence_parse_json`].
void chm_sequence_free(struct ChmSequence *seq);

// Builds the special point `(1 - sum 2^{-s_n}, sum 2^{-t_n})` from two
// sequence handles, spot-checking both divergence witnesses.
//
// # Safety
// `x_seq` and `y_seq` must be valid sequence handles; `out` a valid slot.
enum ChmStatus chm_special_point_new(const struct ChmSequence *x_seq,
                                     const struct ChmSequence *y_seq,
                                     struct ChmSpecialPoint **out);

// # Safety
// `p` must be null or an unfreed pointer from [`chm_special_point_new`].
void chm_special_point_free(struct ChmSpecialPoint *p);

// ASCII dump of the first `count` expansion digits of one coordinate
// (`coord` 0 = x, 1 = y). Free the string with [`chm_string_free`].
//
// # Safety
// `point` must be a valid handle, `out` a valid slot.
enum ChmStatus chm_point_digits(const struct ChmSpecialPoint *point,
                                int32_t coord,
                                uint64_t count,
                                char **out);

// Orbit separation report over `[n_min, n_max]` as JSON; returns
// `Inconclusive` (report still produced) when any pair failed to separate.
//
// # Safety
// `point` must be a valid handle, `out` a valid slot.
enum ChmStatus chm_orbit_report_json(const struct ChmSpecialPoint *point,
                                     int64_t n_min,
                                     int64_t n_max,
                                     uint32_t precision,
                                     uint32_t depth,
                                     char **out);

// Accumulation-cluster report for the forward orbit as JSON.
//
// # Safety
// `point` must be a valid handle, `out` a valid slot.
enum ChmStatus chm_accumulation_report_json(const struct ChmSpecialPoint *point,
                                            int64_t n_max,
                                            uint32_t tol_exp,
                                            char **out);

// Punctured-surface description as JSON. Fails with `Precondition` for
// points that do not pass the stabilizer proxy and `Inconclusive` when the
// separation certificate does not close.
//
// # Safety
// `point` must be a valid handle, `out` a valid slot.
enum ChmStatus chm_punctured_surface_json(const struct ChmSpecialPoint *point,
                                          uint32_t half_window,
                                          uint32_t precision,
                                          uint32_t depth,
                                          char **out);

// Fixed points of the n-th power of the automorphism as a JSON list.
//
// # Safety
// `out` must be a valid slot.
enum ChmStatus chm_periodic_points_json(uint32_t n, char **out);

// Runs the stabilizer proxy: `*out_passed` is set to `true` when no power
// up to `limit` can fix the point, `false` when the expansion is provably
// periodic (possible only for bypassed rational inputs).
//
// # Safety
// `point` must be a valid handle, `out_passed` a valid slot.
enum ChmStatus chm_stabilizer_check(const struct ChmSpecialPoint *point,
                                    uint32_t limit,
                                    bool *out_passed);

// Renders the surface diagram with an orbit overlay as an SVG string.
//
// # Safety
// `point` must be a valid handle, `out` a valid slot.
enum ChmStatus chm_render_svg(const struct ChmSpecialPoint *point,
                              uint32_t edge_limit,
                              uint32_t scale,
                              int64_t n_min,
                              int64_t n_max,
                              uint32_t precision,
                              char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CHAMANARA_H */
