#ifndef GIANT_STEPS_H
#define GIANT_STEPS_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

#define GST_TARGET_STEPS 0

#define GST_TARGET_BINARY 1

#define GST_TARGET_TURNS 2

typedef enum GstStatus {
  GST_STATUS_OK = 0,
  GST_STATUS_NULL_POINTER = 1,
  GST_STATUS_INVALID_UTF8 = 2,
  GST_STATUS_PARSE_ERROR = 3,
  // The operation has no answer for the simple tunnel `D`.
  GST_STATUS_SIMPLE_TUNNEL = 4,
  GST_STATUS_INVALID_FRACTION = 5,
  GST_STATUS_EQUAL_VERTICES = 6,
  GST_STATUS_INVALID_ARGUMENT = 7,
  GST_STATUS_PANIC = 8,
} GstStatus;

// Opaque result of counting one tunnel.
typedef struct GstCount GstCount;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Counts the minimal giant-step constructions of `input` (binary invariants,
// or a step sequence; `force_steps` always parses a step sequence). On
// success `*out` holds a handle to release with [`gst_count_free`].
//
// # Safety
// `input` must be a valid C string and `out` a valid pointer.
enum GstStatus gst_count_new(const char *input, bool force_steps, struct GstCount **out);

// # Safety
// `handle` must come from [`gst_count_new`] and not be used afterwards.
void gst_count_free(struct GstCount *handle);

// Depth of the tunnel, or 0 for a null handle.
//
// # Safety
// `handle` must be null or a live handle.
size_t gst_count_depth(const struct GstCount *handle);

// Number of ∇-edges `k`, or 0 for a null handle or the simple tunnel.
//
// # Safety
// `handle` must be null or a live handle.
size_t gst_count_k(const struct GstCount *handle);

// The count as a decimal string.
//
// # Safety
// `handle` must be a live handle and `out` a valid pointer.
enum GstStatus gst_count_value(const struct GstCount *handle, char **out);

// Block configurations joined by commas, e.g. `R1,L2,L1,R2`.
//
// # Safety
// `handle` must be a live handle and `out` a valid pointer.
enum GstStatus gst_count_configs(const struct GstCount *handle, char **out);

// The multi-line verbose report.
//
// # Safety
// `handle` must be a live handle and `out` a valid pointer.
enum GstStatus gst_count_report(const struct GstCount *handle, char **out);

// The JSON output document, as printed by `giant-steps gst --json`.
//
// # Safety
// `handle` must be a live handle and `out` a valid pointer.
enum GstStatus gst_count_json(const struct GstCount *handle, char **out);

// Converts `input` to step letters, binary invariants or turns, selected by
// one of the `GST_TARGET_*` constants.
//
// # Safety
// `input` must be a valid C string and `out` a valid pointer.
enum GstStatus gst_convert(const char *input, uint32_t target, char **out);

// The JSON output document with the corridor sub-document, as printed by
// `giant-steps corridor --render json`.
//
// # Safety
// `input` must be a valid C string and `out` a valid pointer.
enum GstStatus gst_corridor_json(const char *input, char **out);

// Distance and number of geodesics between Farey vertices `u` and `v`,
// given as `p/q` strings (`1/0` is ∞).
//
// # Safety
// `u` and `v` must be valid C strings; the out-pointers must be valid.
enum GstStatus gst_farey_geodesics(const char *u,
                                   const char *v,
                                   size_t *out_distance,
                                   char **out_count);

// Message for the last failure on this thread; empty after a success. The
// pointer stays valid until the next call into this library on the thread.
const char *gst_last_error(void);

// Releases a string returned by this library. Null is ignored.
//
// # Safety
// `s` must be null or a string from this library, freed at most once.
void gst_string_free(char *s);

// Library version, static storage.
const char *gst_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GIANT_STEPS_H */
