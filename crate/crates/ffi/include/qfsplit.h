#ifndef QFSPLIT_H
#define QFSPLIT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

// Result code of every call.
typedef enum QfsStatus {
  QFS_STATUS_OK = 0,
  QFS_STATUS_NULL_POINTER = 1,
  QFS_STATUS_INVALID_UTF8 = 2,
  // The polynomial text did not parse.
  QFS_STATUS_SYNTAX = 3,
  QFS_STATUS_NOT_PRIME = 4,
  QFS_STATUS_INVALID_INPUT = 5,
  // No height up to the cap.
  QFS_STATUS_NOT_QUASI_F_SPLIT = 6,
  // A degree, exponent or size limit was reached.
  QFS_STATUS_LIMIT = 7,
  QFS_STATUS_INTERNAL = 8,
  QFS_STATUS_PANIC = 9,
} QfsStatus;

// A lift `f + pG` ready for computation.
typedef struct QfsLift QfsLift;

// A computed multi-height with its threshold.
typedef struct QfsReport QfsReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Parses `f` and `G` over `Z/p^2` and validates the lift.
//
// # Safety
// `f` and `g` must be NUL-terminated strings; `out` must be writable.
enum QfsStatus qfs_lift_new(uint64_t p, const char *f, const char *g, struct QfsLift **out);

// # Safety
// `lift` must come from `qfs_lift_new` and not be used afterwards.
void qfs_lift_free(struct QfsLift *lift);

// The quasi-F-split height, searched up to `h_cap`.
//
// # Safety
// `lift` must be a live handle; `out` must be writable.
enum QfsStatus qfs_lift_height(const struct QfsLift *lift, uint32_t h_cap, uint32_t *out);

// Multi-height by the colon recursion. Zero limits select the defaults.
//
// # Safety
// `lift` must be a live handle; `out` must be writable.
enum QfsStatus qfs_multiheight(const struct QfsLift *lift,
                               uint32_t h_cap,
                               uint32_t r_max,
                               struct QfsReport **out);

// # Safety
// `report` must come from `qfs_multiheight` and not be used afterwards.
void qfs_report_free(struct QfsReport *report);

// Whether the reported sequence is proved pre-periodic. False for null.
//
// # Safety
// `report` must be null or a live handle.
bool qfs_report_certified(const struct QfsReport *report);

// Lengths of the preperiod and of the period.
//
// # Safety
// `report` must be a live handle; both out pointers must be writable.
enum QfsStatus qfs_report_shape(const struct QfsReport *report,
                                uintptr_t *preperiod_len,
                                uintptr_t *period_len);

// The `i`-th height `h_i` (any `i`, following the period).
//
// # Safety
// `report` must be a live handle; `out` must be writable.
enum QfsStatus qfs_report_height(const struct QfsReport *report, uintptr_t i, uint32_t *out);

// The threshold as `"a/b"`.
//
// # Safety
// `report` must be a live handle; `out` must be writable.
enum QfsStatus qfs_report_ppt(const struct QfsReport *report, char **out);

// The multi-height as text, such as `"4,(1)"`.
//
// # Safety
// `report` must be a live handle; `out` must be writable.
enum QfsStatus qfs_report_multiheight(const struct QfsReport *report, char **out);

// The full report as a JSON object.
//
// # Safety
// `report` must be a live handle; `out` must be writable.
enum QfsStatus qfs_report_json(const struct QfsReport *report, char **out);

// Releases a string returned by this library.
//
// # Safety
// `s` must be null or a string returned here, not freed before.
void qfs_string_free(char *s);

// Message for the last failed call on this thread, or null. The pointer
// stays valid until the next failing call on the same thread.
const char *qfs_last_error_message(void);

// Static description of a status code.
const char *qfs_status_name(enum QfsStatus status);

// Library version, static.
const char *qfs_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QFSPLIT_H */
