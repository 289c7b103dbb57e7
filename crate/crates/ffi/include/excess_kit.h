#ifndef EXCESS_KIT_H
#define EXCESS_KIT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result code of every fallible call.
typedef enum ExkStatus {
  EXK_STATUS_OK = 0,
  EXK_STATUS_NULL_POINTER = 1,
  EXK_STATUS_INVALID_UTF8 = 2,
  EXK_STATUS_INVALID_ARGUMENT = 3,
  EXK_STATUS_INVALID_PROFILE = 4,
  EXK_STATUS_DIMENSION_MISMATCH = 5,
  EXK_STATUS_NOT_FOUND = 6,
  EXK_STATUS_EFFORT_EXCEEDED = 7,
  EXK_STATUS_NO_BRANCHED_COVER = 8,
  EXK_STATUS_BUFFER_TOO_SMALL = 9,
  EXK_STATUS_PANIC = 10,
} ExkStatus;

typedef enum ExkVerdict {
  EXK_VERDICT_BOUND_SATISFIED = 0,
  EXK_VERDICT_OBSTRUCTED = 1,
  EXK_VERDICT_HYPOTHESIS_FAILURE = 2,
} ExkVerdict;

typedef struct ExkAudit ExkAudit;

typedef struct ExkCertificate ExkCertificate;

// A list of vectors over F2.
typedef struct ExkCollection ExkCollection;

// A surface family under construction.
typedef struct ExkFamily ExkFamily;

// A validated manifold profile.
typedef struct ExkProfile ExkProfile;

typedef struct ExkReport ExkReport;

// Invariants of the branched double cover.
typedef struct ExkCoverProfile {
  int64_t sigma_n;
  int64_t chi_n;
  uint64_t b1_f2_upper;
  int64_t b2_f2_upper;
  int64_t ramification_euler;
} ExkCoverProfile;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message describing the last failure on this thread. The pointer stays
// valid until the next failing call on the same thread.
const char *exk_last_error_message(void);

// Releases a string returned by this library.
void exk_string_free(char *s);

// Validates `(signature, euler_characteristic, b1_f2)` into a profile.
enum ExkStatus exk_profile_new(const char *name,
                               int64_t signature,
                               int64_t euler_characteristic,
                               uint64_t b1_f2,
                               struct ExkProfile **out);

// Looks a profile up in the built-in catalog (plus `EXCESS_KIT_CATALOG`).
enum ExkStatus exk_profile_from_catalog(const char *name, struct ExkProfile **out);

void exk_profile_free(struct ExkProfile *p);

// `b2` over F2, or 0 for a null handle.
uint64_t exk_profile_b2_f2(const struct ExkProfile *p);

// `D(M)`, or 0 for a null handle.
uint64_t exk_profile_excess_budget(const struct ExkProfile *p);

// `B(M)`, or 0 for a null handle.
uint64_t exk_profile_plane_bound(const struct ExkProfile *p);

// Empty family whose classes have `ambient_dim` bits.
enum ExkStatus exk_family_new(size_t ambient_dim, struct ExkFamily **out);

// Appends a surface. `class_bits` is a '0'/'1' string of `ambient_dim`
// characters (empty when the dimension is 0).
enum ExkStatus exk_family_push(struct ExkFamily *f,
                               uint64_t genus,
                               int64_t euler_number,
                               const char *class_bits);

size_t exk_family_len(const struct ExkFamily *f);

void exk_family_free(struct ExkFamily *f);

// Runs the excess check; the report is written to `out`.
enum ExkStatus exk_excess_check(const struct ExkProfile *p,
                                const struct ExkFamily *f,
                                struct ExkReport **out);

// Verdict of a report. A null handle reads as `HypothesisFailure`.
enum ExkVerdict exk_report_verdict(const struct ExkReport *r);

// `Σ(|e_i| - 2g_i)`.
int64_t exk_report_lhs(const struct ExkReport *r);

// `D(M)`.
int64_t exk_report_rhs(const struct ExkReport *r);

// Replays every trace step; false for a null handle.
bool exk_report_trace_valid(const struct ExkReport *r);

// Canonical JSON document, or null for a null handle.
char *exk_report_to_json(const struct ExkReport *r);

void exk_report_free(struct ExkReport *r);

// Audits a family of projective planes. `exact` also runs the exact
// zero-sum maximizer with node budget `effort` (0 = automatic).
enum ExkStatus exk_plane_audit(const struct ExkProfile *p,
                               const struct ExkFamily *planes,
                               bool exact,
                               uint64_t effort,
                               struct ExkAudit **out);

enum ExkVerdict exk_audit_verdict(const struct ExkAudit *a);

char *exk_audit_to_json(const struct ExkAudit *a);

void exk_audit_free(struct ExkAudit *a);

// Branched double cover along a single surface of genus `genus`, Euler
// number `euler_number` and class `class_bits`.
enum ExkStatus exk_branched_cover(const struct ExkProfile *p,
                                  uint64_t genus,
                                  int64_t euler_number,
                                  const char *class_bits,
                                  struct ExkCoverProfile *out);

// Writes the Massey admissible set for `genus` into `buf`. `*len` receives
// the number of values; `BufferTooSmall` is returned when `cap` is short.
enum ExkStatus exk_massey_admissible(uint64_t genus, int64_t *buf, size_t cap, size_t *len);

enum ExkStatus exk_collection_new(size_t dim, struct ExkCollection **out);

// Appends a vector given as a '0'/'1' string of `dim` characters.
enum ExkStatus exk_collection_push(struct ExkCollection *c, const char *bits);

void exk_collection_free(struct ExkCollection *c);

// Constructive zero-sum certificate.
enum ExkStatus exk_zero_sum(const struct ExkCollection *c, struct ExkCertificate **out);

// Maximum zero-sum subset. On `EffortExceeded`, `*out` still receives the
// constructive certificate.
enum ExkStatus exk_max_zero_sum(const struct ExkCollection *c,
                                uint64_t effort,
                                struct ExkCertificate **out);

size_t exk_certificate_len(const struct ExkCertificate *cert);

// Pointer to the sorted 1-based indices; valid while the certificate lives.
const size_t *exk_certificate_indices(const struct ExkCertificate *cert);

void exk_certificate_free(struct ExkCertificate *cert);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* EXCESS_KIT_H */
