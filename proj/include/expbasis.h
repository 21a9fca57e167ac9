/* C interface to the exponential-basis toolkit.
 *
 * Every operation returns an eb_status and, on success, an opaque
 * eb_certificate describing the outcome: a JSON document whose parameters
 * suffice to regenerate every result, plus accessors for the verdict and a
 * human-readable summary. Handles must be released with eb_certificate_free;
 * strings returned through char** with eb_string_free.
 *
 * Thread safety: all functions are reentrant; eb_last_error is thread-local.
 */

#ifndef EXPBASIS_H
#define EXPBASIS_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define EB_API __declspec(dllexport)
#else
#define EB_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum eb_status {
  EB_OK = 0,                /* verified / constructed / pass */
  EB_NEGATIVE = 1,          /* completed with a negative verdict (refuted, neither, mismatch) */
  EB_ERR_INVALID_ARGUMENT = 2,
  EB_ERR_SHAPE = 3,
  EB_ERR_SINGULAR = 4,
  EB_ERR_SIZE_LIMIT = 5,
  EB_ERR_PARSE = 6,
  EB_ERR_IO = 7,
  EB_ERR_UNSUPPORTED = 8,
  EB_ERR_NOT_FOUND = 9,
  EB_ERR_VERIFICATION = 10, /* certificate unreadable or schema invalid */
  EB_ERR_INTERNAL = 11
} eb_status;

typedef struct eb_certificate eb_certificate;

EB_API const char* eb_version(void);
EB_API const char* eb_status_name(eb_status status);

/* Message describing the most recent failure on this thread. */
EB_API const char* eb_last_error(void);

/* --- certificate handles ------------------------------------------------ */

EB_API const char* eb_certificate_json(const eb_certificate* cert);
EB_API const char* eb_certificate_kind(const eb_certificate* cert);
EB_API const char* eb_certificate_summary(const eb_certificate* cert);
EB_API int eb_certificate_positive(const eb_certificate* cert);
EB_API eb_status eb_certificate_save(const eb_certificate* cert, const char* path);
EB_API void eb_certificate_free(eb_certificate* cert);
EB_API void eb_string_free(char* text);

/* --- operations ---------------------------------------------------------- */

/* offsets: comma-separated rationals "p/q"; masks: comma-separated bitmask
 * literals ("0b0101" or decimal, bit j = cell j). tolerance <= 0 uses the
 * default singularity threshold. exact_mode: -1 auto, 1 require the exact
 * root-of-unity verdict (integer offsets only). */
EB_API eb_status eb_classify(int64_t n, const char* offsets, const char* masks,
                             double tolerance, int exact_mode, eb_certificate** out);

/* cells: comma-separated distinct cell indices, one per set. */
EB_API eb_status eb_construct(int64_t n, const char* cells, const char* masks,
                              eb_certificate** out);

/* sets_text: one support set per line, intervals "p/q..r/s" separated by
 * commas. */
EB_API eb_status eb_corollary(const char* sets_text, eb_certificate** out);

/* Fourier-row search: A has rows exp(-2*pi*i*c_k*l/N) over the union of the
 * masks. mode: "exhaustive" or "first_feasible". */
EB_API eb_status eb_lemma_search(int64_t n, const char* offsets, const char* masks,
                                 const char* mode, eb_certificate** out);

/* rho: comma-separated images, or NULL to search all permutations.
 * strategy: "exhaustive" or "randomized_refute". threads: 0 = available
 * parallelism (the EXPBASIS_THREADS environment variable overrides).
 * checkpoint_path/checkpoint_every enable periodic checkpoints;
 * resume_path continues an interrupted scan; mask_budget 0 = unlimited.
 * An interrupted scan returns a checkpoint document instead of a
 * certificate. */
EB_API eb_status eb_conjecture1(int64_t n, const char* rho, const char* strategy,
                                uint64_t seed, int threads, const char* checkpoint_path,
                                uint64_t checkpoint_every, const char* resume_path,
                                uint64_t mask_budget, eb_certificate** out);

EB_API eb_status eb_conjecture2(int64_t n, const char* rho, eb_certificate** out);

EB_API eb_status eb_hierarchy(int64_t n, int64_t p, eb_certificate** out);

/* membership: three comma-separated digit groups like "12,23,13"
 * (L_1 = {1,2}, ...), or NULL for the full 64-case table. */
EB_API eb_status eb_tri_classify(const char* membership, eb_certificate** out);

/* intervals/freqs: per-interval groups separated by ';', entries by ','.
 * Example: intervals "0,1;2;3", freqs "0,2;1;3", membership "12,23,13". */
EB_API eb_status eb_cross_check(int64_t n, const char* intervals, const char* freqs,
                                const char* membership, eb_certificate** out);

/* Builds the filter bank (searching rho when NULL), samples a spectrum
 * (seeded random, or spectrum_csv when non-NULL), reconstructs at each
 * truncation in mtruncs ("2048,8192") and reports exact relative L2 errors. */
EB_API eb_status eb_sampling_demo(int64_t n, const char* masks, const char* rho,
                                  const char* mtruncs, uint64_t seed, int refine,
                                  const char* spectrum_csv, eb_certificate** out);

EB_API eb_status eb_reproduce(const char* id, eb_certificate** out);

/* Comma-separated registry of reproducible fixtures. */
EB_API eb_status eb_fixture_ids(char** ids_csv);

/* Re-runs the certificate at `path` from its parameters. EB_OK: verified;
 * EB_NEGATIVE: mismatch (report filled); EB_ERR_VERIFICATION: unreadable. */
EB_API eb_status eb_verify_file(const char* path, char** report);

#ifdef __cplusplus
}
#endif

#endif /* EXPBASIS_H */
