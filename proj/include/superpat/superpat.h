#ifndef SUPERPAT_SUPERPAT_H
#define SUPERPAT_SUPERPAT_H

/* C interface to the superpattern toolkit.
 *
 * Hosts are opaque handles. Functions return an sp_status; on failure the
 * thread's last error message describes the problem. Results are returned as
 * JSON (or CSV for simulation tables) in strings the caller releases with
 * sp_free_string. Indices are 1-based throughout. */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define SP_API __declspec(dllexport)
#else
#define SP_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sp_status {
  SP_OK = 0,
  SP_INVALID_ARGUMENT = 1,
  SP_PARSE_ERROR = 2,
  SP_DOMAIN_ERROR = 3,
  SP_CAPACITY_EXCEEDED = 4,
  SP_BUDGET_EXCEEDED = 5,
  SP_MALFORMED_ENCODING = 6,
  SP_IO_ERROR = 7,
  SP_INTERNAL_ERROR = 8
} sp_status;

typedef struct sp_host sp_host;

/* Machine-readable name of a status, e.g. "budget_exceeded". */
SP_API const char* sp_status_name(sp_status status);
/* Message of the last failure on this thread; empty after success. */
SP_API const char* sp_last_error_message(void);
SP_API void sp_free_string(char* s);

/* ---- hosts ---- */

/* Text form: optional "# r=<int>" line (sequences), then integers. */
SP_API sp_status sp_host_parse(const char* text, sp_host** out);
SP_API sp_status sp_host_load(const char* path, sp_host** out);
/* alphabet == 0 makes a permutation; otherwise a sequence over [alphabet]. */
SP_API sp_status sp_host_from_values(const int* values, size_t n, int alphabet, sp_host** out);
SP_API void sp_host_free(sp_host* host);
SP_API size_t sp_host_length(const sp_host* host);
/* 0 for permutations. */
SP_API int sp_host_alphabet(const sp_host* host);
/* Copies up to capacity entries; returns the host length. */
SP_API size_t sp_host_values(const sp_host* host, int* out, size_t capacity);
SP_API sp_status sp_host_to_text(const sp_host* host, char** out);
/* Permutation with ties broken by position (earlier entry smaller). */
SP_API sp_status sp_host_lift(const sp_host* host, sp_host** out);

SP_API sp_status sp_construct_repeated_identity(int k, sp_host** out);
SP_API sp_status sp_random_permutation(int n, uint64_t seed, sp_host** out);

/* ---- patterns ---- */

/* {"contained":bool,"occurrence":[...]|null}, leftmost occurrence. */
SP_API sp_status sp_contains(const sp_host* host, const int* pattern, size_t k, char** json);
/* budget == 0 selects the default of 1e9 subsets. */
SP_API sp_status sp_count_patterns(const sp_host* host, int k, int parallelism,
                                   uint64_t budget, char** json);
SP_API sp_status sp_universal(const sp_host* host, int k, char** json);

/* ---- permutation encoding ---- */

SP_API sp_status sp_widths(const sp_host* host, const int* occurrence, size_t k, double c,
                           double d, char** json);
SP_API sp_status sp_encode_perm(const sp_host* host, const int* occurrence, size_t k, double c,
                                double d, char** json);
/* json: {"pattern":[...]} */
SP_API sp_status sp_decode_perm(const sp_host* host, const char* encoding_json, double c,
                                double d, char** json);
/* Census of the permutation encoding over all size-k subsets of n. */
SP_API sp_status sp_counting_ledger(int n, int k, double c, double d, char** json);

/* ---- sequence encoding ---- */

/* occurrence is value-indexed: occurrence[i-1] holds the position of value i. */
SP_API sp_status sp_encode_seq(const sp_host* host, const int* occurrence, size_t k, double c,
                               char** json);
/* json: {"pattern":[...],"positions":[...]} */
SP_API sp_status sp_decode_seq(const sp_host* host, const char* encoding_json, double c,
                               char** json);

/* Permutation hosts: all C(n,k) occurrences with (c, d). Sequence hosts:
 * every value-indexed occurrence of the alphabet with c; k and d ignored. */
SP_API sp_status sp_roundtrip_test(const sp_host* host, int k, double c, double d,
                                   int parallelism, uint64_t budget, char** json);

/* ---- gaps and splits ---- */

/* prefix is value-indexed over symbols 1..prefix_len. m == 0 reports every
 * symbol m in prefix_len+1..alphabet. k sets the common-symbol threshold. */
SP_API sp_status sp_splits(const sp_host* host, const int* prefix, size_t prefix_len, int m,
                           int k, char** json);
SP_API sp_status sp_full_gaps(const sp_host* host, int m, double full_fraction, char** json);
SP_API sp_status sp_fullgap_lemma(const sp_host* host, int k, double common_fraction,
                                  double full_fraction, char** json);

/* ---- simulation (CSV) ---- */

SP_API sp_status sp_simulate_widths(int n, int k, double d, uint64_t trials, uint64_t seed,
                                    int parallelism, char** csv);
SP_API sp_status sp_simulate_composition(int n, int k, uint64_t trials, uint64_t seed,
                                         int parallelism, char** csv);
SP_API sp_status sp_simulate_splits(const sp_host* host, double c, uint64_t trials,
                                    uint64_t seed, int parallelism, char** csv);
/* {"fraction","standard_error","widths","survival"} */
SP_API sp_status sp_width_tail(int n, int k, double d, uint64_t trials, uint64_t seed,
                               int parallelism, char** json);

/* ---- certificates and bounds ---- */

/* JSON array of certificate names. */
SP_API sp_status sp_certificate_names(char** json);
/* params_json: object of string or number overrides, or NULL. */
SP_API sp_status sp_certify(const char* name, const char* params_json, char** json);
/* r <= 0 skips the sequence bound. */
SP_API sp_status sp_trivial_bounds(int64_t n, int64_t k, int64_t r, char** json);

#ifdef __cplusplus
}
#endif

#endif /* SUPERPAT_SUPERPAT_H */
