/* xltrace - trace-link recovery between bilingual commits and issues.
 *
 * C interface to the shared library. All functions return XLT_OK on success
 * or an error status; xlt_last_error() holds a thread-local message for the
 * most recent failure on the calling thread. Objects are opaque handles
 * released with their matching _free function. Strings returned through
 * char** are heap-allocated and released with xlt_string_free().
 */
#ifndef XLTRACE_H
#define XLTRACE_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum xlt_status {
  XLT_OK = 0,
  XLT_ERR_INVALID_ARGUMENT = 1,
  XLT_ERR_IO = 2,
  XLT_ERR_PARSE = 3,
  XLT_ERR_CONFIG = 4,
  XLT_ERR_TRANSLATION = 5,
  XLT_ERR_UNSUPPORTED = 6,
  XLT_ERR_INTERNAL = 7
} xlt_status;

/* Stable name of a status code, e.g. "ok", "parse". */
const char* xlt_status_name(xlt_status status);

/* Message of the last failure on this thread; empty string if none. The
 * pointer stays valid until the next failing call on the same thread. */
const char* xlt_last_error(void);

const char* xlt_version(void);

/* Released with xlt_string_free. */
void xlt_string_free(char* text);

/* ---- datasets ---------------------------------------------------------- */

typedef struct xlt_dataset xlt_dataset;

/* Loads an artifact corpus (JSON lines, one commit or issue per line). */
xlt_status xlt_dataset_load(const char* corpus_path, xlt_dataset** out);

/* Adds golden links from a link file; every endpoint must exist. */
xlt_status xlt_dataset_load_links(xlt_dataset* dataset, const char* links_path);

/* Scans commit messages for issue references and adds the resolved links.
 * pattern NULL selects the default "#(\d+)". Outputs may be NULL. */
xlt_status xlt_dataset_extract_links(xlt_dataset* dataset, const char* pattern,
                                     size_t* links_out, size_t* skipped_out);

/* Keeps only artifacts that appear in at least one golden link. */
xlt_status xlt_dataset_prune_linked(xlt_dataset* dataset);

/* Keeps only links (and their endpoints) with a bilingual endpoint. */
xlt_status xlt_dataset_prune_intermingled(xlt_dataset* dataset);

xlt_status xlt_dataset_counts(const xlt_dataset* dataset, size_t* commits,
                              size_t* issues, size_t* links);

/* Foreign vocabulary types / total vocabulary types. */
xlt_status xlt_dataset_foreign_ratio(const xlt_dataset* dataset, double* ratio);

/* Number of (commit, issue) pairs passing the lifetime filter:
 * issue opened before the commit, commit before the issue closed. */
xlt_status xlt_dataset_candidate_count(const xlt_dataset* dataset, size_t* count);

/* Writes the corpus and/or links; pass NULL to skip either file. */
xlt_status xlt_dataset_save(const xlt_dataset* dataset, const char* corpus_path,
                            const char* links_path);

void xlt_dataset_free(xlt_dataset* dataset);

/* ---- word-vector tables ------------------------------------------------ */

typedef struct xlt_embedding xlt_embedding;

/* Loads a word-vector text file ("<count> <dimension>" header, one token and
 * its values per line). limit 0 loads everything, otherwise the first
 * `limit` rows. */
xlt_status xlt_embedding_load(const char* path, size_t limit, xlt_embedding** out);

/* Scales every row to unit length, in place. Fails on a zero vector. */
xlt_status xlt_embedding_normalize(xlt_embedding* table);

/* Uniform sample without replacement, deterministic per seed; row order of
 * the source file is preserved. */
xlt_status xlt_embedding_sample(const xlt_embedding* table, size_t size,
                                uint64_t seed, xlt_embedding** out);

/* Any output may be NULL. normalized is 0 or 1. */
xlt_status xlt_embedding_info(const xlt_embedding* table, size_t* rows,
                              size_t* dimension, int* normalized);

/* Cosine of the two token vectors (table must be normalized). Tokens missing
 * from the table fall back to 1 when equal, 0 otherwise. */
xlt_status xlt_embedding_similarity(const xlt_embedding* table, const char* a,
                                    const char* b, double* out);

void xlt_embedding_free(xlt_embedding* table);

/* ---- run configuration and commands ------------------------------------ */

typedef struct xlt_config xlt_config;

/* Parses a key = value config file; every malformed line is reported. */
xlt_status xlt_config_load(const char* path, xlt_config** out);

/* A config with all defaults. */
xlt_status xlt_config_create(xlt_config** out);

/* Sets one key, same keys as the config file. */
xlt_status xlt_config_set(xlt_config* config, const char* key, const char* value);

void xlt_config_free(xlt_config* config);

/* Batch commands. On success *summary_json holds the command's JSON summary
 * (release with xlt_string_free); output files land in the configured
 * out_dir. */
xlt_status xlt_cmd_ingest(const xlt_config* config, char** summary_json);
xlt_status xlt_cmd_prune(const xlt_config* config, char** summary_json);
xlt_status xlt_cmd_translate(const xlt_config* config, char** summary_json);
xlt_status xlt_cmd_trace(const xlt_config* config, char** summary_json);
xlt_status xlt_cmd_eval(const xlt_config* config, char** summary_json);
xlt_status xlt_cmd_compare(const xlt_config* config, char** summary_json);

#ifdef __cplusplus
}
#endif

#endif /* XLTRACE_H */
