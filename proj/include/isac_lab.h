/* C interface to the uplink pilot-scheme simulator. All functions are
 * thread-safe; errors are reported as status codes with a thread-local
 * message available from isac_last_error(). */
#ifndef ISAC_LAB_H
#define ISAC_LAB_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum isac_status_t {
  ISAC_OK = 0,
  ISAC_ERR_INVALID_ARGUMENT = 1,
  ISAC_ERR_VALIDATION = 2,
  ISAC_ERR_IO = 3,
  ISAC_ERR_AMBIGUITY = 4,
  ISAC_ERR_INTERNAL = 5
} isac_status_t;

/* Opaque handles. Configs collect key=value settings; results hold one
 * finished experiment run. */
typedef struct isac_config isac_config_t;
typedef struct isac_result isac_result_t;

const char* isac_version(void);

/* Message from the most recent failing call on this thread; empty string if
 * no call has failed yet. The pointer stays valid until the next failure. */
const char* isac_last_error(void);

isac_config_t* isac_config_create(void);

/* Merge "key = value" lines from a config file into cfg. Later sources win
 * key by key. */
isac_status_t isac_config_load_file(isac_config_t* cfg, const char* path);

/* Apply one "key=value" override. */
isac_status_t isac_config_set(isac_config_t* cfg, const char* assignment);

void isac_config_destroy(isac_config_t* cfg);

/* Run one catalog experiment. cfg may be NULL to run the defaults. On
 * success *out owns the result and must be freed with isac_result_destroy. */
isac_status_t isac_run(const char* experiment_id, const isac_config_t* cfg, isac_result_t** out);

/* JSON run summary (config echo, seed, aggregates, output files, wall time).
 * Owned by the result; valid until isac_result_destroy. */
const char* isac_result_summary_json(const isac_result_t* result);

/* Look up one aggregate metric by name, e.g. "mean_ue[aps][n_cp=16]".
 * mean/std_error may be NULL when the caller does not need them. */
isac_status_t isac_result_aggregate(const isac_result_t* result, const char* metric, double* mean,
                                    double* std_error);

void isac_result_destroy(isac_result_t* result);

/* Experiment catalog as a JSON array of {id, summary, defaults} objects.
 * Free with isac_string_free. */
char* isac_catalog_json(void);

/* Operation-count and signaling tables as preformatted text. Free with
 * isac_string_free. */
char* isac_tables_text(int n, int literal_formulas);

void isac_string_free(char* text);

#ifdef __cplusplus
}
#endif

#endif /* ISAC_LAB_H */
