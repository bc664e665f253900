/*
 * samrec — embeddable context-management and recommendation engine.
 *
 * C surface over the C++ core: opaque handles, integer status codes, JSON
 * strings for structured results. Strings returned through `char**` outputs
 * are heap-allocated and must be released with samrec_string_free().
 *
 * Unless noted otherwise, functions return SAMREC_OK (0) on success and a
 * samrec_status code on failure; samrec_last_error() describes the most
 * recent failure on that handle (pass NULL for functions that take no
 * handle). An engine handle may be shared across threads: queries run
 * concurrently, mutations are serialized internally.
 */

#ifndef SAMREC_H
#define SAMREC_H

#include <stddef.h>

#if defined(_WIN32)
#if defined(SAMREC_BUILDING_SHARED)
#define SAMREC_API __declspec(dllexport)
#else
#define SAMREC_API __declspec(dllimport)
#endif
#else
#define SAMREC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct samrec_engine samrec_engine;
typedef struct samrec_server samrec_server;

typedef enum samrec_status {
    SAMREC_OK = 0,
    SAMREC_ERR_USAGE = 1,         /* invalid argument or precondition */
    SAMREC_ERR_IO = 2,            /* file or socket failure */
    SAMREC_ERR_DATA = 3,          /* malformed input data */
    SAMREC_ERR_NOT_FOUND = 4,     /* unknown node id */
    SAMREC_ERR_DUPLICATE = 5,     /* node id already present */
    SAMREC_ERR_KIND_MISMATCH = 6, /* node kind violates an edge/asset rule */
    SAMREC_ERR_STATE = 7,         /* operation invalid in the current state */
    SAMREC_ERR_INTERNAL = 8
} samrec_status;

SAMREC_API const char* samrec_version(void);

/* --- engine lifecycle ---------------------------------------------------- */

SAMREC_API samrec_engine* samrec_engine_new(void);
/* Loads a JSONL graph snapshot; NULL on failure (see samrec_last_error(NULL)). */
SAMREC_API samrec_engine* samrec_engine_open(const char* snapshot_path);
SAMREC_API void samrec_engine_free(samrec_engine* engine);
SAMREC_API const char* samrec_last_error(const samrec_engine* engine);
/* Writes the graph as a JSONL snapshot. */
SAMREC_API int samrec_engine_save(samrec_engine* engine, const char* path);
/* Options: "max_depth", "t_root", "t_widget", "knn_k". */
SAMREC_API int samrec_engine_set_option(samrec_engine* engine, const char* name, double value);
/* {"nodes":..,"edges":..,"interactions":..} */
SAMREC_API int samrec_graph_stats(samrec_engine* engine, char** json_out);

/* --- graph construction -------------------------------------------------- */

SAMREC_API int samrec_add_person(samrec_engine* engine, const char* id, const char* name);
SAMREC_API int samrec_add_root_asset(samrec_engine* engine, const char* id, const char* title);
/* Creates the sub asset and links it under root_id. */
SAMREC_API int samrec_add_sub_asset(samrec_engine* engine, const char* id, const char* title,
                                    const char* root_id);
/* Keywords deduplicate by label; attaches a has_keywords edge. */
SAMREC_API int samrec_add_keyword(samrec_engine* engine, const char* asset_id, const char* label);

/* Records one interaction. type is one of consume, scroll, fullscreen,
 * comment, like, dislike, dismiss. polarity/intensity only matter for
 * comments; text may be NULL. Explicit interactions (comment/like/dislike)
 * replace each other per (user, asset); implicit ones deduplicate per type. */
SAMREC_API int samrec_record_interaction(samrec_engine* engine, const char* user,
                                         const char* asset, const char* type, double polarity,
                                         double intensity, const char* text,
                                         long long timestamp_ms);
/* Same, from a JSON body: {user, asset, type, polarity?, intensity?, text?, timestamp}. */
SAMREC_API int samrec_record_interaction_json(samrec_engine* engine, const char* body);

/* --- queries and recommendations ----------------------------------------- */

/* engine_name is "sam" (graph analysis with CF fallback) or "knn" (baseline).
 * value_out receives the score in [-1, 1]; source_buf (optional) the score
 * provenance: "graph", "cf_fallback" or "user_mean". */
SAMREC_API int samrec_score(samrec_engine* engine, const char* user, const char* asset,
                            const char* engine_name, double* value_out, char* source_buf,
                            size_t source_buf_size);
/* {"user":..,"level":"root","entries":[{"asset":..,"score":..,"source":..}]} */
SAMREC_API int samrec_recommend_roots(samrec_engine* engine, const char* user, int limit,
                                      int include_consumed, const char* engine_name,
                                      char** json_out);
SAMREC_API int samrec_recommend_widgets(samrec_engine* engine, const char* user,
                                        const char* root_asset, const char* engine_name,
                                        char** json_out);
SAMREC_API int samrec_interactions(samrec_engine* engine, const char* user, const char* asset,
                                   char** json_out);
SAMREC_API int samrec_neighbors(samrec_engine* engine, const char* node_id, char** json_out);

/* --- dataset ingestion and evaluation ------------------------------------ */

/* Builds the graph from MovieLens-layout CSVs: the n_movies most rated
 * movies, their raters, top keywords per movie, and one comment per training
 * rating. The held-out split is written to test_csv_out (pass NULL to skip).
 * Replaces the engine's current graph. */
SAMREC_API int samrec_ingest_movielens(samrec_engine* engine, const char* ratings_csv,
                                       const char* tags_csv, const char* movies_csv,
                                       int n_movies, int keywords_per_movie,
                                       double train_fraction, unsigned long long seed,
                                       double scale_min, double scale_max,
                                       const char* test_csv_out);

/* engine_name: "sam", "knn" or "both". Result is keyed by engine name, each
 * entry {"mae":..,"rmse":..,"mpe_percent":..,"n":..,"per_source_counts":..}. */
SAMREC_API int samrec_evaluate(samrec_engine* engine, const char* test_csv,
                               const char* engine_name, char** json_out);

/* --- HTTP service and benchmark ------------------------------------------ */

/* Serves the engine over HTTP on a background thread; port 0 picks a free
 * port. NULL on failure. The server borrows the engine: stop the server
 * before freeing the engine. */
SAMREC_API samrec_server* samrec_server_start(samrec_engine* engine, const char* host, int port);
SAMREC_API int samrec_server_port(const samrec_server* server);
/* Snapshot with writes gated: concurrent POST /interactions see 409. */
SAMREC_API int samrec_server_save_snapshot(samrec_server* server, const char* path);
SAMREC_API void samrec_server_stop(samrec_server* server);

/* Sequentially replays root-recommendation requests from the test CSV's user
 * column against a running service, once per engine in the comma-separated
 * `engines` list. Per-request latencies (warmup included) are appended to
 * series_csv as request_index,endpoint,micros when non-NULL. json_out gets
 * {"<engine>":{"mean_us":..,"median_us":..,"p95_us":..,"p99_us":..,
 * "count":..,"warmup":..,"errors":..}, ...}. */
SAMREC_API int samrec_latency_bench(const char* host, int port, const char* test_csv,
                                    const char* engines, int limit, int requests, int warmup,
                                    const char* series_csv, char** json_out);

SAMREC_API void samrec_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* SAMREC_H */
