/* C interface to the temporal egonet transition library.
 *
 * Objects are opaque handles released with their matching *_free function.
 * Every fallible call returns a tet_status; on failure tet_last_error()
 * holds a human-readable message for the calling thread. Strings returned
 * through char** are released with tet_string_free.
 */
#ifndef TET_TET_H
#define TET_TET_H

#include <stddef.h>
#include <stdint.h>

#if defined(TET_BUILDING_LIBRARY)
#define TET_API __attribute__((visibility("default")))
#else
#define TET_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tet_status {
    TET_OK = 0,
    TET_ERR_INVALID_ARGUMENT = 1,
    TET_ERR_UNKNOWN_NODE = 2,
    TET_ERR_PARSE = 3,
    TET_ERR_IO = 4,
    TET_ERR_CONVERGENCE = 5,
    TET_ERR_OUT_OF_RANGE = 6,
    TET_ERR_INTERNAL = 7
} tet_status;

typedef struct tet_catalog tet_catalog;
typedef struct tet_graph tet_graph;
typedef struct tet_labels tet_labels;
typedef struct tet_embedding tet_embedding;
typedef struct tet_assignment tet_assignment;
typedef struct tet_report tet_report;

TET_API const char* tet_last_error(void);
/* Stable machine-readable name such as "parse_error". */
TET_API const char* tet_status_name(tet_status status);
TET_API const char* tet_version(void);
TET_API void tet_string_free(char* s);

/* ---- transition catalog ---- */

/* exclusion_mode: "rooted-aware" or "literal-unrooted"; NULL selects rooted-aware. */
TET_API tet_status tet_catalog_build(int max_subgraph_nodes, const char* exclusion_mode, tet_catalog** out);
TET_API size_t tet_catalog_size(const tet_catalog* catalog);
TET_API tet_status tet_catalog_to_json(const tet_catalog* catalog, char** out);
/* Class id of a labeled transition; *found is 0 when the pair is excluded. */
TET_API tet_status tet_catalog_lookup(const tet_catalog* catalog, int k, int rooted, uint16_t left_mask,
                                      uint16_t right_mask, int* found, size_t* id);
TET_API void tet_catalog_free(tet_catalog* catalog);

/* ---- temporal graphs ---- */

typedef struct tet_synth_config {
    size_t n;
    double p;
    double a;
    size_t snapshots;
    uint64_t seed;
    int cross_edges;
    int shuffle_names;
} tet_synth_config;

/* Defaults: n=500, p=0.0025, a=0.05, 5 snapshots, seed 0. */
TET_API void tet_synth_config_default(tet_synth_config* cfg);
TET_API tet_status tet_synth_generate(const tet_synth_config* cfg, tet_graph** graph, tet_labels** labels);
/* Writes the edge list, labels CSV and JSON manifest. */
TET_API tet_status tet_synth_write(const tet_synth_config* cfg, const tet_graph* graph, const tet_labels* labels,
                                   const char* edges_path, const char* labels_path, const char* manifest_path);

typedef struct tet_binning {
    const char* mode; /* "equal-width", "fixed-width" or "explicit" */
    size_t bins;
    double width;
    const double* boundaries;
    size_t boundary_count;
    int has_range_min;
    double range_min;
    int has_range_max;
    double range_max;
    size_t min_multiplicity;
} tet_binning;

TET_API void tet_binning_default(tet_binning* binning);
/* Parses a `u v t` edge list (gzip when the path ends in .gz) and bins it. */
TET_API tet_status tet_graph_from_edge_list(const char* path, const tet_binning* binning, tet_graph** out,
                                            size_t* self_loops_dropped);
TET_API tet_status tet_graph_read_bundle(const char* path, tet_graph** out);
TET_API tet_status tet_graph_write_bundle(const tet_graph* graph, const char* path);
TET_API tet_status tet_graph_write_edge_list(const tet_graph* graph, const char* path);
TET_API size_t tet_graph_node_count(const tet_graph* graph);
TET_API size_t tet_graph_snapshot_count(const tet_graph* graph);
TET_API void tet_graph_free(tet_graph* graph);

/* ---- labels ---- */

TET_API tet_status tet_labels_read_csv(const char* path, tet_labels** out);
TET_API tet_status tet_labels_write_csv(const tet_labels* labels, const char* path);
TET_API size_t tet_labels_count(const tet_labels* labels);
/* 1 for anomaly, 0 for normal, -1 when the node has no label. */
TET_API int tet_labels_is_anomaly(const tet_labels* labels, const char* node);
TET_API void tet_labels_free(tet_labels* labels);

/* ---- embeddings ---- */

/* nodes may be NULL to embed every node. aggregation: mean, sum, min, max.
 * threads = 0 uses TET_THREADS or the hardware concurrency. */
TET_API tet_status tet_embed(const tet_graph* graph, const tet_catalog* catalog, const char* aggregation,
                             const char* const* nodes, size_t node_count, unsigned threads, tet_embedding** out);
/* Per-step counts, columns node,step,c0,... */
TET_API tet_status tet_embed_steps_write_csv(const tet_graph* graph, const tet_catalog* catalog,
                                             const char* const* nodes, size_t node_count, unsigned threads,
                                             const char* path);
TET_API tet_status tet_embedding_read_csv(const char* path, tet_embedding** out);
TET_API tet_status tet_embedding_write_csv(const tet_embedding* embedding, const char* path);
TET_API size_t tet_embedding_rows(const tet_embedding* embedding);
TET_API size_t tet_embedding_dims(const tet_embedding* embedding);
TET_API const char* tet_embedding_node(const tet_embedding* embedding, size_t row);
TET_API tet_status tet_embedding_value(const tet_embedding* embedding, size_t row, size_t col, double* value);
TET_API void tet_embedding_free(tet_embedding* embedding);

/* ---- clustering ---- */

typedef struct tet_cluster_params {
    double eps;           /* <= 0 selects eps by eps_rule */
    const char* eps_rule; /* "max-kdist" or "knee" */
    size_t min_pts;
    int standardize;
    const char* rule; /* "small-clusters" or "noise-only" */
    double theta;
} tet_cluster_params;

TET_API void tet_cluster_params_default(tet_cluster_params* params);
TET_API tet_status tet_cluster(const tet_embedding* embedding, const tet_cluster_params* params,
                               tet_assignment** out);
TET_API double tet_assignment_eps(const tet_assignment* assignment);
TET_API size_t tet_assignment_cluster_count(const tet_assignment* assignment);
TET_API tet_status tet_assignment_read_csv(const char* path, tet_assignment** out);
TET_API tet_status tet_assignment_write_csv(const tet_assignment* assignment, const char* path);
TET_API void tet_assignment_free(tet_assignment* assignment);

/* ---- evaluation ---- */

typedef struct tet_class_metrics {
    double precision;
    double recall;
    double f1;
    size_t support;
} tet_class_metrics;

/* Matches predictions to labels by node name. config_json (nullable) is
 * echoed into the report. */
TET_API tet_status tet_evaluate(const tet_assignment* assignment, const tet_labels* truth, const char* config_json,
                                tet_report** out);
TET_API tet_status tet_report_metrics(const tet_report* report, tet_class_metrics* anomaly, tet_class_metrics* normal,
                                      double* accuracy);
TET_API tet_status tet_report_to_json(const tet_report* report, char** out);
TET_API tet_status tet_report_table(const tet_report* report, char** out);
TET_API void tet_report_free(tet_report* report);

/* ---- projection ---- */

/* Writes node,x,y,cluster,predicted,truth. assignment and truth may be NULL. */
TET_API tet_status tet_project_write_csv(const tet_embedding* embedding, const tet_assignment* assignment,
                                         const tet_labels* truth, const char* path);

/* ---- end to end ---- */

TET_API tet_status tet_pipeline_default_config(char** out);
/* Runs the pipeline for a (partial) JSON config layered over the defaults.
 * report_json and table may be NULL. */
TET_API tet_status tet_pipeline_run(const char* config_json, char** report_json, char** table);

#ifdef __cplusplus
}
#endif

#endif /* TET_TET_H */
