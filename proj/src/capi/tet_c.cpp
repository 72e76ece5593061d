#include "tet/tet.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "tet/baselines.hpp"
#include "tet/catalog.hpp"
#include "tet/clustering.hpp"
#include "tet/embedder.hpp"
#include "tet/error.hpp"
#include "tet/ingest.hpp"
#include "tet/io.hpp"
#include "tet/metrics.hpp"
#include "tet/pipeline.hpp"
#include "tet/synthgen.hpp"

struct tet_catalog {
    tet::TransitionCatalog impl;
};

struct tet_graph {
    tet::TemporalGraph impl;
};

struct tet_labels {
    tet::LabelTable impl;
    std::unordered_map<std::string, tet::NodeLabel> by_name;
};

struct tet_embedding {
    tet::EmbeddingTable impl;
};

struct tet_assignment {
    tet::AssignmentTable impl;
    double eps{0.0};
    std::size_t cluster_count{0};
};

struct tet_report {
    tet::EvalReport impl;
    tet::Json json;
};

namespace {

thread_local std::string last_error;

tet_status status_of(tet::ErrorKind kind) {
    switch (kind) {
        case tet::ErrorKind::invalid_argument: return TET_ERR_INVALID_ARGUMENT;
        case tet::ErrorKind::unknown_node: return TET_ERR_UNKNOWN_NODE;
        case tet::ErrorKind::parse: return TET_ERR_PARSE;
        case tet::ErrorKind::io: return TET_ERR_IO;
        case tet::ErrorKind::convergence: return TET_ERR_CONVERGENCE;
        case tet::ErrorKind::out_of_range: return TET_ERR_OUT_OF_RANGE;
    }
    return TET_ERR_INTERNAL;
}

/// Runs fn, translating exceptions into status codes and the thread's last error.
template <typename Fn>
tet_status guarded(Fn&& fn) {
    try {
        fn();
        last_error.clear();
        return TET_OK;
    } catch (const tet::Error& e) {
        last_error = e.what();
        return status_of(e.kind());
    } catch (const nlohmann::json::exception& e) {
        last_error = e.what();
        return TET_ERR_PARSE;
    } catch (const std::bad_alloc&) {
        last_error = "out of memory";
        return TET_ERR_INTERNAL;
    } catch (const std::exception& e) {
        last_error = e.what();
        return TET_ERR_INTERNAL;
    } catch (...) {
        last_error = "unknown failure";
        return TET_ERR_INTERNAL;
    }
}

void require(bool condition, const char* what) {
    if (!condition) throw tet::Error(tet::ErrorKind::invalid_argument, what);
}

char* duplicate(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out == nullptr) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

tet::SynthConfig to_core(const tet_synth_config& c) {
    tet::SynthConfig cfg;
    cfg.n = c.n;
    cfg.p = c.p;
    cfg.a = c.a;
    cfg.snapshots = c.snapshots;
    cfg.seed = c.seed;
    cfg.cross_edges = c.cross_edges != 0;
    cfg.shuffle_names = c.shuffle_names != 0;
    return cfg;
}

tet_labels* make_labels(tet::LabelTable table) {
    auto out = std::make_unique<tet_labels>(tet_labels{std::move(table), {}});
    for (std::size_t i = 0; i < out->impl.nodes.size(); ++i) {
        if (!out->by_name.emplace(out->impl.nodes[i], out->impl.labels[i]).second) {
            throw tet::Error(tet::ErrorKind::parse, "node '" + out->impl.nodes[i] + "' is labeled twice");
        }
    }
    return out.release();
}

std::optional<std::vector<tet::NodeIndex>> node_subset(const tet::TemporalGraph& graph, const char* const* nodes,
                                                       std::size_t count) {
    if (nodes == nullptr) return std::nullopt;
    std::vector<tet::NodeIndex> out;
    for (std::size_t i = 0; i < count; ++i) {
        require(nodes[i] != nullptr, "node name must not be null");
        out.push_back(graph.universe().at(nodes[i]));
    }
    return out;
}

}  // namespace

extern "C" {

const char* tet_last_error(void) { return last_error.c_str(); }

const char* tet_status_name(tet_status status) {
    switch (status) {
        case TET_OK: return "ok";
        case TET_ERR_INVALID_ARGUMENT: return "invalid_argument";
        case TET_ERR_UNKNOWN_NODE: return "unknown_node";
        case TET_ERR_PARSE: return "parse_error";
        case TET_ERR_IO: return "io_error";
        case TET_ERR_CONVERGENCE: return "convergence_error";
        case TET_ERR_OUT_OF_RANGE: return "out_of_range";
        case TET_ERR_INTERNAL: return "internal_error";
    }
    return "internal_error";
}

const char* tet_version(void) { return "1.0.0"; }

void tet_string_free(char* s) { std::free(s); }

tet_status tet_catalog_build(int max_subgraph_nodes, const char* exclusion_mode, tet_catalog** out) {
    return guarded([&] {
        require(out != nullptr, "output handle must not be null");
        *out = nullptr;
        const auto mode = exclusion_mode ? tet::parse_exclusion_mode(exclusion_mode) : tet::ExclusionMode::rooted_aware;
        *out = new tet_catalog{tet::build_catalog(max_subgraph_nodes, mode)};
    });
}

size_t tet_catalog_size(const tet_catalog* catalog) { return catalog ? catalog->impl.size() : 0; }

tet_status tet_catalog_to_json(const tet_catalog* catalog, char** out) {
    return guarded([&] {
        require(catalog != nullptr && out != nullptr, "catalog and output must not be null");
        *out = duplicate(tet::catalog_to_json(catalog->impl).dump(2) + "\n");
    });
}

tet_status tet_catalog_lookup(const tet_catalog* catalog, int k, int rooted, uint16_t left_mask, uint16_t right_mask,
                              int* found, size_t* id) {
    return guarded([&] {
        require(catalog != nullptr && found != nullptr && id != nullptr, "arguments must not be null");
        const auto hit = catalog->impl.lookup({k, rooted != 0, left_mask, right_mask});
        *found = hit ? 1 : 0;
        *id = hit.value_or(0);
    });
}

void tet_catalog_free(tet_catalog* catalog) { delete catalog; }

void tet_synth_config_default(tet_synth_config* cfg) {
    if (cfg == nullptr) return;
    const tet::SynthConfig d;
    *cfg = {d.n, d.p, d.a, d.snapshots, d.seed, d.cross_edges ? 1 : 0, d.shuffle_names ? 1 : 0};
}

tet_status tet_synth_generate(const tet_synth_config* cfg, tet_graph** graph, tet_labels** labels) {
    return guarded([&] {
        require(cfg != nullptr && graph != nullptr && labels != nullptr, "arguments must not be null");
        *graph = nullptr;
        *labels = nullptr;
        auto data = tet::generate(to_core(*cfg));
        std::unique_ptr<tet_labels> label_handle(make_labels(tet::make_label_table(data.graph, data.labels)));
        *graph = new tet_graph{std::move(data.graph)};
        *labels = label_handle.release();
    });
}

tet_status tet_synth_write(const tet_synth_config* cfg, const tet_graph* graph, const tet_labels* labels,
                           const char* edges_path, const char* labels_path, const char* manifest_path) {
    return guarded([&] {
        require(cfg && graph && labels && edges_path && labels_path && manifest_path, "arguments must not be null");
        std::ostringstream edges;
        tet::write_edge_list(edges, graph->impl);
        tet::write_file_atomic(edges_path, edges.str());
        tet::write_file_atomic(labels_path, tet::labels_csv(labels->impl));
        tet::write_file_atomic(manifest_path, tet::synth_manifest(to_core(*cfg)).dump(2) + "\n");
    });
}

void tet_binning_default(tet_binning* binning) {
    if (binning == nullptr) return;
    *binning = tet_binning{"equal-width", 0, 0.0, nullptr, 0, 0, 0.0, 0, 0.0, 1};
}

tet_status tet_graph_from_edge_list(const char* path, const tet_binning* binning, tet_graph** out,
                                    size_t* self_loops_dropped) {
    return guarded([&] {
        require(path != nullptr && binning != nullptr && out != nullptr, "arguments must not be null");
        *out = nullptr;
        tet::DiscretizationSpec spec;
        spec.mode = tet::parse_binning_mode(binning->mode ? binning->mode : "equal-width");
        spec.bins = binning->bins;
        spec.width = binning->width;
        if (binning->boundaries != nullptr) {
            spec.boundaries.assign(binning->boundaries, binning->boundaries + binning->boundary_count);
        }
        if (binning->has_range_min) spec.range_min = binning->range_min;
        if (binning->has_range_max) spec.range_max = binning->range_max;
        spec.min_multiplicity = binning->min_multiplicity;
        const auto parsed = tet::read_records(path);
        *out = new tet_graph{tet::discretize(parsed, spec)};
        if (self_loops_dropped != nullptr) *self_loops_dropped = parsed.self_loops_dropped;
    });
}

tet_status tet_graph_read_bundle(const char* path, tet_graph** out) {
    return guarded([&] {
        require(path != nullptr && out != nullptr, "arguments must not be null");
        *out = nullptr;
        const auto text = tet::read_file(path);
        tet::Json bundle;
        try {
            bundle = tet::Json::parse(text);
        } catch (const nlohmann::json::exception& e) {
            throw tet::Error(tet::ErrorKind::parse, std::string("snapshot bundle is not JSON: ") + e.what());
        }
        *out = new tet_graph{tet::graph_from_bundle(bundle)};
    });
}

tet_status tet_graph_write_bundle(const tet_graph* graph, const char* path) {
    return guarded([&] {
        require(graph != nullptr && path != nullptr, "arguments must not be null");
        tet::write_file_atomic(path, tet::graph_to_bundle(graph->impl).dump() + "\n");
    });
}

tet_status tet_graph_write_edge_list(const tet_graph* graph, const char* path) {
    return guarded([&] {
        require(graph != nullptr && path != nullptr, "arguments must not be null");
        std::ostringstream edges;
        tet::write_edge_list(edges, graph->impl);
        tet::write_file_atomic(path, edges.str());
    });
}

size_t tet_graph_node_count(const tet_graph* graph) { return graph ? graph->impl.node_count() : 0; }
size_t tet_graph_snapshot_count(const tet_graph* graph) { return graph ? graph->impl.snapshot_count() : 0; }
void tet_graph_free(tet_graph* graph) { delete graph; }

tet_status tet_labels_read_csv(const char* path, tet_labels** out) {
    return guarded([&] {
        require(path != nullptr && out != nullptr, "arguments must not be null");
        *out = nullptr;
        *out = make_labels(tet::parse_labels_csv(tet::read_file(path)));
    });
}

tet_status tet_labels_write_csv(const tet_labels* labels, const char* path) {
    return guarded([&] {
        require(labels != nullptr && path != nullptr, "arguments must not be null");
        tet::write_file_atomic(path, tet::labels_csv(labels->impl));
    });
}

size_t tet_labels_count(const tet_labels* labels) { return labels ? labels->impl.nodes.size() : 0; }

int tet_labels_is_anomaly(const tet_labels* labels, const char* node) {
    if (labels == nullptr || node == nullptr) return -1;
    const auto it = labels->by_name.find(node);
    if (it == labels->by_name.end()) return -1;
    return it->second == tet::NodeLabel::anomaly ? 1 : 0;
}

void tet_labels_free(tet_labels* labels) { delete labels; }

tet_status tet_embed(const tet_graph* graph, const tet_catalog* catalog, const char* aggregation,
                     const char* const* nodes, size_t node_count, unsigned threads, tet_embedding** out) {
    return guarded([&] {
        require(graph != nullptr && catalog != nullptr && out != nullptr, "arguments must not be null");
        *out = nullptr;
        tet::EmbedOptions options;
        options.aggregation = tet::parse_aggregation(aggregation ? aggregation : "mean");
        options.nodes = node_subset(graph->impl, nodes, node_count);
        options.threads = threads;
        const auto embeddings = tet::embed_all(graph->impl, catalog->impl, options);
        *out = new tet_embedding{tet::make_embedding_table(graph->impl, embeddings)};
    });
}

tet_status tet_embed_steps_write_csv(const tet_graph* graph, const tet_catalog* catalog, const char* const* nodes,
                                     size_t node_count, unsigned threads, const char* path) {
    return guarded([&] {
        require(graph != nullptr && catalog != nullptr && path != nullptr, "arguments must not be null");
        tet::EmbedOptions options;
        options.nodes = node_subset(graph->impl, nodes, node_count);
        options.threads = threads;
        tet::write_file_atomic(path, tet::step_csv(graph->impl, tet::embed_steps(graph->impl, catalog->impl, options)));
    });
}

tet_status tet_embedding_read_csv(const char* path, tet_embedding** out) {
    return guarded([&] {
        require(path != nullptr && out != nullptr, "arguments must not be null");
        *out = nullptr;
        *out = new tet_embedding{tet::parse_embedding_csv(tet::read_file(path))};
    });
}

tet_status tet_embedding_write_csv(const tet_embedding* embedding, const char* path) {
    return guarded([&] {
        require(embedding != nullptr && path != nullptr, "arguments must not be null");
        tet::write_file_atomic(path, tet::embedding_csv(embedding->impl));
    });
}

size_t tet_embedding_rows(const tet_embedding* embedding) { return embedding ? embedding->impl.rows.size() : 0; }

size_t tet_embedding_dims(const tet_embedding* embedding) {
    if (embedding == nullptr || embedding->impl.rows.empty()) return 0;
    return embedding->impl.rows.front().size();
}

const char* tet_embedding_node(const tet_embedding* embedding, size_t row) {
    if (embedding == nullptr || row >= embedding->impl.nodes.size()) return nullptr;
    return embedding->impl.nodes[row].c_str();
}

tet_status tet_embedding_value(const tet_embedding* embedding, size_t row, size_t col, double* value) {
    return guarded([&] {
        require(embedding != nullptr && value != nullptr, "arguments must not be null");
        if (row >= embedding->impl.rows.size() || col >= embedding->impl.rows[row].size()) {
            throw tet::Error(tet::ErrorKind::out_of_range, "embedding index out of range");
        }
        *value = embedding->impl.rows[row][col];
    });
}

void tet_embedding_free(tet_embedding* embedding) { delete embedding; }

void tet_cluster_params_default(tet_cluster_params* params) {
    if (params == nullptr) return;
    *params = tet_cluster_params{0.0, "max-kdist", 4, 0, "small-clusters", 0.5};
}

tet_status tet_cluster(const tet_embedding* embedding, const tet_cluster_params* params, tet_assignment** out) {
    return guarded([&] {
        require(embedding != nullptr && params != nullptr && out != nullptr, "arguments must not be null");
        *out = nullptr;
        const auto& rows = embedding->impl.rows;
        const std::vector<tet::Point> points = params->standardize ? tet::standardize(rows) : rows;
        const double eps =
            params->eps > 0.0
                ? params->eps
                : tet::auto_eps(points, params->min_pts, tet::parse_eps_rule(params->eps_rule ? params->eps_rule : "max-kdist"));
        const auto assignment = tet::dbscan(points, {eps, params->min_pts, false});
        tet::AnomalyRule rule;
        rule.kind = tet::parse_rule_kind(params->rule ? params->rule : "small-clusters");
        rule.theta = params->theta;
        auto predicted = tet::to_anomaly_labels(assignment, rule);
        *out = new tet_assignment{{embedding->impl.nodes, assignment.cluster, std::move(predicted)},
                                  eps,
                                  assignment.cluster_count};
    });
}

double tet_assignment_eps(const tet_assignment* assignment) { return assignment ? assignment->eps : 0.0; }

size_t tet_assignment_cluster_count(const tet_assignment* assignment) {
    return assignment ? assignment->cluster_count : 0;
}

tet_status tet_assignment_read_csv(const char* path, tet_assignment** out) {
    return guarded([&] {
        require(path != nullptr && out != nullptr, "arguments must not be null");
        *out = nullptr;
        auto table = tet::parse_assignment_csv(tet::read_file(path));
        int max_cluster = -1;
        for (int c : table.cluster) max_cluster = std::max(max_cluster, c);
        *out = new tet_assignment{std::move(table), 0.0, static_cast<std::size_t>(max_cluster + 1)};
    });
}

tet_status tet_assignment_write_csv(const tet_assignment* assignment, const char* path) {
    return guarded([&] {
        require(assignment != nullptr && path != nullptr, "arguments must not be null");
        tet::write_file_atomic(path, tet::assignment_csv(assignment->impl));
    });
}

void tet_assignment_free(tet_assignment* assignment) { delete assignment; }

tet_status tet_evaluate(const tet_assignment* assignment, const tet_labels* truth, const char* config_json,
                        tet_report** out) {
    return guarded([&] {
        require(assignment != nullptr && truth != nullptr && out != nullptr, "arguments must not be null");
        *out = nullptr;
        const auto aligned = truth->impl.aligned_to(assignment->impl.nodes);
        const auto report = tet::evaluate(assignment->impl.predicted, aligned);
        tet::Json json;
        json["config"] = config_json ? tet::Json::parse(config_json) : tet::Json(nullptr);
        json["metrics"] = tet::report_to_json(report);
        *out = new tet_report{report, std::move(json)};
    });
}

tet_status tet_report_metrics(const tet_report* report, tet_class_metrics* anomaly, tet_class_metrics* normal,
                              double* accuracy) {
    return guarded([&] {
        require(report != nullptr, "report must not be null");
        auto copy = [](const tet::ClassMetrics& m) { return tet_class_metrics{m.precision, m.recall, m.f1, m.support}; };
        if (anomaly) *anomaly = copy(report->impl.anomaly);
        if (normal) *normal = copy(report->impl.normal);
        if (accuracy) *accuracy = report->impl.accuracy;
    });
}

tet_status tet_report_to_json(const tet_report* report, char** out) {
    return guarded([&] {
        require(report != nullptr && out != nullptr, "arguments must not be null");
        *out = duplicate(report->json.dump(2) + "\n");
    });
}

tet_status tet_report_table(const tet_report* report, char** out) {
    return guarded([&] {
        require(report != nullptr && out != nullptr, "arguments must not be null");
        *out = duplicate(tet::render_table(report->impl));
    });
}

void tet_report_free(tet_report* report) { delete report; }

tet_status tet_project_write_csv(const tet_embedding* embedding, const tet_assignment* assignment,
                                 const tet_labels* truth, const char* path) {
    return guarded([&] {
        require(embedding != nullptr && path != nullptr, "arguments must not be null");
        const auto& nodes = embedding->impl.nodes;
        if (assignment != nullptr && assignment->impl.nodes != nodes) {
            throw tet::Error(tet::ErrorKind::invalid_argument, "assignment rows do not match the embedding rows");
        }
        std::optional<std::vector<tet::NodeLabel>> aligned;
        if (truth != nullptr) aligned = truth->impl.aligned_to(nodes);
        const auto coords = tet::pca_project(embedding->impl.rows);
        tet::write_file_atomic(path, tet::projection_csv(nodes, coords, assignment ? &assignment->impl : nullptr,
                                                         aligned ? &*aligned : nullptr));
    });
}

tet_status tet_pipeline_default_config(char** out) {
    return guarded([&] {
        require(out != nullptr, "output must not be null");
        *out = duplicate(tet::pipeline_config_to_json(tet::PipelineConfig{}).dump(2) + "\n");
    });
}

tet_status tet_pipeline_run(const char* config_json, char** report_json, char** table) {
    return guarded([&] {
        if (report_json) *report_json = nullptr;
        if (table) *table = nullptr;
        tet::Json json = tet::Json::object();
        if (config_json != nullptr && *config_json != '\0') {
            try {
                json = tet::Json::parse(config_json);
            } catch (const nlohmann::json::exception& e) {
                throw tet::Error(tet::ErrorKind::parse, std::string("config is not JSON: ") + e.what());
            }
        }
        const auto result = tet::run_pipeline(tet::pipeline_config_from_json(json));
        std::string rendered = result.evaluation ? tet::render_table(*result.evaluation) : std::string();
        std::unique_ptr<char, decltype(&std::free)> report(duplicate(result.report.dump(2) + "\n"), &std::free);
        if (table) *table = duplicate(rendered);
        if (report_json) *report_json = report.release();
    });
}

}  // extern "C"
