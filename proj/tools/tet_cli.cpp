#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "tet/tet.h"

namespace {

using Json = nlohmann::ordered_json;

struct Failure {
    std::string kind;
    std::string detail;
};

void check(tet_status status) {
    if (status != TET_OK) throw Failure{tet_status_name(status), tet_last_error()};
}

std::string take(char* s) {
    std::string out = s ? s : "";
    tet_string_free(s);
    return out;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Failure{"io_error", "cannot open '" + path + "'"};
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spill(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw Failure{"io_error", "cannot write '" + path + "'"};
        out << text;
        if (!out) throw Failure{"io_error", "cannot write '" + path + "'"};
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) throw Failure{"io_error", "cannot rename onto '" + path + "'"};
}

template <typename T, void (*Free)(T*)>
struct Handle {
    T* ptr{nullptr};
    Handle() = default;
    Handle(const Handle&) = delete;
    Handle& operator=(const Handle&) = delete;
    ~Handle() { Free(ptr); }
    T** out() { return &ptr; }
    T* get() const { return ptr; }
};
using Catalog = Handle<tet_catalog, tet_catalog_free>;
using Graph = Handle<tet_graph, tet_graph_free>;
using Labels = Handle<tet_labels, tet_labels_free>;
using Embedding = Handle<tet_embedding, tet_embedding_free>;
using Assignment = Handle<tet_assignment, tet_assignment_free>;
using Report = Handle<tet_report, tet_report_free>;

std::vector<std::string> split_commas(const std::string& text) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ',')) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

struct BinningFlags {
    std::string mode{"equal-width"};
    std::size_t bins{0};
    double width{0.0};
    std::vector<double> boundaries;
    std::optional<double> range_min;
    std::optional<double> range_max;
    std::size_t min_multiplicity{1};

    void attach(CLI::App* app) {
        app->add_option("--bins", bins, "Equal-width bin count");
        app->add_option("--width", width, "Fixed bin width (selects fixed-width binning)");
        app->add_option("--boundaries", boundaries, "Explicit bin boundaries b0 < ... < bB")->delimiter(',');
        app->add_option("--range-min", range_min, "Start of the time range");
        app->add_option("--range-max", range_max, "End of the time range");
        app->add_option("--min-multiplicity", min_multiplicity, "Keep an edge only if seen this often in a bin");
    }

    void resolve() {
        if (!boundaries.empty()) mode = "explicit";
        else if (width > 0.0) mode = "fixed-width";
    }

    tet_binning to_c() const {
        tet_binning b;
        tet_binning_default(&b);
        b.mode = mode.c_str();
        b.bins = bins;
        b.width = width;
        b.boundaries = boundaries.data();
        b.boundary_count = boundaries.size();
        b.has_range_min = range_min.has_value();
        b.range_min = range_min.value_or(0.0);
        b.has_range_max = range_max.has_value();
        b.range_max = range_max.value_or(0.0);
        b.min_multiplicity = min_multiplicity;
        return b;
    }
};

struct ClusterFlags {
    std::optional<double> eps;
    std::string eps_rule{"max-kdist"};
    std::size_t min_pts{4};
    bool standardize{false};
    std::string rule{"small-clusters"};
    double theta{0.5};

    void attach(CLI::App* app) {
        app->add_option("--eps", eps, "DBSCAN radius (default: chosen by --eps-rule)");
        app->add_option("--eps-rule", eps_rule, "max-kdist or knee")->check(CLI::IsMember({"max-kdist", "knee"}));
        app->add_option("--min-pts", min_pts, "DBSCAN core threshold, counting the point itself");
        app->add_flag("--standardize", standardize, "z-score each dimension first");
        app->add_option("--rule", rule, "noise-only or small-clusters")
            ->check(CLI::IsMember({"noise-only", "small-clusters"}));
        app->add_option("--theta", theta, "small-clusters size fraction");
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Temporal egonet subgraph transitions: embedding and anomaly detection"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(tet_version()));

    // catalog
    auto* catalog_cmd = app.add_subcommand("catalog", "Write the transition catalog as JSON");
    int max_nodes = 3;
    std::string exclusion = "rooted-aware";
    std::string out_path;
    catalog_cmd->add_option("--max-subgraph-nodes", max_nodes, "Largest transition size (1..5)");
    catalog_cmd->add_option("--exclusion-mode", exclusion, "rooted-aware or literal-unrooted");
    catalog_cmd->add_option("-o,--out", out_path, "Output path (default stdout)");

    // synth
    auto* synth_cmd = app.add_subcommand("synth", "Generate the synthetic temporal graph");
    tet_synth_config synth;
    tet_synth_config_default(&synth);
    bool cross = false;
    bool shuffle = false;
    std::string out_dir = ".";
    synth_cmd->add_option("--n", synth.n, "Node count");
    synth_cmd->add_option("--p", synth.p, "Edge probability between authentic nodes");
    synth_cmd->add_option("--a", synth.a, "Anomalous fraction");
    synth_cmd->add_option("--snapshots", synth.snapshots, "Snapshot count");
    synth_cmd->add_option("--seed", synth.seed, "RNG seed");
    synth_cmd->add_flag("--cross-edges", cross, "Also draw anomalous-authentic edges");
    synth_cmd->add_flag("--shuffle-names", shuffle, "Permute external node names");
    synth_cmd->add_option("--out-dir", out_dir, "Directory for edges.txt, labels.csv, manifest.json, snapshots.json");

    // ingest
    auto* ingest_cmd = app.add_subcommand("ingest", "Discretize a timestamped edge list into a snapshot bundle");
    std::string edges_in;
    BinningFlags binning;
    ingest_cmd->add_option("edges", edges_in, "Edge list: `u v t` per line (.gz accepted)")->required();
    binning.attach(ingest_cmd);
    ingest_cmd->add_option("-o,--out", out_path, "Snapshot bundle path")->required();

    // embed
    auto* embed_cmd = app.add_subcommand("embed", "Embed every node of a snapshot bundle");
    std::string graph_in;
    std::string aggregation = "mean";
    std::string nodes_arg;
    std::string catalog_out;
    std::string steps_out;
    unsigned threads = 0;
    embed_cmd->add_option("graph", graph_in, "Snapshot bundle (JSON)")->required();
    embed_cmd->add_option("--max-subgraph-nodes", max_nodes, "Largest transition size (1..5)");
    embed_cmd->add_option("--exclusion-mode", exclusion, "rooted-aware or literal-unrooted");
    embed_cmd->add_option("--aggregation", aggregation, "mean, sum, min or max");
    embed_cmd->add_option("--nodes", nodes_arg, "Comma-separated node names (default all)");
    embed_cmd->add_option("--threads", threads, "Worker threads (0: TET_THREADS or hardware)");
    embed_cmd->add_option("-o,--out", out_path, "Embedding CSV")->required();
    embed_cmd->add_option("--catalog-out", catalog_out, "Catalog sidecar (default <out>.catalog.json)");
    embed_cmd->add_option("--steps-out", steps_out, "Also write per-step counts here");

    // cluster
    auto* cluster_cmd = app.add_subcommand("cluster", "DBSCAN over an embedding CSV");
    std::string embedding_in;
    ClusterFlags cluster;
    cluster_cmd->add_option("embedding", embedding_in, "Embedding CSV")->required();
    cluster.attach(cluster_cmd);
    cluster_cmd->add_option("-o,--out", out_path, "Assignment CSV")->required();

    // eval
    auto* eval_cmd = app.add_subcommand("eval", "Score an assignment against ground-truth labels");
    std::string assignment_in;
    std::string labels_in;
    eval_cmd->add_option("assignment", assignment_in, "Assignment CSV")->required();
    eval_cmd->add_option("labels", labels_in, "Labels CSV")->required();
    eval_cmd->add_option("-o,--out", out_path, "Report JSON (default: not written)");

    // project
    auto* project_cmd = app.add_subcommand("project", "2-D PCA projection for plotting");
    project_cmd->add_option("embedding", embedding_in, "Embedding CSV")->required();
    project_cmd->add_option("--assignment", assignment_in, "Assignment CSV to join");
    project_cmd->add_option("--labels", labels_in, "Labels CSV to join");
    project_cmd->add_option("-o,--out", out_path, "Projection CSV")->required();

    // pipeline
    auto* pipeline_cmd = app.add_subcommand("pipeline", "synth|ingest, embed, cluster, eval and project in one run");
    std::string config_path;
    bool print_config = false;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> n;
    std::optional<double> p;
    std::optional<double> a;
    std::optional<std::size_t> snapshots;
    std::optional<std::string> source;
    std::optional<std::string> pipe_edges;
    std::optional<std::string> pipe_labels;
    std::optional<int> pipe_max_nodes;
    std::optional<std::string> pipe_exclusion;
    std::optional<std::string> pipe_aggregation;
    std::optional<double> pipe_eps;
    std::optional<std::string> pipe_eps_rule;
    std::optional<std::size_t> pipe_min_pts;
    std::optional<std::string> pipe_rule;
    std::optional<double> pipe_theta;
    std::optional<unsigned> pipe_threads;
    std::optional<std::string> pipe_out;
    bool pipe_standardize = false;
    bool pipe_cross = false;
    bool pipe_shuffle = false;
    bool pipe_no_spectral = false;
    bool pipe_dump_steps = false;
    BinningFlags pipe_binning;
    pipeline_cmd->add_option("--config", config_path, "JSON config; flags below override it");
    pipeline_cmd->add_flag("--print-config", print_config, "Print the default config and exit");
    pipeline_cmd->add_option("--source", source, "synth or ingest")->check(CLI::IsMember({"synth", "ingest"}));
    pipeline_cmd->add_option("--seed", seed, "Generator seed");
    pipeline_cmd->add_option("--n", n, "Node count");
    pipeline_cmd->add_option("--p", p, "Edge probability");
    pipeline_cmd->add_option("--a", a, "Anomalous fraction");
    pipeline_cmd->add_option("--snapshots", snapshots, "Snapshot count");
    pipeline_cmd->add_flag("--cross-edges", pipe_cross, "Draw anomalous-authentic edges");
    pipeline_cmd->add_flag("--shuffle-names", pipe_shuffle, "Permute external node names");
    pipeline_cmd->add_option("--edges", pipe_edges, "Edge list for the ingest source");
    pipeline_cmd->add_option("--labels", pipe_labels, "Labels CSV for the ingest source");
    pipe_binning.attach(pipeline_cmd);
    pipeline_cmd->add_option("--max-subgraph-nodes", pipe_max_nodes, "Largest transition size");
    pipeline_cmd->add_option("--exclusion-mode", pipe_exclusion, "rooted-aware or literal-unrooted");
    pipeline_cmd->add_option("--aggregation", pipe_aggregation, "mean, sum, min or max");
    pipeline_cmd->add_flag("--dump-steps", pipe_dump_steps, "Also write steps.csv");
    pipeline_cmd->add_option("--eps", pipe_eps, "DBSCAN radius");
    pipeline_cmd->add_option("--eps-rule", pipe_eps_rule, "max-kdist or knee");
    pipeline_cmd->add_option("--min-pts", pipe_min_pts, "DBSCAN core threshold");
    pipeline_cmd->add_flag("--standardize", pipe_standardize, "z-score embeddings first");
    pipeline_cmd->add_option("--rule", pipe_rule, "noise-only or small-clusters");
    pipeline_cmd->add_option("--theta", pipe_theta, "small-clusters size fraction");
    pipeline_cmd->add_flag("--no-spectral", pipe_no_spectral, "Skip the spectral baseline");
    pipeline_cmd->add_option("--threads", pipe_threads, "Embedding worker threads");
    pipeline_cmd->add_option("--out-dir", pipe_out, "Artifact directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error[usage]: " << e.what() << "\n";
        return 2;
    }

    try {
        if (catalog_cmd->parsed()) {
            Catalog cat;
            check(tet_catalog_build(max_nodes, exclusion.c_str(), cat.out()));
            char* json = nullptr;
            check(tet_catalog_to_json(cat.get(), &json));
            spill(out_path, take(json));
            std::cerr << "catalog: " << tet_catalog_size(cat.get()) << " entries (" << exclusion << ", N=" << max_nodes
                      << ")\n";
        } else if (synth_cmd->parsed()) {
            synth.cross_edges = cross ? 1 : 0;
            synth.shuffle_names = shuffle ? 1 : 0;
            Graph graph;
            Labels labels;
            check(tet_synth_generate(&synth, graph.out(), labels.out()));
            const std::string dir = out_dir.empty() ? "." : out_dir;
            check(tet_synth_write(&synth, graph.get(), labels.get(), (dir + "/edges.txt").c_str(),
                                  (dir + "/labels.csv").c_str(), (dir + "/manifest.json").c_str()));
            check(tet_graph_write_bundle(graph.get(), (dir + "/snapshots.json").c_str()));
            std::cerr << "synth: " << tet_graph_node_count(graph.get()) << " nodes, "
                      << tet_graph_snapshot_count(graph.get()) << " snapshots -> " << dir << "\n";
        } else if (ingest_cmd->parsed()) {
            binning.resolve();
            const auto spec = binning.to_c();
            Graph graph;
            std::size_t loops = 0;
            check(tet_graph_from_edge_list(edges_in.c_str(), &spec, graph.out(), &loops));
            check(tet_graph_write_bundle(graph.get(), out_path.c_str()));
            std::cerr << "ingest: " << tet_graph_node_count(graph.get()) << " nodes, "
                      << tet_graph_snapshot_count(graph.get()) << " snapshots, " << loops << " self-loops dropped\n";
        } else if (embed_cmd->parsed()) {
            Graph graph;
            check(tet_graph_read_bundle(graph_in.c_str(), graph.out()));
            Catalog cat;
            check(tet_catalog_build(max_nodes, exclusion.c_str(), cat.out()));
            const auto names = split_commas(nodes_arg);
            std::vector<const char*> ptrs;
            for (const auto& s : names) ptrs.push_back(s.c_str());
            Embedding emb;
            check(tet_embed(graph.get(), cat.get(), aggregation.c_str(), ptrs.empty() ? nullptr : ptrs.data(),
                            ptrs.size(), threads, emb.out()));
            check(tet_embedding_write_csv(emb.get(), out_path.c_str()));
            char* json = nullptr;
            check(tet_catalog_to_json(cat.get(), &json));
            spill(catalog_out.empty() ? out_path + ".catalog.json" : catalog_out, take(json));
            if (!steps_out.empty()) {
                check(tet_embed_steps_write_csv(graph.get(), cat.get(), ptrs.empty() ? nullptr : ptrs.data(),
                                                ptrs.size(), threads, steps_out.c_str()));
            }
            std::cerr << "embed: " << tet_embedding_rows(emb.get()) << " nodes x " << tet_embedding_dims(emb.get())
                      << " classes\n";
        } else if (cluster_cmd->parsed()) {
            Embedding emb;
            check(tet_embedding_read_csv(embedding_in.c_str(), emb.out()));
            tet_cluster_params params;
            tet_cluster_params_default(&params);
            if (cluster.eps) {
                if (!(*cluster.eps > 0.0)) throw Failure{"invalid_argument", "--eps must be positive"};
                params.eps = *cluster.eps;
            }
            params.eps_rule = cluster.eps_rule.c_str();
            params.min_pts = cluster.min_pts;
            params.standardize = cluster.standardize ? 1 : 0;
            params.rule = cluster.rule.c_str();
            params.theta = cluster.theta;
            Assignment asg;
            check(tet_cluster(emb.get(), &params, asg.out()));
            check(tet_assignment_write_csv(asg.get(), out_path.c_str()));
            std::cerr << "cluster: eps=" << tet_assignment_eps(asg.get()) << ", "
                      << tet_assignment_cluster_count(asg.get()) << " clusters\n";
        } else if (eval_cmd->parsed()) {
            Assignment asg;
            check(tet_assignment_read_csv(assignment_in.c_str(), asg.out()));
            Labels labels;
            check(tet_labels_read_csv(labels_in.c_str(), labels.out()));
            const Json config{{"assignment", assignment_in}, {"labels", labels_in}};
            Report report;
            check(tet_evaluate(asg.get(), labels.get(), config.dump().c_str(), report.out()));
            char* table = nullptr;
            check(tet_report_table(report.get(), &table));
            std::cout << take(table);
            if (!out_path.empty()) {
                char* json = nullptr;
                check(tet_report_to_json(report.get(), &json));
                spill(out_path, take(json) + "\n");
            }
        } else if (project_cmd->parsed()) {
            Embedding emb;
            check(tet_embedding_read_csv(embedding_in.c_str(), emb.out()));
            Assignment asg;
            if (!assignment_in.empty()) check(tet_assignment_read_csv(assignment_in.c_str(), asg.out()));
            Labels labels;
            if (!labels_in.empty()) check(tet_labels_read_csv(labels_in.c_str(), labels.out()));
            check(tet_project_write_csv(emb.get(), asg.get(), labels.get(), out_path.c_str()));
        } else if (pipeline_cmd->parsed()) {
            if (print_config) {
                char* defaults = nullptr;
                check(tet_pipeline_default_config(&defaults));
                std::cout << Json::parse(take(defaults)).dump(2) << "\n";
                return 0;
            }
            Json config = Json::object();
            if (!config_path.empty()) {
                try {
                    config = Json::parse(slurp(config_path));
                } catch (const nlohmann::json::exception& e) {
                    throw Failure{"parse_error", config_path + ": " + e.what()};
                }
            }
            auto set = [&](std::initializer_list<const char*> path, const Json& value) {
                Json* node = &config;
                for (auto it = path.begin(); it != path.end(); ++it) {
                    if (std::next(it) == path.end()) (*node)[*it] = value;
                    else node = &(*node)[*it];
                }
            };
            if (source) set({"source"}, *source);
            if (seed) set({"synth", "seed"}, *seed);
            if (n) set({"synth", "n"}, *n);
            if (p) set({"synth", "p"}, *p);
            if (a) set({"synth", "a"}, *a);
            if (snapshots) set({"synth", "snapshots"}, *snapshots);
            if (pipe_cross) set({"synth", "cross_edges"}, true);
            if (pipe_shuffle) set({"synth", "shuffle_names"}, true);
            if (pipe_edges) {
                set({"ingest", "edges"}, *pipe_edges);
                if (!source) set({"source"}, "ingest");
            }
            if (pipe_labels) set({"ingest", "labels"}, *pipe_labels);
            pipe_binning.resolve();
            if (pipe_binning.bins > 0 || pipe_binning.width > 0.0 || !pipe_binning.boundaries.empty()) {
                set({"ingest", "binning", "mode"}, pipe_binning.mode);
                set({"ingest", "binning", "bins"}, pipe_binning.bins);
                set({"ingest", "binning", "width"}, pipe_binning.width);
                set({"ingest", "binning", "boundaries"}, pipe_binning.boundaries);
            }
            if (pipe_binning.range_min) set({"ingest", "binning", "range_min"}, *pipe_binning.range_min);
            if (pipe_binning.range_max) set({"ingest", "binning", "range_max"}, *pipe_binning.range_max);
            if (pipe_binning.min_multiplicity != 1) {
                set({"ingest", "binning", "min_multiplicity"}, pipe_binning.min_multiplicity);
            }
            if (pipe_max_nodes) set({"catalog", "max_subgraph_nodes"}, *pipe_max_nodes);
            if (pipe_exclusion) set({"catalog", "exclusion_mode"}, *pipe_exclusion);
            if (pipe_aggregation) set({"embed", "aggregation"}, *pipe_aggregation);
            if (pipe_dump_steps) set({"embed", "dump_steps"}, true);
            if (pipe_eps) set({"dbscan", "eps"}, *pipe_eps);
            if (pipe_eps_rule) set({"dbscan", "eps_rule"}, *pipe_eps_rule);
            if (pipe_min_pts) set({"dbscan", "min_pts"}, *pipe_min_pts);
            if (pipe_standardize) set({"dbscan", "standardize"}, true);
            if (pipe_rule) set({"rule", "kind"}, *pipe_rule);
            if (pipe_theta) set({"rule", "theta"}, *pipe_theta);
            if (pipe_no_spectral) set({"spectral_baseline", "enabled"}, false);
            if (pipe_threads) set({"threads"}, *pipe_threads);
            if (pipe_out) set({"output_dir"}, *pipe_out);

            char* report_json = nullptr;
            char* table = nullptr;
            check(tet_pipeline_run(config.dump().c_str(), &report_json, &table));
            const auto report = Json::parse(take(report_json));
            std::cout << "effective config:\n" << report["config"].dump(2) << "\n";
            std::cout << "eps " << report["effective"]["eps"].dump() << " (" << report["effective"]["eps_source"].get<std::string>()
                      << "), catalog size " << report["effective"]["catalog_size"].dump() << "\n";
            const std::string text = take(table);
            if (!text.empty()) std::cout << "\n" << text;
            const auto dir = report["config"]["output_dir"].get<std::string>();
            if (!dir.empty()) std::cout << "report: " << dir << "/report.json\n";
        }
    } catch (const Failure& f) {
        std::cerr << "error[" << f.kind << "]: " << f.detail << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error[internal]: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
