#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "tet/catalog.hpp"
#include "tet/clustering.hpp"
#include "tet/embedder.hpp"
#include "tet/graph.hpp"
#include "tet/metrics.hpp"
#include "tet/synthgen.hpp"

namespace tet {

using Json = nlohmann::ordered_json;

/// Writes through a temporary sibling and renames it into place.
/// Content is gzip-compressed when the path ends in ".gz".
void write_file_atomic(const std::filesystem::path& path, std::string_view content);
/// Reads a whole file, transparently inflating ".gz".
std::string read_file(const std::filesystem::path& path);

/// Shortest decimal text that round-trips to the same double.
std::string format_double(double value);

/// `[{"id", "k", "rooted", "left", "right"}, ...]` with local edge lists.
Json catalog_to_json(const TransitionCatalog& catalog);

/// `{"nodes": [names...], "snapshots": [[[u, v], ...], ...]}` over internal indices.
Json graph_to_bundle(const TemporalGraph& graph);
TemporalGraph graph_from_bundle(const Json& bundle);

/// Node embeddings keyed by external name; the row order is the file order.
struct EmbeddingTable {
    std::vector<std::string> nodes;
    std::vector<Point> rows;
};

EmbeddingTable make_embedding_table(const TemporalGraph& graph, std::span<const NodeEmbedding> embeddings);
/// Header `node,c0,...,c{d-1}`.
std::string embedding_csv(const EmbeddingTable& table);
EmbeddingTable parse_embedding_csv(std::string_view text);
/// Header `node,step,c0,...`; step is the 0-based hop index t for (t, t+1).
std::string step_csv(const TemporalGraph& graph, const std::vector<std::vector<TransitionCountVector>>& steps);

struct LabelTable {
    std::vector<std::string> nodes;
    std::vector<NodeLabel> labels;

    /// Labels reordered to `nodes`; throws unknown_node for a missing name.
    [[nodiscard]] std::vector<NodeLabel> aligned_to(std::span<const std::string> order) const;
};

LabelTable make_label_table(const TemporalGraph& graph, std::span<const NodeLabel> labels);
/// Header `node,label`.
std::string labels_csv(const LabelTable& table);
LabelTable parse_labels_csv(std::string_view text);

struct AssignmentTable {
    std::vector<std::string> nodes;
    std::vector<int> cluster;  // kNoise for noise
    std::vector<NodeLabel> predicted;
};

/// Header `node,cluster,predicted`; cluster is an integer or `noise`.
std::string assignment_csv(const AssignmentTable& table);
AssignmentTable parse_assignment_csv(std::string_view text);

/// Header `node,x,y,cluster,predicted,truth`; missing columns render as `unknown`.
std::string projection_csv(std::span<const std::string> nodes, std::span<const std::array<double, 2>> coords,
                           const AssignmentTable* assignment, const std::vector<NodeLabel>* truth);

Json report_to_json(const EvalReport& report);

}  // namespace tet

namespace tet {

/// Generator config plus the RNG algorithm name and label counts.
Json synth_manifest(const SynthConfig& cfg);

}  // namespace tet
