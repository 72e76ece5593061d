#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "tet/catalog.hpp"
#include "tet/graph.hpp"

namespace tet {

enum class AggregationKind { mean, sum, min, max };

std::string_view to_string(AggregationKind kind) noexcept;
AggregationKind parse_aggregation(std::string_view text);

/// Transition counts of one node over one hop (t, t+1); length = catalog size.
struct TransitionCountVector {
    NodeIndex node{};
    std::size_t step{};
    std::vector<std::uint64_t> counts;
};

struct NodeEmbedding {
    NodeIndex node{};
    AggregationKind aggregation{AggregationKind::mean};
    std::vector<double> values;
};

/// Classifies every node subset S of the padded pair with 2 <= |S| <= n_max
/// by its induced (before, after) edges and counts one hit per non-excluded
/// class. Subsets containing the root are rooted with the root at local 0.
TransitionCountVector count_step_vector(const PaddedEgonetPair& pair, const TransitionCatalog& catalog);

/// Element-wise reduction of the step vectors of a single node.
NodeEmbedding aggregate(std::span<const TransitionCountVector> steps, AggregationKind kind);

/// Worker count from TET_THREADS, falling back to the hardware concurrency.
unsigned default_thread_count();

struct EmbedOptions {
    AggregationKind aggregation{AggregationKind::mean};
    /// Restrict to these nodes; output is still ordered by node index.
    std::optional<std::vector<NodeIndex>> nodes;
    /// 0 selects default_thread_count().
    unsigned threads{0};
};

/// Per-node step vectors for every consecutive snapshot pair, ordered by node index.
std::vector<std::vector<TransitionCountVector>> embed_steps(const TemporalGraph& graph,
                                                            const TransitionCatalog& catalog,
                                                            const EmbedOptions& options = {});

std::vector<NodeEmbedding> embed_all(const TemporalGraph& graph, const TransitionCatalog& catalog,
                                     const EmbedOptions& options = {});

}  // namespace tet
