#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "tet/graph.hpp"

namespace tet {

enum class NodeLabel { normal, anomaly };

std::string_view to_string(NodeLabel label) noexcept;
NodeLabel parse_label(std::string_view text);

/// Name of the generator algorithm, recorded in manifests.
inline constexpr std::string_view kSynthRngName = "mt19937_64/u53-threshold";

struct SynthConfig {
    std::size_t n{500};
    double p{0.0025};
    double a{0.05};
    std::size_t snapshots{5};
    std::uint64_t seed{0};
    bool cross_edges{false};
    /// Permute external names so anomalies are not the highest-numbered nodes.
    bool shuffle_names{false};
};

struct SynthDataset {
    TemporalGraph graph;
    std::vector<NodeLabel> labels;  // by internal index
};

std::size_t anomalous_count(const SynthConfig& cfg);

/// Authentic pairs draw Erdos-Renyi edges independently per snapshot. The
/// last floor(a*n) internal indices are anomalous: an empty subgraph at even
/// (0-based) snapshots, a clique at odd ones. Pairs are drawn in
/// lexicographic order, one 64-bit draw per Bernoulli trial, edge iff
/// (draw >> 11) * 2^-53 < p.
SynthDataset generate(const SynthConfig& cfg);

}  // namespace tet
