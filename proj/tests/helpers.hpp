#pragma once

#include <random>
#include <vector>

#include "tet/graph.hpp"

namespace testing_helpers {

inline tet::Snapshot random_snapshot(std::size_t n, double p, std::mt19937_64& rng) {
    std::bernoulli_distribution coin(p);
    std::vector<tet::Edge> edges;
    for (tet::NodeIndex u = 0; u < n; ++u) {
        for (tet::NodeIndex v = u + 1; v < n; ++v) {
            if (coin(rng)) edges.emplace_back(u, v);
        }
    }
    return tet::Snapshot(n, edges);
}

inline tet::TemporalGraph random_temporal(std::size_t n, std::size_t snapshots, double p, std::mt19937_64& rng) {
    std::vector<tet::Snapshot> list;
    for (std::size_t t = 0; t < snapshots; ++t) list.push_back(random_snapshot(n, p, rng));
    return tet::TemporalGraph(tet::NodeTable::numbered(n), std::move(list));
}

/// Same graph with node i renamed to perm[i] (names follow their nodes).
inline tet::TemporalGraph permuted(const tet::TemporalGraph& g, const std::vector<tet::NodeIndex>& perm) {
    std::vector<std::string> names(g.node_count());
    for (std::size_t i = 0; i < perm.size(); ++i) names[perm[i]] = g.universe().name(static_cast<tet::NodeIndex>(i));
    tet::NodeTable table;
    for (const auto& n : names) table.intern(n);
    std::vector<tet::Snapshot> list;
    for (const auto& s : g.snapshots()) {
        std::vector<tet::Edge> edges;
        for (const auto& e : s.edges()) edges.emplace_back(perm[e.u], perm[e.v]);
        list.emplace_back(g.node_count(), edges);
    }
    return tet::TemporalGraph(std::move(table), std::move(list));
}

}  // namespace testing_helpers
