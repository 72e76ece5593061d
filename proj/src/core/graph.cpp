#include "tet/graph.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "tet/error.hpp"

namespace tet {

NodeTable NodeTable::numbered(std::size_t n) {
    NodeTable table;
    for (std::size_t i = 0; i < n; ++i) table.intern(std::to_string(i));
    return table;
}

NodeIndex NodeTable::intern(std::string_view name) {
    std::string key(name);
    if (auto it = index_.find(key); it != index_.end()) return it->second;
    const auto index = static_cast<NodeIndex>(names_.size());
    index_.emplace(key, index);
    names_.push_back(std::move(key));
    return index;
}

std::optional<NodeIndex> NodeTable::find(std::string_view name) const {
    if (auto it = index_.find(std::string(name)); it != index_.end()) return it->second;
    return std::nullopt;
}

NodeIndex NodeTable::at(std::string_view name) const {
    if (auto found = find(name)) return *found;
    throw Error(ErrorKind::unknown_node, "unknown node '" + std::string(name) + "'");
}

const std::string& NodeTable::name(NodeIndex index) const {
    if (index >= names_.size()) {
        throw Error(ErrorKind::unknown_node, "unknown node index " + std::to_string(index));
    }
    return names_[index];
}

std::uint64_t Snapshot::key(NodeIndex a, NodeIndex b) noexcept {
    if (a > b) std::swap(a, b);
    return (static_cast<std::uint64_t>(a) << 32) | b;
}

Snapshot::Snapshot(std::size_t node_count, std::span<const Edge> edges) : adjacency_(node_count) {
    edges_.reserve(edges.size());
    for (const Edge& e : edges) {
        if (e.u >= node_count || e.v >= node_count) {
            throw Error(ErrorKind::unknown_node, "edge endpoint out of range for snapshot of " +
                                                     std::to_string(node_count) + " nodes");
        }
        if (e.u == e.v) continue;
        edges_.push_back(e);
    }
    std::sort(edges_.begin(), edges_.end());
    edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
    edge_keys_.reserve(edges_.size());
    for (const Edge& e : edges_) {
        adjacency_[e.u].push_back(e.v);
        adjacency_[e.v].push_back(e.u);
        edge_keys_.insert(key(e.u, e.v));
    }
    for (auto& list : adjacency_) std::sort(list.begin(), list.end());
}

std::span<const NodeIndex> Snapshot::neighbors(NodeIndex v) const {
    if (v >= adjacency_.size()) throw Error(ErrorKind::unknown_node, "unknown node index " + std::to_string(v));
    return adjacency_[v];
}

bool Snapshot::has_edge(NodeIndex a, NodeIndex b) const {
    if (a == b) return false;
    return edge_keys_.contains(key(a, b));
}

TemporalGraph::TemporalGraph(NodeTable universe, std::vector<Snapshot> snapshots)
    : universe_(std::move(universe)), snapshots_(std::move(snapshots)) {
    if (snapshots_.size() < 2) {
        throw Error(ErrorKind::invalid_argument, "a temporal graph needs at least 2 snapshots, got " +
                                                     std::to_string(snapshots_.size()));
    }
    for (const Snapshot& s : snapshots_) {
        if (s.node_count() != universe_.size()) {
            throw Error(ErrorKind::invalid_argument, "snapshot node count does not match the node universe");
        }
    }
}

Egonet egonet(const Snapshot& snapshot, NodeIndex v) {
    const auto neighbors = snapshot.neighbors(v);
    Egonet ego;
    ego.root = v;
    ego.members.assign(neighbors.begin(), neighbors.end());
    ego.members.insert(std::lower_bound(ego.members.begin(), ego.members.end(), v), v);
    for (NodeIndex u : ego.members) {
        for (NodeIndex w : snapshot.neighbors(u)) {
            if (w > u && std::binary_search(ego.members.begin(), ego.members.end(), w)) {
                ego.edges.emplace_back(u, w);
            }
        }
    }
    std::sort(ego.edges.begin(), ego.edges.end());
    return ego;
}

PaddedEgonetPair::PaddedEgonetPair(NodeIndex root, std::vector<NodeIndex> union_members,
                                   std::vector<Edge> edges_before, std::vector<Edge> edges_after)
    : root_(root),
      members_(std::move(union_members)),
      edges_before_(std::move(edges_before)),
      edges_after_(std::move(edges_after)) {
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
    const auto root_pos = local_index(root_);
    if (!root_pos) throw Error(ErrorKind::invalid_argument, "padded pair root is not a member");
    root_local_ = *root_pos;

    const std::size_t m = members_.size();
    local_adjacency_.assign(m * m, 0);
    auto mark = [&](const std::vector<Edge>& edges, std::uint8_t bit) {
        for (const Edge& e : edges) {
            const auto a = local_index(e.u);
            const auto b = local_index(e.v);
            if (!a || !b) throw Error(ErrorKind::invalid_argument, "padded pair edge leaves the member set");
            local_adjacency_[*a * m + *b] |= bit;
            local_adjacency_[*b * m + *a] |= bit;
        }
    };
    mark(edges_before_, 1);
    mark(edges_after_, 2);
}

std::optional<std::size_t> PaddedEgonetPair::local_index(NodeIndex v) const {
    auto it = std::lower_bound(members_.begin(), members_.end(), v);
    if (it == members_.end() || *it != v) return std::nullopt;
    return static_cast<std::size_t>(it - members_.begin());
}

PaddedEgonetPair padded_pair(const Snapshot& before, const Snapshot& after, NodeIndex v) {
    if (before.node_count() != after.node_count()) {
        throw Error(ErrorKind::invalid_argument, "snapshots do not share a node universe");
    }
    Egonet ego_before = egonet(before, v);
    Egonet ego_after = egonet(after, v);
    std::vector<NodeIndex> members;
    members.reserve(ego_before.members.size() + ego_after.members.size());
    std::set_union(ego_before.members.begin(), ego_before.members.end(), ego_after.members.begin(),
                   ego_after.members.end(), std::back_inserter(members));
    return PaddedEgonetPair(v, std::move(members), std::move(ego_before.edges), std::move(ego_after.edges));
}

std::vector<Edge> induced_edges(const PaddedEgonetPair& pair, std::span<const NodeIndex> subset, Side side) {
    if (subset.empty()) throw Error(ErrorKind::invalid_argument, "subset must not be empty");
    std::vector<std::size_t> local;
    local.reserve(subset.size());
    for (NodeIndex v : subset) {
        const auto pos = pair.local_index(v);
        if (!pos) {
            throw Error(ErrorKind::invalid_argument,
                        "node index " + std::to_string(v) + " is not in the padded egonet");
        }
        local.push_back(*pos);
    }
    const std::uint8_t bit = side == Side::before ? 1 : 2;
    std::vector<Edge> out;
    for (std::size_t i = 0; i < local.size(); ++i) {
        for (std::size_t j = i + 1; j < local.size(); ++j) {
            if (pair.local_state(local[i], local[j]) & bit) out.emplace_back(subset[i], subset[j]);
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace tet
