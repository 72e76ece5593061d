#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace tet {

using NodeIndex = std::uint32_t;

/// Undirected edge, always stored with u < v.
struct Edge {
    NodeIndex u{};
    NodeIndex v{};

    Edge() = default;
    Edge(NodeIndex a, NodeIndex b) : u(a < b ? a : b), v(a < b ? b : a) {}

    friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Bidirectional map between external node names and dense indices 0..size-1.
class NodeTable {
  public:
    NodeTable() = default;

    /// Table with names "0", "1", ..., "n-1".
    static NodeTable numbered(std::size_t n);

    /// Returns the index of `name`, inserting it at the end if unseen.
    NodeIndex intern(std::string_view name);

    [[nodiscard]] std::optional<NodeIndex> find(std::string_view name) const;
    /// Throws ErrorKind::unknown_node when absent.
    [[nodiscard]] NodeIndex at(std::string_view name) const;
    [[nodiscard]] const std::string& name(NodeIndex index) const;
    [[nodiscard]] std::size_t size() const noexcept { return names_.size(); }
    [[nodiscard]] const std::vector<std::string>& names() const noexcept { return names_; }

    friend bool operator==(const NodeTable& a, const NodeTable& b) { return a.names_ == b.names_; }

  private:
    std::vector<std::string> names_;
    std::unordered_map<std::string, NodeIndex> index_;
};

/// Undirected simple graph over nodes 0..node_count-1.
///
/// Self-loops are dropped and parallel edges collapse on construction.
/// Neighbor lists are sorted; edge membership is a hash lookup.
class Snapshot {
  public:
    Snapshot() = default;
    Snapshot(std::size_t node_count, std::span<const Edge> edges);

    [[nodiscard]] std::size_t node_count() const noexcept { return adjacency_.size(); }
    [[nodiscard]] std::size_t edge_count() const noexcept { return edges_.size(); }
    [[nodiscard]] std::span<const NodeIndex> neighbors(NodeIndex v) const;
    [[nodiscard]] bool has_edge(NodeIndex a, NodeIndex b) const;
    /// Sorted, unique.
    [[nodiscard]] const std::vector<Edge>& edges() const noexcept { return edges_; }

    friend bool operator==(const Snapshot& a, const Snapshot& b) {
        return a.node_count() == b.node_count() && a.edges_ == b.edges_;
    }

  private:
    static std::uint64_t key(NodeIndex a, NodeIndex b) noexcept;

    std::vector<std::vector<NodeIndex>> adjacency_;
    std::vector<Edge> edges_;
    std::unordered_set<std::uint64_t> edge_keys_;
};

/// Ordered snapshots G_1..G_T over one shared node universe, T >= 2.
class TemporalGraph {
  public:
    TemporalGraph(NodeTable universe, std::vector<Snapshot> snapshots);

    [[nodiscard]] const NodeTable& universe() const noexcept { return universe_; }
    [[nodiscard]] std::size_t node_count() const noexcept { return universe_.size(); }
    [[nodiscard]] std::size_t snapshot_count() const noexcept { return snapshots_.size(); }
    [[nodiscard]] const Snapshot& snapshot(std::size_t t) const { return snapshots_.at(t); }
    [[nodiscard]] const std::vector<Snapshot>& snapshots() const noexcept { return snapshots_; }

    friend bool operator==(const TemporalGraph&, const TemporalGraph&) = default;

  private:
    NodeTable universe_;
    std::vector<Snapshot> snapshots_;
};

/// Induced subgraph on the closed neighborhood {root} + N(root).
struct Egonet {
    NodeIndex root{};
    std::vector<NodeIndex> members;  // sorted
    std::vector<Edge> edges;         // sorted
};

Egonet egonet(const Snapshot& snapshot, NodeIndex v);

enum class Side { before, after };

/// The egonets of one node at t and t+1, both placed on the union of their
/// member sets. Nodes present on only one side are isolated on the other.
class PaddedEgonetPair {
  public:
    PaddedEgonetPair(NodeIndex root, std::vector<NodeIndex> union_members, std::vector<Edge> edges_before,
                     std::vector<Edge> edges_after);

    [[nodiscard]] NodeIndex root() const noexcept { return root_; }
    [[nodiscard]] const std::vector<NodeIndex>& union_members() const noexcept { return members_; }
    [[nodiscard]] const std::vector<Edge>& edges(Side side) const noexcept {
        return side == Side::before ? edges_before_ : edges_after_;
    }
    [[nodiscard]] std::size_t size() const noexcept { return members_.size(); }

    /// Position of the root inside union_members().
    [[nodiscard]] std::size_t root_local() const noexcept { return root_local_; }
    [[nodiscard]] std::optional<std::size_t> local_index(NodeIndex v) const;

    /// Edge state between two local positions: bit 0 = before, bit 1 = after.
    [[nodiscard]] std::uint8_t local_state(std::size_t i, std::size_t j) const noexcept {
        return local_adjacency_[i * members_.size() + j];
    }

  private:
    NodeIndex root_;
    std::vector<NodeIndex> members_;
    std::vector<Edge> edges_before_;
    std::vector<Edge> edges_after_;
    std::size_t root_local_{};
    std::vector<std::uint8_t> local_adjacency_;
};

PaddedEgonetPair padded_pair(const Snapshot& before, const Snapshot& after, NodeIndex v);

/// Edges of one side of `pair` with both endpoints in `subset`.
std::vector<Edge> induced_edges(const PaddedEgonetPair& pair, std::span<const NodeIndex> subset, Side side);

}  // namespace tet
