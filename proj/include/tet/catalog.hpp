#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

namespace tet {

/// Hard cap on transition size; the catalog grows super-exponentially in k.
inline constexpr int kMaxSubgraphNodes = 5;

/// Edge set on k local nodes. Bit i is the i-th pair in lexicographic order:
/// (0,1), (0,2), ..., (0,k-1), (1,2), ...
using EdgeMask = std::uint16_t;

constexpr int pair_count(int k) noexcept { return k * (k - 1) / 2; }

/// Bit position of local pair (i, j), i != j, on k nodes.
int edge_bit(int i, int j, int k);

/// When the two sides of a pair count as "the same graph" and the pair is dropped.
enum class ExclusionMode {
    rooted_aware,      // rooted pairs compare under root-preserving isomorphism
    literal_unrooted,  // every pair compares as abstract graphs
};

std::string_view to_string(ExclusionMode mode) noexcept;
ExclusionMode parse_exclusion_mode(std::string_view text);

/// A (before, after) graph pair on k local nodes. When rooted, local node 0 is the ego.
struct LabeledTransition {
    int k{};
    bool rooted{};
    EdgeMask left{};
    EdgeMask right{};

    friend auto operator<=>(const LabeledTransition&, const LabeledTransition&) = default;
};

/// Lexicographically minimal (left, right) over all admissible relabelings:
/// every permutation when unrooted, those fixing node 0 when rooted.
LabeledTransition canonical_code(const LabeledTransition& t);

/// Minimal image of a single graph under the admissible relabelings.
EdgeMask canonical_graph(int k, bool rooted, EdgeMask mask);

/// True when the pair's sides are isomorphic under `mode`.
bool is_excluded(const LabeledTransition& t, ExclusionMode mode);

struct TransitionClass {
    std::size_t id{};
    LabeledTransition canonical;
};

/// Every non-excluded transition class on at most n_max nodes, rooted and
/// unrooted, ordered by (k, rooted, left, right). Ids are positions.
class TransitionCatalog {
  public:
    static TransitionCatalog build(int n_max, ExclusionMode mode);

    [[nodiscard]] int n_max() const noexcept { return n_max_; }
    [[nodiscard]] ExclusionMode mode() const noexcept { return mode_; }
    [[nodiscard]] std::size_t size() const noexcept { return classes_.size(); }
    [[nodiscard]] const std::vector<TransitionClass>& classes() const noexcept { return classes_; }
    [[nodiscard]] const TransitionClass& at(std::size_t id) const { return classes_.at(id); }

    /// Class id of `t`, or nullopt when the pair is excluded. Throws when k > n_max.
    [[nodiscard]] std::optional<std::size_t> lookup(const LabeledTransition& t) const;

    /// Unchecked lookup on validated local masks; -1 when excluded.
    [[nodiscard]] std::int32_t lookup_unchecked(int k, bool rooted, EdgeMask left, EdgeMask right) const noexcept {
        const auto& table = tables_[static_cast<std::size_t>(k)][rooted ? 1 : 0];
        return table[(static_cast<std::size_t>(left) << pair_count(k)) | right];
    }

    /// Id of the class with left and right swapped.
    [[nodiscard]] std::size_t reversed(std::size_t id) const;

  private:
    TransitionCatalog(int n_max, ExclusionMode mode) : n_max_(n_max), mode_(mode) {}

    int n_max_;
    ExclusionMode mode_;
    std::vector<TransitionClass> classes_;
    // tables_[k][rooted][(left << C(k,2)) | right] -> class id or -1
    std::array<std::array<std::vector<std::int32_t>, 2>, kMaxSubgraphNodes + 1> tables_;
};

inline TransitionCatalog build_catalog(int n_max, ExclusionMode mode) { return TransitionCatalog::build(n_max, mode); }

/// Converts a local edge list to a mask; edges must have distinct endpoints below k.
EdgeMask mask_from_edges(int k, const std::vector<std::pair<int, int>>& edges);
/// Lexicographically sorted local edge list of a mask.
std::vector<std::pair<int, int>> edges_from_mask(int k, EdgeMask mask);

}  // namespace tet
