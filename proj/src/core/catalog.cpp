#include "tet/catalog.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "tet/error.hpp"

namespace tet {
namespace {

/// Edge-mask images of every admissible relabeling for one (k, rooted).
struct RelabelGroup {
    int k{};
    // images[p][mask] is the mask after applying permutation p
    std::vector<std::vector<EdgeMask>> images;
};

RelabelGroup make_group(int k, bool rooted) {
    RelabelGroup group;
    group.k = k;
    const int pairs = pair_count(k);
    const std::size_t masks = std::size_t{1} << pairs;

    std::vector<int> perm(static_cast<std::size_t>(k));
    std::iota(perm.begin(), perm.end(), 0);
    do {
        if (rooted && k > 0 && perm[0] != 0) continue;
        // bit b maps to bit_image[b]
        std::vector<int> bit_image(static_cast<std::size_t>(pairs));
        for (int i = 0; i < k; ++i) {
            for (int j = i + 1; j < k; ++j) {
                bit_image[static_cast<std::size_t>(edge_bit(i, j, k))] =
                    edge_bit(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)], k);
            }
        }
        std::vector<EdgeMask> image(masks);
        for (std::size_t mask = 0; mask < masks; ++mask) {
            EdgeMask out = 0;
            for (int b = 0; b < pairs; ++b) {
                if (mask & (std::size_t{1} << b)) out |= static_cast<EdgeMask>(1u << bit_image[static_cast<std::size_t>(b)]);
            }
            image[mask] = out;
        }
        group.images.push_back(std::move(image));
    } while (std::next_permutation(perm.begin(), perm.end()));
    return group;
}

const RelabelGroup& group_for(int k, bool rooted) {
    static const auto groups = [] {
        std::array<std::array<RelabelGroup, 2>, kMaxSubgraphNodes + 1> all;
        for (int k = 1; k <= kMaxSubgraphNodes; ++k) {
            all[static_cast<std::size_t>(k)][0] = make_group(k, false);
            all[static_cast<std::size_t>(k)][1] = make_group(k, true);
        }
        return all;
    }();
    return groups[static_cast<std::size_t>(k)][rooted ? 1 : 0];
}

void validate(const LabeledTransition& t, int n_max) {
    if (t.k < 1 || t.k > n_max) {
        throw Error(ErrorKind::out_of_range,
                    "transition size " + std::to_string(t.k) + " outside 1.." + std::to_string(n_max));
    }
    const unsigned limit = 1u << pair_count(t.k);
    if (t.left >= limit || t.right >= limit) {
        throw Error(ErrorKind::invalid_argument,
                    "edge mask uses bits beyond the " + std::to_string(pair_count(t.k)) + " pairs of k=" +
                        std::to_string(t.k));
    }
}

}  // namespace

int edge_bit(int i, int j, int k) {
    if (i > j) std::swap(i, j);
    if (i == j || i < 0 || j >= k) throw Error(ErrorKind::invalid_argument, "invalid local pair");
    // pairs before row i: (k-1) + (k-2) + ... + (k-i)
    return i * (2 * k - i - 1) / 2 + (j - i - 1);
}

std::string_view to_string(ExclusionMode mode) noexcept {
    return mode == ExclusionMode::rooted_aware ? "rooted-aware" : "literal-unrooted";
}

ExclusionMode parse_exclusion_mode(std::string_view text) {
    if (text == "rooted-aware") return ExclusionMode::rooted_aware;
    if (text == "literal-unrooted") return ExclusionMode::literal_unrooted;
    throw Error(ErrorKind::invalid_argument, "unknown exclusion mode '" + std::string(text) +
                                                 "' (expected rooted-aware or literal-unrooted)");
}

LabeledTransition canonical_code(const LabeledTransition& t) {
    validate(t, kMaxSubgraphNodes);
    LabeledTransition best = t;
    for (const auto& image : group_for(t.k, t.rooted).images) {
        const std::pair candidate{image[t.left], image[t.right]};
        if (candidate < std::pair{best.left, best.right}) {
            best.left = candidate.first;
            best.right = candidate.second;
        }
    }
    return best;
}

EdgeMask canonical_graph(int k, bool rooted, EdgeMask mask) {
    validate({k, rooted, mask, 0}, kMaxSubgraphNodes);
    EdgeMask best = mask;
    for (const auto& image : group_for(k, rooted).images) best = std::min(best, image[mask]);
    return best;
}

bool is_excluded(const LabeledTransition& t, ExclusionMode mode) {
    const bool rooted_compare = t.rooted && mode == ExclusionMode::rooted_aware;
    return canonical_graph(t.k, rooted_compare, t.left) == canonical_graph(t.k, rooted_compare, t.right);
}

TransitionCatalog TransitionCatalog::build(int n_max, ExclusionMode mode) {
    if (n_max < 1 || n_max > kMaxSubgraphNodes) {
        throw Error(ErrorKind::out_of_range, "max subgraph nodes must be in 1.." + std::to_string(kMaxSubgraphNodes) +
                                                 ", got " + std::to_string(n_max));
    }
    TransitionCatalog catalog(n_max, mode);
    for (int k = 1; k <= n_max; ++k) {
        const int pairs = pair_count(k);
        const std::size_t masks = std::size_t{1} << pairs;
        for (const bool rooted : {false, true}) {
            auto& table = catalog.tables_[static_cast<std::size_t>(k)][rooted ? 1 : 0];
            constexpr std::int32_t unvisited = -2;
            table.assign(masks * masks, unvisited);
            const auto& group = group_for(k, rooted);
            // Scanning in (left, right) order meets every orbit at its minimum first.
            for (std::size_t code = 0; code < masks * masks; ++code) {
                if (table[code] != unvisited) continue;
                const LabeledTransition canonical{k, rooted, static_cast<EdgeMask>(code >> pairs),
                                                  static_cast<EdgeMask>(code & (masks - 1))};
                std::int32_t id = -1;
                if (!is_excluded(canonical, mode)) {
                    id = static_cast<std::int32_t>(catalog.classes_.size());
                    catalog.classes_.push_back({catalog.classes_.size(), canonical});
                }
                for (const auto& image : group.images) {
                    table[(static_cast<std::size_t>(image[canonical.left]) << pairs) | image[canonical.right]] = id;
                }
            }
        }
    }
    return catalog;
}

std::optional<std::size_t> TransitionCatalog::lookup(const LabeledTransition& t) const {
    validate(t, n_max_);
    const std::int32_t id = lookup_unchecked(t.k, t.rooted, t.left, t.right);
    if (id < 0) return std::nullopt;
    return static_cast<std::size_t>(id);
}

std::size_t TransitionCatalog::reversed(std::size_t id) const {
    const auto& c = at(id).canonical;
    const auto found = lookup({c.k, c.rooted, c.right, c.left});
    // Exclusion is symmetric in left/right, so the reverse is always present.
    return *found;
}

EdgeMask mask_from_edges(int k, const std::vector<std::pair<int, int>>& edges) {
    EdgeMask mask = 0;
    for (const auto& [a, b] : edges) mask |= static_cast<EdgeMask>(1u << edge_bit(a, b, k));
    return mask;
}

std::vector<std::pair<int, int>> edges_from_mask(int k, EdgeMask mask) {
    std::vector<std::pair<int, int>> out;
    for (int i = 0; i < k; ++i) {
        for (int j = i + 1; j < k; ++j) {
            if (mask & (1u << edge_bit(i, j, k))) out.emplace_back(i, j);
        }
    }
    return out;
}

}  // namespace tet
