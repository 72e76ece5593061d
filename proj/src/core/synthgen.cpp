#include "tet/synthgen.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <string>
#include <utility>

#include "tet/error.hpp"

namespace tet {
namespace {

double unit_draw(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

/// Unbiased integer in [0, bound) by rejection.
std::uint64_t bounded_draw(std::mt19937_64& rng, std::uint64_t bound) {
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x = rng();
    while (x >= limit) x = rng();
    return x % bound;
}

}  // namespace

std::string_view to_string(NodeLabel label) noexcept { return label == NodeLabel::anomaly ? "anomaly" : "normal"; }

NodeLabel parse_label(std::string_view text) {
    if (text == "normal") return NodeLabel::normal;
    if (text == "anomaly") return NodeLabel::anomaly;
    throw Error(ErrorKind::parse, "unknown label '" + std::string(text) + "' (expected normal or anomaly)");
}

std::size_t anomalous_count(const SynthConfig& cfg) {
    return static_cast<std::size_t>(std::floor(cfg.a * static_cast<double>(cfg.n)));
}

SynthDataset generate(const SynthConfig& cfg) {
    if (!(cfg.p >= 0.0 && cfg.p <= 1.0)) {
        throw Error(ErrorKind::invalid_argument, "connection probability p must be in [0, 1]");
    }
    if (!(cfg.a >= 0.0 && cfg.a <= 1.0)) {
        throw Error(ErrorKind::invalid_argument, "anomalous fraction a must be in [0, 1]");
    }
    if (cfg.snapshots < 2) throw Error(ErrorKind::invalid_argument, "the generator needs at least 2 snapshots");
    if (cfg.n == 0) throw Error(ErrorKind::invalid_argument, "the generator needs at least one node");

    const std::size_t n = cfg.n;
    const std::size_t first_anomaly = n - anomalous_count(cfg);
    std::mt19937_64 rng(cfg.seed);

    std::vector<Snapshot> snapshots;
    snapshots.reserve(cfg.snapshots);
    for (std::size_t t = 0; t < cfg.snapshots; ++t) {
        const bool clique = t % 2 == 1;
        std::vector<Edge> edges;
        for (std::size_t u = 0; u < n; ++u) {
            for (std::size_t v = u + 1; v < n; ++v) {
                const bool u_anomalous = u >= first_anomaly;
                const bool v_anomalous = v >= first_anomaly;
                bool present = false;
                if (u_anomalous && v_anomalous) {
                    present = clique;
                } else if (!u_anomalous && !v_anomalous) {
                    present = unit_draw(rng) < cfg.p;
                } else if (cfg.cross_edges) {
                    present = unit_draw(rng) < cfg.p;
                }
                if (present) edges.emplace_back(static_cast<NodeIndex>(u), static_cast<NodeIndex>(v));
            }
        }
        snapshots.emplace_back(n, edges);
    }

    std::vector<std::size_t> name_of(n);
    for (std::size_t i = 0; i < n; ++i) name_of[i] = i;
    if (cfg.shuffle_names) {
        for (std::size_t i = n - 1; i > 0; --i) std::swap(name_of[i], name_of[bounded_draw(rng, i + 1)]);
    }
    NodeTable universe;
    for (std::size_t i = 0; i < n; ++i) universe.intern(std::to_string(name_of[i]));

    std::vector<NodeLabel> labels(n, NodeLabel::normal);
    for (std::size_t i = first_anomaly; i < n; ++i) labels[i] = NodeLabel::anomaly;
    return {TemporalGraph(std::move(universe), std::move(snapshots)), std::move(labels)};
}

}  // namespace tet
