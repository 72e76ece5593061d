#include <cmath>
#include <set>

#include "doctest.h"
#include "tet/error.hpp"
#include "tet/synthgen.hpp"

using namespace tet;

namespace {

std::size_t edges_within(const Snapshot& s, std::size_t lo, std::size_t hi) {
    std::size_t n = 0;
    for (const auto& e : s.edges()) n += (e.u >= lo && e.v < hi) ? 1 : 0;
    return n;
}

}  // namespace

TEST_CASE("default config labels 25 of 500 nodes anomalous") {
    SynthConfig cfg;
    cfg.seed = 17;
    const auto data = generate(cfg);
    CHECK(data.graph.node_count() == 500);
    CHECK(data.graph.snapshot_count() == 5);
    std::size_t anomalies = 0;
    for (auto l : data.labels) anomalies += l == NodeLabel::anomaly ? 1 : 0;
    CHECK(anomalies == 25);
    CHECK(anomalous_count(cfg) == 25);
    for (std::size_t i = 475; i < 500; ++i) CHECK(data.labels[i] == NodeLabel::anomaly);
}

TEST_CASE("anomalous subgraph alternates between empty and clique") {
    for (bool cross : {false, true}) {
        SynthConfig cfg;
        cfg.cross_edges = cross;
        cfg.snapshots = 6;
        cfg.seed = 4;
        const auto data = generate(cfg);
        for (std::size_t t = 0; t < 6; ++t) {
            CHECK(edges_within(data.graph.snapshot(t), 475, 500) == (t % 2 == 0 ? 0u : 300u));
        }
        if (!cross) {
            for (std::size_t t = 0; t < 6; t += 2) {
                for (NodeIndex v = 475; v < 500; ++v) CHECK(data.graph.snapshot(t).neighbors(v).empty());
            }
        }
    }
}

TEST_CASE("cross edges appear only when enabled") {
    SynthConfig cfg;
    cfg.n = 60;
    cfg.p = 0.3;
    cfg.a = 0.2;
    cfg.snapshots = 2;
    auto count_cross = [](const SynthDataset& d) {
        std::size_t n = 0;
        for (const auto& s : d.graph.snapshots()) {
            for (const auto& e : s.edges()) n += (d.labels[e.u] != d.labels[e.v]) ? 1 : 0;
        }
        return n;
    };
    CHECK(count_cross(generate(cfg)) == 0);
    cfg.cross_edges = true;
    CHECK(count_cross(generate(cfg)) > 0);
}

TEST_CASE("no edge sources gives empty snapshots") {
    SynthConfig cfg;
    cfg.p = 0.0;
    cfg.a = 0.0;
    cfg.snapshots = 2;
    const auto data = generate(cfg);
    CHECK(data.graph.snapshot(0).edge_count() == 0);
    CHECK(data.graph.snapshot(1).edge_count() == 0);
}

TEST_CASE("authentic edge counts follow the binomial") {
    const double pairs = 475.0 * 474.0 / 2.0;
    const double p = 0.0025;
    const double mean = pairs * p;
    const double sd = std::sqrt(pairs * p * (1 - p));
    double total = 0.0;
    int samples = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        SynthConfig cfg;
        cfg.seed = seed;
        const auto data = generate(cfg);
        for (const auto& s : data.graph.snapshots()) {
            const auto observed = static_cast<double>(edges_within(s, 0, 475));
            CHECK(std::abs(observed - mean) <= 5 * sd);
            total += observed;
            ++samples;
        }
    }
    CHECK(std::abs(total / samples - mean) <= 5 * sd / std::sqrt(static_cast<double>(samples)));
}

TEST_CASE("snapshots are drawn independently") {
    SynthConfig cfg;
    cfg.n = 200;
    cfg.p = 0.2;
    cfg.a = 0.0;
    cfg.snapshots = 2;
    const double pairs = 200.0 * 199.0 / 2.0;
    const double q = cfg.p * cfg.p;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        cfg.seed = seed;
        const auto data = generate(cfg);
        std::size_t both = 0;
        for (const auto& e : data.graph.snapshot(0).edges()) both += data.graph.snapshot(1).has_edge(e.u, e.v) ? 1 : 0;
        CHECK(std::abs(static_cast<double>(both) - pairs * q) <= 5 * std::sqrt(pairs * q * (1 - q)));
    }
}

TEST_CASE("seeding is deterministic") {
    SynthConfig cfg;
    cfg.seed = 9;
    const auto a = generate(cfg);
    const auto b = generate(cfg);
    CHECK(a.graph == b.graph);
    CHECK(a.labels == b.labels);
    cfg.seed = 10;
    CHECK_FALSE(generate(cfg).graph == a.graph);
}

TEST_CASE("shuffled names are a permutation and leave the structure alone") {
    SynthConfig cfg;
    cfg.seed = 2;
    const auto plain = generate(cfg);
    cfg.shuffle_names = true;
    const auto shuffled = generate(cfg);
    CHECK(plain.graph.snapshots() == shuffled.graph.snapshots());
    CHECK(plain.labels == shuffled.labels);
    const auto& names = shuffled.graph.universe().names();
    std::set<std::string> unique(names.begin(), names.end());
    CHECK(unique.size() == 500);
    CHECK(unique.count("0") == 1);
    CHECK(unique.count("499") == 1);
    CHECK(names != plain.graph.universe().names());
}

TEST_CASE("invalid configs are rejected") {
    SynthConfig cfg;
    cfg.p = 1.5;
    CHECK_THROWS_AS(generate(cfg), Error);
    cfg = {};
    cfg.a = -0.1;
    CHECK_THROWS_AS(generate(cfg), Error);
    cfg = {};
    cfg.snapshots = 1;
    CHECK_THROWS_AS(generate(cfg), Error);
    cfg = {};
    cfg.n = 0;
    CHECK_THROWS_AS(generate(cfg), Error);
    CHECK(parse_label("anomaly") == NodeLabel::anomaly);
    CHECK_THROWS_AS(parse_label("weird"), Error);
}
