#include <algorithm>
#include <numeric>
#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "oracles.hpp"
#include "tet/embedder.hpp"
#include "tet/error.hpp"
#include "tet/fixtures.hpp"
#include "tet/synthgen.hpp"

using namespace tet;

namespace {

const TransitionCatalog& catalog3() {
    static const auto c = build_catalog(3, ExclusionMode::rooted_aware);
    return c;
}

std::size_t id_of(const TransitionCatalog& c, int k, bool rooted, std::vector<std::pair<int, int>> left,
                  std::vector<std::pair<int, int>> right) {
    const auto id = c.lookup({k, rooted, mask_from_edges(k, left), mask_from_edges(k, right)});
    REQUIRE(id.has_value());
    return *id;
}

TransitionCountVector fig1_vector() {
    const auto fx = fixtures::fig1();
    return count_step_vector(padded_pair(fx.graph.snapshot(0), fx.graph.snapshot(1), fx.ego), catalog3());
}

/// Random padded pair on at most `n` nodes rooted at node 0.
PaddedEgonetPair random_pair(std::size_t n, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> density(0.1, 0.7);
    const auto a = testing_helpers::random_snapshot(n, density(rng), rng);
    const auto b = testing_helpers::random_snapshot(n, density(rng), rng);
    return padded_pair(a, b, 0);
}

}  // namespace

TEST_CASE("fig1 transition counts") {
    const auto& c = catalog3();
    const auto vec = fig1_vector();
    REQUIRE(vec.counts.size() == c.size());
    CHECK(vec.counts[id_of(c, 2, true, {}, {{0, 1}})] == 1);
    CHECK(vec.counts[id_of(c, 2, false, {}, {{0, 1}})] == 5);
    CHECK(vec.counts[id_of(c, 3, true, {{0, 1}, {0, 2}}, {{0, 1}, {0, 2}, {1, 2}})] == 3);
    CHECK(vec.counts[id_of(c, 2, false, {{0, 1}}, {})] == 1);
}

TEST_CASE("fig1 counts agree with the literal reading in both modes") {
    const auto fx = fixtures::fig1();
    const auto pair = padded_pair(fx.graph.snapshot(0), fx.graph.snapshot(1), fx.ego);
    for (auto mode : {ExclusionMode::rooted_aware, ExclusionMode::literal_unrooted}) {
        const auto c = build_catalog(3, mode);
        CHECK(count_step_vector(pair, c).counts == oracle::literal_counts(pair, c));
    }
}

TEST_CASE("unchanged egonet gives the zero vector") {
    std::mt19937_64 rng(21);
    const auto s = testing_helpers::random_snapshot(12, 0.3, rng);
    for (NodeIndex v = 0; v < 12; ++v) {
        const auto vec = count_step_vector(padded_pair(s, s, v), catalog3());
        CHECK(std::all_of(vec.counts.begin(), vec.counts.end(), [](auto x) { return x == 0; }));
    }
    // absent at both times
    Snapshot empty(3, {});
    const auto vec = count_step_vector(padded_pair(empty, empty, 1), catalog3());
    CHECK(std::accumulate(vec.counts.begin(), vec.counts.end(), std::uint64_t{0}) == 0);
}

TEST_CASE("aggregate examples") {
    const std::vector<TransitionCountVector> steps{{0, 0, {0, 2}}, {0, 1, {4, 2}}};
    CHECK(aggregate(steps, AggregationKind::mean).values == std::vector<double>{2, 2});
    CHECK(aggregate(steps, AggregationKind::max).values == std::vector<double>{4, 2});
    CHECK(aggregate(steps, AggregationKind::min).values == std::vector<double>{0, 2});
    CHECK(aggregate(steps, AggregationKind::sum).values == std::vector<double>{4, 4});
    for (auto kind : {AggregationKind::mean, AggregationKind::sum, AggregationKind::min, AggregationKind::max}) {
        const std::span<const TransitionCountVector> one(steps.data(), 1);
        CHECK(aggregate(one, kind).values == std::vector<double>{0, 2});
    }
    CHECK_THROWS_AS(aggregate(std::span<const TransitionCountVector>{}, AggregationKind::mean), Error);
    const std::vector<TransitionCountVector> ragged{{0, 0, {0, 2}}, {0, 1, {4}}};
    CHECK_THROWS_AS(aggregate(ragged, AggregationKind::mean), Error);
    const std::vector<TransitionCountVector> mixed{{0, 0, {0}}, {1, 1, {4}}};
    CHECK_THROWS_AS(aggregate(mixed, AggregationKind::mean), Error);
    CHECK(parse_aggregation("max") == AggregationKind::max);
    CHECK_THROWS_AS(parse_aggregation("median"), Error);
}

TEST_CASE("embed_all on identical snapshots is zero") {
    std::mt19937_64 rng(22);
    const auto s = testing_helpers::random_snapshot(30, 0.1, rng);
    TemporalGraph g(NodeTable::numbered(30), {s, s, s});
    for (const auto& e : embed_all(g, catalog3())) {
        CHECK(std::all_of(e.values.begin(), e.values.end(), [](double x) { return x == 0.0; }));
    }
}

TEST_CASE("embed_all on the fig1 graph reproduces the step vector for v") {
    const auto fx = fixtures::fig1();
    EmbedOptions opts;
    opts.nodes = std::vector<NodeIndex>{fx.ego};
    const auto emb = embed_all(fx.graph, catalog3(), opts);
    REQUIRE(emb.size() == 1);
    CHECK(emb[0].node == fx.ego);
    const auto vec = fig1_vector();
    for (std::size_t i = 0; i < vec.counts.size(); ++i) CHECK(emb[0].values[i] == static_cast<double>(vec.counts[i]));

    opts.nodes = std::vector<NodeIndex>{99};
    CHECK_THROWS_AS(embed_all(fx.graph, catalog3(), opts), Error);
}

TEST_CASE("subset counting matches the literal nested loops on random pairs") {
    std::mt19937_64 rng(23);
    const auto literal = build_catalog(3, ExclusionMode::literal_unrooted);
    const auto small = build_catalog(2, ExclusionMode::rooted_aware);
    int compared = 0;
    for (int trial = 0; trial < 120; ++trial) {
        std::uniform_int_distribution<std::size_t> size(2, 12);
        const auto pair = random_pair(size(rng), rng);
        REQUIRE(pair.size() <= 12);
        CHECK(count_step_vector(pair, catalog3()).counts == oracle::literal_counts(pair, catalog3()));
        if (trial % 4 == 0) {
            CHECK(count_step_vector(pair, literal).counts == oracle::literal_counts(pair, literal));
            CHECK(count_step_vector(pair, small).counts == oracle::literal_counts(pair, small));
        }
        ++compared;
    }
    CHECK(compared >= 100);
}

TEST_CASE("four-node catalogs also match the literal loops") {
    std::mt19937_64 rng(24);
    const auto c4 = build_catalog(4, ExclusionMode::rooted_aware);
    for (int trial = 0; trial < 10; ++trial) {
        const auto pair = random_pair(8, rng);
        CHECK(count_step_vector(pair, c4).counts == oracle::literal_counts(pair, c4));
    }
}

TEST_CASE("embeddings are permutation equivariant") {
    std::mt19937_64 rng(25);
    const std::size_t n = 40;
    const auto g = testing_helpers::random_temporal(n, 4, 0.08, rng);
    std::vector<NodeIndex> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    const auto h = testing_helpers::permuted(g, perm);
    const auto eg = embed_all(g, catalog3());
    const auto eh = embed_all(h, catalog3());
    for (NodeIndex v = 0; v < n; ++v) CHECK(eg[v].values == eh[perm[v]].values);
}

TEST_CASE("time reversal moves counts to reversed classes") {
    std::mt19937_64 rng(26);
    const auto g = testing_helpers::random_temporal(30, 4, 0.1, rng);
    std::vector<Snapshot> rev(g.snapshots().rbegin(), g.snapshots().rend());
    const TemporalGraph r(g.universe(), rev);
    const auto& c = catalog3();

    const auto sg = embed_steps(g, c);
    const auto sr = embed_steps(r, c);
    const std::size_t hops = g.snapshot_count() - 1;
    for (std::size_t v = 0; v < g.node_count(); ++v) {
        for (std::size_t t = 0; t < hops; ++t) {
            const auto& fwd = sg[v][t].counts;
            const auto& bwd = sr[v][hops - 1 - t].counts;
            for (std::size_t id = 0; id < c.size(); ++id) CHECK(bwd[c.reversed(id)] == fwd[id]);
        }
    }
    for (auto kind : {AggregationKind::mean, AggregationKind::sum}) {
        EmbedOptions opts;
        opts.aggregation = kind;
        const auto eg = embed_all(g, c, opts);
        const auto er = embed_all(r, c, opts);
        for (std::size_t v = 0; v < g.node_count(); ++v) {
            for (std::size_t id = 0; id < c.size(); ++id) {
                CHECK(er[v].values[c.reversed(id)] == doctest::Approx(eg[v].values[id]));
            }
        }
    }
}

TEST_CASE("unrooted pair counts equal changed non-ego pairs") {
    std::mt19937_64 rng(27);
    const auto& c = catalog3();
    for (int trial = 0; trial < 50; ++trial) {
        const auto pair = random_pair(10, rng);
        const auto vec = count_step_vector(pair, c);
        std::uint64_t unrooted2 = 0;
        std::uint64_t total = 0;
        for (const auto& cls : c.classes()) {
            total += vec.counts[cls.id];
            if (cls.canonical.k == 2 && !cls.canonical.rooted) unrooted2 += vec.counts[cls.id];
        }
        std::uint64_t changed = 0;
        const std::size_t m = pair.size();
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = i + 1; j < m; ++j) {
                if (i == pair.root_local() || j == pair.root_local()) continue;
                const auto s = pair.local_state(i, j);
                changed += (s == 1 || s == 2) ? 1 : 0;
            }
        }
        CHECK(unrooted2 == changed);
        CHECK(total <= m * (m - 1) / 2 + m * (m - 1) * (m - 2) / 6);
    }
}

TEST_CASE("thread count does not change results") {
    std::mt19937_64 rng(28);
    const auto g = testing_helpers::random_temporal(60, 3, 0.06, rng);
    EmbedOptions one;
    one.threads = 1;
    EmbedOptions many;
    many.threads = 4;
    const auto a = embed_all(g, catalog3(), one);
    const auto b = embed_all(g, catalog3(), many);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].node == b[i].node);
        CHECK(a[i].values == b[i].values);
    }
}

TEST_CASE("synthetic anomalies share one embedding") {
    SynthConfig cfg;
    cfg.seed = 3;
    const auto data = generate(cfg);
    const auto emb = embed_all(data.graph, catalog3());
    std::vector<std::vector<double>> anomalous;
    std::vector<std::vector<double>> authentic;
    for (std::size_t i = 0; i < emb.size(); ++i) {
        (data.labels[i] == NodeLabel::anomaly ? anomalous : authentic).push_back(emb[i].values);
    }
    REQUIRE(anomalous.size() == 25);
    for (const auto& a : anomalous) CHECK(a == anomalous.front());
    for (const auto& a : authentic) CHECK(a != anomalous.front());
}
