#include <algorithm>
#include <numeric>
#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "tet/error.hpp"
#include "tet/fixtures.hpp"
#include "tet/graph.hpp"

using namespace tet;

namespace {

std::vector<NodeIndex> ids(const NodeTable& t, std::initializer_list<const char*> names) {
    std::vector<NodeIndex> out;
    for (auto n : names) out.push_back(t.at(n));
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Edge> edges(const NodeTable& t, std::initializer_list<std::pair<const char*, const char*>> list) {
    std::vector<Edge> out;
    for (auto [a, b] : list) out.emplace_back(t.at(a), t.at(b));
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

TEST_CASE("node table is a bijection") {
    NodeTable t;
    CHECK(t.intern("alice") == 0);
    CHECK(t.intern("bob") == 1);
    CHECK(t.intern("alice") == 0);
    CHECK(t.size() == 2);
    CHECK(t.name(1) == "bob");
    CHECK_FALSE(t.find("carol").has_value());
    CHECK_THROWS_AS((void)t.at("carol"), Error);
}

TEST_CASE("snapshot drops self-loops and parallel edges") {
    const std::vector<Edge> list{{0, 1}, {1, 0}, {2, 2}, {1, 2}};
    Snapshot s(3, list);
    CHECK(s.edge_count() == 2);
    CHECK(s.has_edge(1, 0));
    CHECK_FALSE(s.has_edge(2, 2));
    CHECK(s.neighbors(1).size() == 2);
    const std::vector<Edge> bad{{0, 5}};
    CHECK_THROWS_AS(Snapshot(3, bad), Error);
}

TEST_CASE("temporal graph needs two snapshots") {
    std::vector<Snapshot> one{Snapshot(2, {})};
    try {
        TemporalGraph(NodeTable::numbered(2), one);
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::invalid_argument);
    }
}

TEST_CASE("egonet of the fig1 ego") {
    const auto fx = fixtures::fig1();
    const auto& names = fx.graph.universe();
    const auto ego = egonet(fx.graph.snapshot(0), fx.ego);
    CHECK(ego.root == fx.ego);
    CHECK(ego.members == ids(names, {"v", "b", "c", "d", "e", "f"}));
    CHECK(ego.edges == edges(names, {{"v", "b"}, {"v", "c"}, {"v", "d"}, {"v", "e"}, {"v", "f"}, {"e", "f"}}));
}

TEST_CASE("egonet edge cases") {
    SUBCASE("isolated node") {
        Snapshot s(3, std::vector<Edge>{{1, 2}});
        const auto ego = egonet(s, 0);
        CHECK(ego.members == std::vector<NodeIndex>{0});
        CHECK(ego.edges.empty());
    }
    SUBCASE("triangle vertex") {
        Snapshot s(4, std::vector<Edge>{{0, 1}, {1, 2}, {0, 2}});
        const auto ego = egonet(s, 0);
        CHECK(ego.members == std::vector<NodeIndex>{0, 1, 2});
        CHECK(ego.edges.size() == 3);
    }
    SUBCASE("unknown node") {
        Snapshot s(2, {});
        try {
            egonet(s, 7);
            FAIL("expected an error");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::unknown_node);
            CHECK(std::string(e.what()).find('7') != std::string::npos);
        }
    }
}

TEST_CASE("padded pair over the fig1 union") {
    const auto fx = fixtures::fig1();
    const auto& names = fx.graph.universe();
    const auto pair = padded_pair(fx.graph.snapshot(0), fx.graph.snapshot(1), fx.ego);
    CHECK(pair.union_members() == ids(names, {"v", "b", "c", "d", "e", "f", "g"}));
    const NodeIndex g = names.at("g");
    for (const auto& e : pair.edges(Side::before)) CHECK((e.u != g && e.v != g));
    const auto& after = pair.edges(Side::after);
    CHECK(std::find(after.begin(), after.end(), Edge(fx.ego, g)) != after.end());
}

TEST_CASE("padded pair degenerate inputs") {
    Snapshot s(4, std::vector<Edge>{{0, 1}, {1, 2}});
    const auto same = padded_pair(s, s, 1);
    CHECK(same.edges(Side::before) == same.edges(Side::after));

    const auto lonely = padded_pair(s, s, 3);
    CHECK(lonely.union_members() == std::vector<NodeIndex>{3});
    CHECK(lonely.edges(Side::before).empty());
    CHECK(lonely.edges(Side::after).empty());
    CHECK_THROWS_AS(padded_pair(s, s, 9), Error);
}

TEST_CASE("induced edges on fig1 subsets") {
    const auto fx = fixtures::fig1();
    const auto& names = fx.graph.universe();
    const auto pair = padded_pair(fx.graph.snapshot(0), fx.graph.snapshot(1), fx.ego);
    const auto vbc = ids(names, {"v", "b", "c"});
    CHECK(induced_edges(pair, vbc, Side::before) == edges(names, {{"v", "b"}, {"v", "c"}}));
    CHECK(induced_edges(pair, vbc, Side::after) == edges(names, {{"v", "b"}, {"v", "c"}, {"b", "c"}}));
    const std::vector<NodeIndex> single{names.at("e")};
    CHECK(induced_edges(pair, single, Side::before).empty());
    CHECK_THROWS_AS(induced_edges(pair, std::vector<NodeIndex>{}, Side::before), Error);

    // a node outside the union
    Snapshot s(3, std::vector<Edge>{{0, 1}});
    const auto small = padded_pair(s, s, 0);
    CHECK_THROWS_AS(induced_edges(small, std::vector<NodeIndex>{0, 2}, Side::before), Error);
}

TEST_CASE("egonet matches a brute-force edge filter") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 30; ++trial) {
        const auto s = testing_helpers::random_snapshot(20, 0.2, rng);
        for (NodeIndex v = 0; v < 20; ++v) {
            const auto ego = egonet(s, v);
            std::vector<Edge> expected;
            for (const auto& e : s.edges()) {
                const bool in_u = std::binary_search(ego.members.begin(), ego.members.end(), e.u);
                const bool in_v = std::binary_search(ego.members.begin(), ego.members.end(), e.v);
                if (in_u && in_v) expected.push_back(e);
            }
            CHECK(ego.edges == expected);
            for (NodeIndex m : ego.members) CHECK((m == v || s.has_edge(v, m)));
        }
    }
}

TEST_CASE("padded pair is symmetric under time reversal") {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 20; ++trial) {
        const auto a = testing_helpers::random_snapshot(15, 0.25, rng);
        const auto b = testing_helpers::random_snapshot(15, 0.25, rng);
        for (NodeIndex v = 0; v < 15; ++v) {
            const auto fwd = padded_pair(a, b, v);
            const auto bwd = padded_pair(b, a, v);
            CHECK(fwd.union_members() == bwd.union_members());
            CHECK(fwd.edges(Side::before) == bwd.edges(Side::after));
            CHECK(fwd.edges(Side::after) == bwd.edges(Side::before));
        }
    }
}

TEST_CASE("relabeling the universe relabels egonets") {
    std::mt19937_64 rng(13);
    const std::size_t n = 16;
    const auto g = testing_helpers::random_temporal(n, 2, 0.2, rng);
    std::vector<NodeIndex> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    const auto h = testing_helpers::permuted(g, perm);
    for (NodeIndex v = 0; v < n; ++v) {
        const auto original = egonet(g.snapshot(0), v);
        const auto moved = egonet(h.snapshot(0), perm[v]);
        std::vector<NodeIndex> members;
        for (auto m : original.members) members.push_back(perm[m]);
        std::sort(members.begin(), members.end());
        std::vector<Edge> mapped;
        for (auto e : original.edges) mapped.emplace_back(perm[e.u], perm[e.v]);
        std::sort(mapped.begin(), mapped.end());
        CHECK(moved.members == members);
        CHECK(moved.edges == mapped);
    }
}
