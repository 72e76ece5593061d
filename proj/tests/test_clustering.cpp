#include <algorithm>
#include <map>
#include <numeric>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "tet/clustering.hpp"
#include "tet/error.hpp"

using namespace tet;

namespace {

std::vector<Point> line(std::initializer_list<double> xs) {
    std::vector<Point> out;
    for (double x : xs) out.push_back({x});
    return out;
}

std::vector<Point> random_points(std::size_t n, std::size_t dims, std::mt19937_64& rng) {
    // a few gaussian blobs plus uniform background
    std::normal_distribution<double> noise(0.0, 0.3);
    std::uniform_real_distribution<double> box(-5.0, 5.0);
    std::vector<Point> centers(3, Point(dims));
    for (auto& c : centers) {
        for (auto& x : c) x = box(rng);
    }
    std::vector<Point> out;
    for (std::size_t i = 0; i < n; ++i) {
        Point p(dims);
        if (i % 5 == 4) {
            for (auto& x : p) x = box(rng);
        } else {
            const auto& c = centers[i % 3];
            for (std::size_t d = 0; d < dims; ++d) p[d] = c[d] + noise(rng);
        }
        out.push_back(std::move(p));
    }
    return out;
}

std::size_t noise_count(const ClusterAssignment& a) {
    return static_cast<std::size_t>(std::count(a.cluster.begin(), a.cluster.end(), kNoise));
}

}  // namespace

TEST_CASE("dbscan examples") {
    SUBCASE("identical points form one cluster") {
        const std::vector<Point> pts(6, Point{1.0, 2.0});
        const auto a = dbscan(pts, {0.1, 4, false});
        CHECK(a.cluster_count == 1);
        CHECK(noise_count(a) == 0);
    }
    SUBCASE("a far point is noise") {
        const auto a = dbscan(line({0, 0.1, 0.2, 10}), {0.5, 2, false});
        CHECK(a.cluster == std::vector<int>{0, 0, 0, kNoise});
        const auto labels = to_anomaly_labels(a, {AnomalyRule::Kind::noise_only, 0.5});
        CHECK(labels == std::vector<NodeLabel>{NodeLabel::normal, NodeLabel::normal, NodeLabel::normal,
                                               NodeLabel::anomaly});
    }
    SUBCASE("min_pts above the point count") {
        const auto a = dbscan(line({0, 0, 0}), {1.0, 4, false});
        CHECK(noise_count(a) == 3);
        CHECK(a.cluster_count == 0);
    }
}

TEST_CASE("border points join the first cluster to reach them") {
    // 0..2 and 4..6 are dense; 3 sits between them as a border point
    const auto pts = line({0, 0.5, 1.0, 2.0, 3.0, 3.5, 4.0});
    const auto a = dbscan(pts, {1.0, 3, false});
    CHECK(a.cluster[3] == 0);
    CHECK(a.cluster == oracle::naive_dbscan(pts, 1.0, 3).cluster);
}

TEST_CASE("dbscan errors") {
    CHECK_THROWS_AS(dbscan(line({0, 1}), {0.0, 2, false}), Error);
    const std::vector<Point> ragged{{0.0}, {0.0, 1.0}};
    CHECK_THROWS_AS(dbscan(ragged, {1.0, 2, false}), Error);
    CHECK_THROWS_AS(dbscan(std::vector<Point>{}, {1.0, 2, false}), Error);
}

TEST_CASE("small-clusters rule") {
    ClusterAssignment a;
    a.cluster.assign(90, 0);
    a.cluster.insert(a.cluster.end(), 10, 1);
    a.core.assign(100, true);
    a.cluster_count = 2;
    const auto labels = to_anomaly_labels(a, {AnomalyRule::Kind::small_clusters, 0.2});
    CHECK(std::count(labels.begin(), labels.end(), NodeLabel::anomaly) == 10);
    CHECK(labels.back() == NodeLabel::anomaly);
    CHECK(labels.front() == NodeLabel::normal);
    CHECK_THROWS_AS(to_anomaly_labels(a, {AnomalyRule::Kind::small_clusters, 0.0}), Error);
    CHECK_THROWS_AS(to_anomaly_labels(a, {AnomalyRule::Kind::small_clusters, 1.0}), Error);
}

TEST_CASE("agreement with the naive reference") {
    std::mt19937_64 rng(41);
    std::uniform_int_distribution<std::size_t> size(1, 200);
    std::uniform_real_distribution<double> eps(0.1, 2.0);
    std::uniform_int_distribution<std::size_t> min_pts(1, 8);
    for (int trial = 0; trial < 60; ++trial) {
        const auto pts = random_points(size(rng), 1 + static_cast<std::size_t>(trial % 3), rng);
        const double e = eps(rng);
        const auto m = min_pts(rng);
        const auto got = dbscan(pts, {e, m, false});
        const auto want = oracle::naive_dbscan(pts, e, m);
        CHECK(got.cluster == want.cluster);
        CHECK(got.core == want.core);
        CHECK(got.cluster_count == want.cluster_count);
    }
}

TEST_CASE("core points and their partition do not depend on input order") {
    std::mt19937_64 rng(42);
    const auto pts = random_points(150, 2, rng);
    std::vector<std::size_t> perm(pts.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<Point> shuffled;
    for (auto i : perm) shuffled.push_back(pts[i]);
    const auto a = dbscan(pts, {0.6, 4, false});
    const auto b = dbscan(shuffled, {0.6, 4, false});
    std::map<int, int> relabel;
    for (std::size_t j = 0; j < perm.size(); ++j) {
        const auto i = perm[j];
        CHECK(a.core[i] == b.core[j]);
        if (!a.core[i]) continue;
        auto [it, inserted] = relabel.emplace(a.cluster[i], b.cluster[j]);
        CHECK(it->second == b.cluster[j]);
    }
    CHECK(a.cluster_count == b.cluster_count);
}

TEST_CASE("larger eps never adds noise") {
    std::mt19937_64 rng(43);
    const auto pts = random_points(120, 2, rng);
    std::size_t previous = pts.size();
    for (double e = 0.05; e < 4.0; e *= 1.3) {
        const auto n = noise_count(dbscan(pts, {e, 4, false}));
        CHECK(n <= previous);
        previous = n;
    }
}

TEST_CASE("k-distance curve and eps rules") {
    const auto pts = line({0, 1, 2, 3, 100});
    const auto curve = k_distance_curve(pts, 2);
    CHECK(curve == std::vector<double>{1, 1, 1, 1, 97});
    CHECK(auto_eps(pts, 2, EpsRule::max_k_distance) == 97.0);
    CHECK(knee_eps(pts, 2) == 1.0);
    CHECK(auto_eps(std::vector<Point>(3, Point{0.0}), 2, EpsRule::max_k_distance) == 1.0);
    CHECK(knee_eps(std::vector<Point>(3, Point{0.0}), 2) == 1.0);
    CHECK(parse_eps_rule("knee") == EpsRule::knee);
    CHECK_THROWS_AS(parse_eps_rule("elbow"), Error);
}

TEST_CASE("standardize") {
    const std::vector<Point> pts{{1.0, 5.0}, {3.0, 5.0}};
    const auto z = standardize(pts);
    CHECK(z[0][0] == doctest::Approx(-1.0));
    CHECK(z[1][0] == doctest::Approx(1.0));
    CHECK(z[0][1] == 5.0);
    CHECK(z[1][1] == 5.0);
}
