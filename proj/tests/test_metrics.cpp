#include <random>

#include "doctest.h"
#include "tet/error.hpp"
#include "tet/metrics.hpp"

using namespace tet;

namespace {

constexpr auto A = NodeLabel::anomaly;
constexpr auto N = NodeLabel::normal;

std::vector<NodeLabel> flipped(const std::vector<NodeLabel>& v) {
    std::vector<NodeLabel> out;
    for (auto l : v) out.push_back(l == A ? N : A);
    return out;
}

}  // namespace

TEST_CASE("perfect prediction") {
    std::vector<NodeLabel> truth(475, N);
    truth.insert(truth.end(), 25, A);
    const auto r = evaluate(truth, truth);
    CHECK(r.anomaly.precision == 1.0);
    CHECK(r.anomaly.recall == 1.0);
    CHECK(r.anomaly.f1 == 1.0);
    CHECK(r.anomaly.support == 25);
    CHECK(r.normal.f1 == 1.0);
    CHECK(r.normal.support == 475);
    CHECK(r.accuracy == 1.0);
}

TEST_CASE("all-normal predictor scores zero on anomalies") {
    const std::vector<NodeLabel> truth{A, N, N, N};
    const std::vector<NodeLabel> predicted(4, N);
    const auto r = evaluate(predicted, truth);
    CHECK(r.anomaly.precision == 0.0);
    CHECK(r.anomaly.recall == 0.0);
    CHECK(r.anomaly.f1 == 0.0);
    CHECK(r.accuracy == 0.75);
}

TEST_CASE("one of each confusion cell") {
    const std::vector<NodeLabel> predicted{A, A, N, N};
    const std::vector<NodeLabel> truth{A, N, A, N};
    const auto r = evaluate(predicted, truth);
    CHECK(r.true_positive == 1);
    CHECK(r.false_positive == 1);
    CHECK(r.false_negative == 1);
    CHECK(r.true_negative == 1);
    CHECK(r.anomaly.precision == 0.5);
    CHECK(r.anomaly.recall == 0.5);
    CHECK(r.anomaly.f1 == 0.5);
    CHECK(r.accuracy == 0.5);
}

TEST_CASE("errors") {
    CHECK_THROWS_AS(evaluate(std::vector<NodeLabel>{A}, std::vector<NodeLabel>{A, N}), Error);
    CHECK_THROWS_AS(evaluate(std::vector<NodeLabel>{}, std::vector<NodeLabel>{}), Error);
}

TEST_CASE("swapping the positive class swaps the rows") {
    std::mt19937_64 rng(51);
    std::bernoulli_distribution coin(0.3);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<NodeLabel> p;
        std::vector<NodeLabel> t;
        for (int i = 0; i < 40; ++i) {
            p.push_back(coin(rng) ? A : N);
            t.push_back(coin(rng) ? A : N);
        }
        const auto r = evaluate(p, t);
        const auto s = evaluate(flipped(p), flipped(t));
        CHECK(r.anomaly.f1 == s.normal.f1);
        CHECK(r.anomaly.precision == s.normal.precision);
        CHECK(r.normal.recall == s.anomaly.recall);
        CHECK(r.accuracy == s.accuracy);
        for (const auto& m : {r.anomaly, r.normal}) {
            if (m.precision + m.recall > 0) {
                CHECK(m.f1 >= std::min(m.precision, m.recall) - 1e-15);
                CHECK(m.f1 <= std::max(m.precision, m.recall) + 1e-15);
            }
        }
    }
}

TEST_CASE("rounding happens only when rendering") {
    const std::vector<NodeLabel> predicted{A, A, A, N};
    const std::vector<NodeLabel> truth{A, N, N, N};
    const auto r = evaluate(predicted, truth);
    CHECK(r.anomaly.precision == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    const auto table = render_table(r);
    CHECK(table.find("0.33") != std::string::npos);
    CHECK(table.find("0.333") == std::string::npos);
    CHECK(table.find("Anomaly") != std::string::npos);
    CHECK(table.find("Accuracy") != std::string::npos);
}
