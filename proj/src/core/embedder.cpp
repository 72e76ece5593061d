#include "tet/embedder.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <string>
#include <thread>

#include "tet/error.hpp"

namespace tet {
namespace {

struct SubsetCounter {
    const PaddedEgonetPair& pair;
    const TransitionCatalog& catalog;
    std::vector<std::uint64_t>& counts;
    std::vector<std::size_t> chosen;
    std::vector<std::size_t> order;

    void classify() {
        const int k = static_cast<int>(chosen.size());
        const std::size_t root = pair.root_local();
        const bool rooted = std::find(chosen.begin(), chosen.end(), root) != chosen.end();
        order.clear();
        if (rooted) order.push_back(root);
        for (std::size_t c : chosen) {
            if (!rooted || c != root) order.push_back(c);
        }
        EdgeMask left = 0;
        EdgeMask right = 0;
        int bit = 0;  // (i, j) pairs are visited in edge_bit order
        for (int i = 0; i < k; ++i) {
            for (int j = i + 1; j < k; ++j, ++bit) {
                const std::uint8_t state =
                    pair.local_state(order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(j)]);
                if (state & 1) left |= static_cast<EdgeMask>(1u << bit);
                if (state & 2) right |= static_cast<EdgeMask>(1u << bit);
            }
        }
        const std::int32_t id = catalog.lookup_unchecked(k, rooted, left, right);
        if (id >= 0) ++counts[static_cast<std::size_t>(id)];
    }

    void extend(std::size_t next) {
        if (chosen.size() >= 2) classify();
        if (chosen.size() == static_cast<std::size_t>(catalog.n_max())) return;
        for (std::size_t i = next; i < pair.size(); ++i) {
            chosen.push_back(i);
            extend(i + 1);
            chosen.pop_back();
        }
    }
};

template <typename Fn>
void parallel_for(std::size_t count, unsigned threads, Fn&& fn) {
    if (threads == 0) threads = default_thread_count();
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(count, 1)));
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> failures(threads);
    {
        std::vector<std::jthread> workers;
        for (unsigned w = 0; w < threads; ++w) {
            workers.emplace_back([&, w] {
                try {
                    for (std::size_t i = next++; i < count; i = next++) fn(i);
                } catch (...) {
                    failures[w] = std::current_exception();
                    next = count;
                }
            });
        }
    }
    for (auto& failure : failures) {
        if (failure) std::rethrow_exception(failure);
    }
}

}  // namespace

std::string_view to_string(AggregationKind kind) noexcept {
    switch (kind) {
        case AggregationKind::mean: return "mean";
        case AggregationKind::sum: return "sum";
        case AggregationKind::min: return "min";
        case AggregationKind::max: return "max";
    }
    return "mean";
}

AggregationKind parse_aggregation(std::string_view text) {
    for (auto kind : {AggregationKind::mean, AggregationKind::sum, AggregationKind::min, AggregationKind::max}) {
        if (text == to_string(kind)) return kind;
    }
    throw Error(ErrorKind::invalid_argument,
                "unknown aggregation '" + std::string(text) + "' (expected mean, sum, min or max)");
}

TransitionCountVector count_step_vector(const PaddedEgonetPair& pair, const TransitionCatalog& catalog) {
    TransitionCountVector out;
    out.node = pair.root();
    out.counts.assign(catalog.size(), 0);
    SubsetCounter counter{pair, catalog, out.counts, {}, {}};
    counter.chosen.reserve(static_cast<std::size_t>(catalog.n_max()));
    counter.extend(0);
    return out;
}

NodeEmbedding aggregate(std::span<const TransitionCountVector> steps, AggregationKind kind) {
    if (steps.empty()) throw Error(ErrorKind::invalid_argument, "cannot aggregate an empty list of step vectors");
    const std::size_t d = steps.front().counts.size();
    for (const auto& step : steps) {
        if (step.counts.size() != d) throw Error(ErrorKind::invalid_argument, "step vectors differ in length");
        if (step.node != steps.front().node) {
            throw Error(ErrorKind::invalid_argument, "step vectors belong to different nodes");
        }
    }
    NodeEmbedding out{steps.front().node, kind, std::vector<double>(d)};
    for (std::size_t i = 0; i < d; ++i) {
        std::uint64_t sum = 0;
        std::uint64_t lo = steps.front().counts[i];
        std::uint64_t hi = lo;
        for (const auto& step : steps) {
            sum += step.counts[i];
            lo = std::min(lo, step.counts[i]);
            hi = std::max(hi, step.counts[i]);
        }
        switch (kind) {
            case AggregationKind::mean: out.values[i] = static_cast<double>(sum) / static_cast<double>(steps.size()); break;
            case AggregationKind::sum: out.values[i] = static_cast<double>(sum); break;
            case AggregationKind::min: out.values[i] = static_cast<double>(lo); break;
            case AggregationKind::max: out.values[i] = static_cast<double>(hi); break;
        }
    }
    return out;
}

unsigned default_thread_count() {
    if (const char* env = std::getenv("TET_THREADS"); env != nullptr && *env != '\0') {
        try {
            const long value = std::stol(env);
            if (value > 0) return static_cast<unsigned>(value);
        } catch (const std::exception&) {
        }
        throw Error(ErrorKind::invalid_argument, "TET_THREADS must be a positive integer, got '" + std::string(env) + "'");
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<std::vector<TransitionCountVector>> embed_steps(const TemporalGraph& graph,
                                                            const TransitionCatalog& catalog,
                                                            const EmbedOptions& options) {
    if (graph.snapshot_count() < 2) throw Error(ErrorKind::invalid_argument, "embedding needs at least 2 snapshots");
    std::vector<NodeIndex> nodes;
    if (options.nodes) {
        nodes = *options.nodes;
        for (NodeIndex v : nodes) {
            if (v >= graph.node_count()) {
                throw Error(ErrorKind::unknown_node, "unknown node index " + std::to_string(v));
            }
        }
        std::sort(nodes.begin(), nodes.end());
        nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
    } else {
        nodes.resize(graph.node_count());
        for (std::size_t i = 0; i < nodes.size(); ++i) nodes[i] = static_cast<NodeIndex>(i);
    }

    std::vector<std::vector<TransitionCountVector>> out(nodes.size());
    parallel_for(nodes.size(), options.threads, [&](std::size_t i) {
        auto& steps = out[i];
        steps.reserve(graph.snapshot_count() - 1);
        for (std::size_t t = 0; t + 1 < graph.snapshot_count(); ++t) {
            auto step = count_step_vector(padded_pair(graph.snapshot(t), graph.snapshot(t + 1), nodes[i]), catalog);
            step.step = t;
            steps.push_back(std::move(step));
        }
    });
    return out;
}

std::vector<NodeEmbedding> embed_all(const TemporalGraph& graph, const TransitionCatalog& catalog,
                                     const EmbedOptions& options) {
    const auto steps = embed_steps(graph, catalog, options);
    std::vector<NodeEmbedding> out;
    out.reserve(steps.size());
    for (const auto& node_steps : steps) out.push_back(aggregate(node_steps, options.aggregation));
    return out;
}

}  // namespace tet
