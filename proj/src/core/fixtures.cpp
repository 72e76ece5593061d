#include "tet/fixtures.hpp"

#include <utility>

namespace tet::fixtures {

Fig1 fig1() {
    NodeTable names;
    for (const char* n : {"v", "b", "c", "d", "e", "f", "g"}) names.intern(n);
    auto id = [&](const char* n) { return names.at(n); };
    auto edges = [&](std::initializer_list<std::pair<const char*, const char*>> list) {
        std::vector<Edge> out;
        for (const auto& [a, b] : list) out.emplace_back(id(a), id(b));
        return out;
    };
    const auto before = edges({{"v", "b"}, {"v", "c"}, {"v", "d"}, {"v", "e"}, {"v", "f"}, {"e", "f"}});
    const auto after = edges({{"v", "b"}, {"v", "c"}, {"v", "d"}, {"v", "e"}, {"v", "f"}, {"v", "g"},
                              {"b", "c"}, {"b", "d"}, {"b", "g"}, {"c", "d"}, {"e", "g"}});
    const NodeIndex ego = id("v");
    std::vector<Snapshot> snapshots{Snapshot(names.size(), before), Snapshot(names.size(), after)};
    return {TemporalGraph(std::move(names), std::move(snapshots)), ego};
}

}  // namespace tet::fixtures
