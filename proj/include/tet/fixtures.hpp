#pragma once

#include "tet/graph.hpp"

namespace tet::fixtures {

/// Two-snapshot egonet of ego "v" with neighbors b..g.
/// t:   v-{b,c,d,e,f}, e-f
/// t+1: v-{b,c,d,e,f,g}, b-c, b-d, b-g, c-d, e-g
struct Fig1 {
    TemporalGraph graph;
    NodeIndex ego;
};

Fig1 fig1();

}  // namespace tet::fixtures
