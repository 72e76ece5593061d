#pragma once

#include <cstddef>
#include <span>
#include <string>

#include "tet/synthgen.hpp"

namespace tet {

struct ClassMetrics {
    double precision{0.0};
    double recall{0.0};
    double f1{0.0};
    std::size_t support{0};
};

/// Per-class precision / recall / F1 with 0/0 taken as 0.
struct EvalReport {
    ClassMetrics anomaly;
    ClassMetrics normal;
    double accuracy{0.0};
    std::size_t total{0};
    // confusion counts with anomaly as the positive class
    std::size_t true_positive{0};
    std::size_t false_positive{0};
    std::size_t false_negative{0};
    std::size_t true_negative{0};
};

EvalReport evaluate(std::span<const NodeLabel> predicted, std::span<const NodeLabel> truth);

/// Fixed-width text table: one row per class, then accuracy.
std::string render_table(const EvalReport& report, int digits = 2);

}  // namespace tet
