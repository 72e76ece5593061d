#include "tet/metrics.hpp"

#include <fmt/format.h>

#include "tet/error.hpp"

namespace tet {
namespace {

double ratio(std::size_t num, std::size_t den) {
    return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

ClassMetrics class_metrics(std::size_t tp, std::size_t fp, std::size_t fn) {
    ClassMetrics m;
    m.precision = ratio(tp, tp + fp);
    m.recall = ratio(tp, tp + fn);
    m.f1 = m.precision + m.recall > 0.0 ? 2.0 * m.precision * m.recall / (m.precision + m.recall) : 0.0;
    m.support = tp + fn;
    return m;
}

}  // namespace

EvalReport evaluate(std::span<const NodeLabel> predicted, std::span<const NodeLabel> truth) {
    if (predicted.size() != truth.size()) {
        throw Error(ErrorKind::invalid_argument, "predicted and true label counts differ (" +
                                                     std::to_string(predicted.size()) + " vs " +
                                                     std::to_string(truth.size()) + ")");
    }
    if (truth.empty()) throw Error(ErrorKind::invalid_argument, "cannot evaluate an empty label set");
    EvalReport r;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        const bool pred = predicted[i] == NodeLabel::anomaly;
        const bool real = truth[i] == NodeLabel::anomaly;
        if (pred && real) ++r.true_positive;
        else if (pred) ++r.false_positive;
        else if (real) ++r.false_negative;
        else ++r.true_negative;
    }
    r.total = truth.size();
    r.anomaly = class_metrics(r.true_positive, r.false_positive, r.false_negative);
    r.normal = class_metrics(r.true_negative, r.false_negative, r.false_positive);
    r.accuracy = ratio(r.true_positive + r.true_negative, r.total);
    return r;
}

std::string render_table(const EvalReport& report, int digits) {
    std::string out = fmt::format("{:<10}{:>10}{:>10}{:>10}{:>10}\n", "", "Prec.", "Recall", "F1-Score", "Support");
    auto row = [&](std::string_view name, const ClassMetrics& m) {
        out += fmt::format("{:<10}{:>10.{}f}{:>10.{}f}{:>10.{}f}{:>10}\n", name, m.precision, digits, m.recall, digits,
                           m.f1, digits, m.support);
    };
    row("Anomaly", report.anomaly);
    row("Normal", report.normal);
    out += fmt::format("{:<10}{:>10}{:>10}{:>10.{}f}{:>10}\n", "Accuracy", "", "", report.accuracy, digits, report.total);
    return out;
}

}  // namespace tet
