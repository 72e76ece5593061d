#include "tet/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <string>

#include "tet/error.hpp"

namespace tet {
namespace {

std::size_t checked_dimension(std::span<const Point> points) {
    if (points.empty()) throw Error(ErrorKind::invalid_argument, "no points to cluster");
    const std::size_t dim = points.front().size();
    for (const auto& p : points) {
        if (p.size() != dim) throw Error(ErrorKind::invalid_argument, "points differ in dimension");
    }
    return dim;
}

double squared_distance(const Point& a, const Point& b) {
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        sum += d * d;
    }
    return sum;
}

}  // namespace

std::vector<std::size_t> ClusterAssignment::cluster_sizes() const {
    std::vector<std::size_t> sizes(cluster_count, 0);
    for (int c : cluster) {
        if (c != kNoise) ++sizes[static_cast<std::size_t>(c)];
    }
    return sizes;
}

std::vector<Point> standardize(std::span<const Point> points) {
    const std::size_t dim = checked_dimension(points);
    std::vector<Point> out(points.begin(), points.end());
    const auto n = static_cast<double>(points.size());
    for (std::size_t j = 0; j < dim; ++j) {
        double mean = 0.0;
        for (const auto& p : points) mean += p[j];
        mean /= n;
        double var = 0.0;
        for (const auto& p : points) var += (p[j] - mean) * (p[j] - mean);
        const double sd = std::sqrt(var / n);
        if (sd == 0.0) continue;
        for (auto& p : out) p[j] = (p[j] - mean) / sd;
    }
    return out;
}

ClusterAssignment dbscan(std::span<const Point> input, const DbscanParams& params) {
    checked_dimension(input);
    if (!(params.eps > 0.0)) throw Error(ErrorKind::invalid_argument, "eps must be positive");
    if (params.min_pts < 1) throw Error(ErrorKind::invalid_argument, "min_pts must be at least 1");

    std::vector<Point> scaled;
    std::span<const Point> points = input;
    if (params.standardize) {
        scaled = standardize(input);
        points = scaled;
    }
    const std::size_t n = points.size();
    const double eps2 = params.eps * params.eps;

    std::vector<std::vector<std::size_t>> neighbors(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (squared_distance(points[i], points[j]) <= eps2) neighbors[i].push_back(j);
        }
    }

    ClusterAssignment out;
    out.cluster.assign(n, kNoise);
    out.core.assign(n, false);
    for (std::size_t i = 0; i < n; ++i) out.core[i] = neighbors[i].size() >= params.min_pts;

    for (std::size_t seed = 0; seed < n; ++seed) {
        if (!out.core[seed] || out.cluster[seed] != kNoise) continue;
        const int id = static_cast<int>(out.cluster_count++);
        out.cluster[seed] = id;
        std::deque<std::size_t> frontier{seed};
        while (!frontier.empty()) {
            const std::size_t p = frontier.front();
            frontier.pop_front();
            for (std::size_t q : neighbors[p]) {
                if (out.cluster[q] != kNoise) continue;
                out.cluster[q] = id;
                if (out.core[q]) frontier.push_back(q);
            }
        }
    }
    return out;
}

std::vector<double> k_distance_curve(std::span<const Point> points, std::size_t min_pts) {
    checked_dimension(points);
    if (min_pts < 1) throw Error(ErrorKind::invalid_argument, "min_pts must be at least 1");
    const std::size_t n = points.size();
    const std::size_t rank = std::min(min_pts, n) - 1;
    std::vector<double> curve(n);
    std::vector<double> dist(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) dist[j] = squared_distance(points[i], points[j]);
        std::nth_element(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(rank), dist.end());
        curve[i] = std::sqrt(dist[rank]);
    }
    std::sort(curve.begin(), curve.end());
    return curve;
}

double knee_eps(std::span<const Point> points, std::size_t min_pts) {
    const auto curve = k_distance_curve(points, min_pts);
    double eps = curve.back();
    if (curve.size() >= 3) {
        double best = -1.0;
        for (std::size_t i = 1; i + 1 < curve.size(); ++i) {
            const double second = curve[i + 1] - 2.0 * curve[i] + curve[i - 1];
            if (second > best) {
                best = second;
                eps = curve[i];
            }
        }
    }
    if (eps > 0.0) return eps;
    const auto positive = std::upper_bound(curve.begin(), curve.end(), 0.0);
    return positive != curve.end() ? *positive : 1.0;
}

std::string_view to_string(EpsRule rule) noexcept {
    return rule == EpsRule::knee ? "knee" : "max-kdist";
}

EpsRule parse_eps_rule(std::string_view text) {
    if (text == "max-kdist") return EpsRule::max_k_distance;
    if (text == "knee") return EpsRule::knee;
    throw Error(ErrorKind::invalid_argument, "unknown eps rule '" + std::string(text) + "' (expected max-kdist or knee)");
}

double auto_eps(std::span<const Point> points, std::size_t min_pts, EpsRule rule) {
    if (rule == EpsRule::knee) return knee_eps(points, min_pts);
    const double largest = k_distance_curve(points, min_pts).back();
    return largest > 0.0 ? largest : 1.0;
}

std::string_view to_string(AnomalyRule::Kind kind) noexcept {
    return kind == AnomalyRule::Kind::noise_only ? "noise-only" : "small-clusters";
}

AnomalyRule::Kind parse_rule_kind(std::string_view text) {
    if (text == "noise-only") return AnomalyRule::Kind::noise_only;
    if (text == "small-clusters") return AnomalyRule::Kind::small_clusters;
    throw Error(ErrorKind::invalid_argument,
                "unknown anomaly rule '" + std::string(text) + "' (expected noise-only or small-clusters)");
}

std::vector<NodeLabel> to_anomaly_labels(const ClusterAssignment& assignment, const AnomalyRule& rule) {
    if (rule.kind == AnomalyRule::Kind::small_clusters && !(rule.theta > 0.0 && rule.theta < 1.0)) {
        throw Error(ErrorKind::invalid_argument, "small-clusters theta must lie in (0, 1)");
    }
    const auto sizes = assignment.cluster_sizes();
    const double threshold = rule.theta * static_cast<double>(assignment.cluster.size());
    std::vector<NodeLabel> out;
    out.reserve(assignment.cluster.size());
    for (int c : assignment.cluster) {
        bool anomalous = c == kNoise;
        if (!anomalous && rule.kind == AnomalyRule::Kind::small_clusters) {
            anomalous = static_cast<double>(sizes[static_cast<std::size_t>(c)]) < threshold;
        }
        out.push_back(anomalous ? NodeLabel::anomaly : NodeLabel::normal);
    }
    return out;
}

}  // namespace tet
