#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "tet/synthgen.hpp"

namespace tet {

using Point = std::vector<double>;

struct DbscanParams {
    double eps{0.0};
    std::size_t min_pts{4};
    /// z-score every dimension first; zero-variance dimensions are left as-is.
    bool standardize{false};
};

inline constexpr int kNoise = -1;

struct ClusterAssignment {
    /// Cluster id per point (0-based, ordered by first core point) or kNoise.
    std::vector<int> cluster;
    std::vector<bool> core;
    std::size_t cluster_count{0};

    [[nodiscard]] std::vector<std::size_t> cluster_sizes() const;
};

/// Per-dimension z-scores (population standard deviation).
std::vector<Point> standardize(std::span<const Point> points);

/// DBSCAN with inclusive eps balls that count the point itself. Clusters are
/// grown in ascending index order, so a border point reachable from several
/// clusters joins the first one that reaches it.
ClusterAssignment dbscan(std::span<const Point> points, const DbscanParams& params);

/// Sorted distances from each point to its min_pts-th nearest point
/// (the point itself counts as the first).
std::vector<double> k_distance_curve(std::span<const Point> points, std::size_t min_pts);

/// eps at the knee (largest second difference) of the k-distance curve.
/// Falls back to the smallest positive k-distance when the knee sits at 0,
/// and to 1.0 when every distance is 0.
double knee_eps(std::span<const Point> points, std::size_t min_pts);

/// How eps is chosen when not given explicitly.
enum class EpsRule {
    max_k_distance,  // largest k-distance: every point is core, clusters are eps-connected components
    knee,            // knee_eps
};

std::string_view to_string(EpsRule rule) noexcept;
EpsRule parse_eps_rule(std::string_view text);

double auto_eps(std::span<const Point> points, std::size_t min_pts, EpsRule rule);

struct AnomalyRule {
    enum class Kind { noise_only, small_clusters };
    Kind kind{Kind::small_clusters};
    /// small_clusters: clusters smaller than theta * point count are anomalous.
    double theta{0.5};
};

std::string_view to_string(AnomalyRule::Kind kind) noexcept;
AnomalyRule::Kind parse_rule_kind(std::string_view text);

std::vector<NodeLabel> to_anomaly_labels(const ClusterAssignment& assignment, const AnomalyRule& rule);

}  // namespace tet
