#include "tet/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <random>
#include <string>

#include "tet/error.hpp"

namespace tet {
namespace {

std::vector<double> weighted_degrees(const WeightedGraph& graph) {
    std::vector<double> degree(graph.node_count, 0.0);
    for (const auto& [edge, weight] : graph.edges) {
        degree[edge.u] += weight;
        degree[edge.v] += weight;
    }
    return degree;
}

void normalize_signs(Eigen::MatrixXd& vectors) {
    for (Eigen::Index j = 0; j < vectors.cols(); ++j) {
        for (Eigen::Index i = 0; i < vectors.rows(); ++i) {
            if (std::abs(vectors(i, j)) > 1e-12) {
                if (vectors(i, j) < 0.0) vectors.col(j) *= -1.0;
                break;
            }
        }
    }
}

std::vector<double> residuals_of(const Eigen::SparseMatrix<double>& lap, const Eigen::MatrixXd& vectors,
                                 const Eigen::VectorXd& values) {
    std::vector<double> out;
    for (Eigen::Index j = 0; j < vectors.cols(); ++j) {
        const Eigen::VectorXd x = vectors.col(j);
        out.push_back((lap * x - values(j) * x).norm() / x.norm());
    }
    return out;
}

SpectralEmbedding dense_solve(const Eigen::SparseMatrix<double>& lap, std::size_t dim) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(Eigen::MatrixXd(lap), Eigen::ComputeEigenvectors);
    if (solver.info() != Eigen::Success) throw Error(ErrorKind::convergence, "dense eigensolver failed");
    const auto k = static_cast<Eigen::Index>(dim);
    SpectralEmbedding out;
    out.coordinates = solver.eigenvectors().leftCols(k);
    const Eigen::VectorXd values = solver.eigenvalues().head(k);
    out.eigenvalues.assign(values.data(), values.data() + k);
    out.residuals = residuals_of(lap, out.coordinates, values);
    return out;
}

/// Block power iteration with Rayleigh-Ritz on shift*I - L, whose dominant
/// eigenvectors are the smallest eigenvectors of L.
SpectralEmbedding subspace_solve(const Eigen::SparseMatrix<double>& lap, const SpectralParams& params, double shift) {
    const Eigen::Index n = lap.rows();
    const auto k = static_cast<Eigen::Index>(params.dim);
    const Eigen::Index block = std::min<Eigen::Index>(n, std::max<Eigen::Index>(2 * k, k + 8));

    std::mt19937_64 rng(0x5eed);
    std::normal_distribution<double> gauss;
    Eigen::MatrixXd basis(n, block);
    for (Eigen::Index i = 0; i < basis.size(); ++i) basis.data()[i] = gauss(rng);

    auto apply = [&](const Eigen::MatrixXd& x) -> Eigen::MatrixXd { return shift * x - lap * x; };

    double worst = std::numeric_limits<double>::infinity();
    for (std::size_t iter = 0; iter < params.max_iter; ++iter) {
        Eigen::HouseholderQR<Eigen::MatrixXd> qr(apply(basis));
        const Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(n, block);
        const Eigen::MatrixXd projected = q.transpose() * apply(q);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ritz(0.5 * (projected + projected.transpose()));
        // ascending in the shifted operator: largest last
        const Eigen::MatrixXd ritz_vectors = ritz.eigenvectors().rowwise().reverse();
        basis = q * ritz_vectors;

        Eigen::VectorXd values(k);
        for (Eigen::Index j = 0; j < k; ++j) values(j) = shift - ritz.eigenvalues()(block - 1 - j);
        const Eigen::MatrixXd leading = basis.leftCols(k);
        const auto residuals = residuals_of(lap, leading, values);
        worst = *std::max_element(residuals.begin(), residuals.end());
        if (worst <= 0.5 * params.tol) {
            SpectralEmbedding out;
            out.coordinates = leading;
            out.eigenvalues.assign(values.data(), values.data() + k);
            out.residuals = residuals;
            return out;
        }
    }
    throw Error(ErrorKind::convergence, "subspace iteration did not converge in " + std::to_string(params.max_iter) +
                                            " iterations; worst residual " + std::to_string(worst));
}

}  // namespace

WeightedGraph union_graph(const TemporalGraph& graph) {
    std::map<Edge, std::uint32_t> weights;
    for (const auto& snapshot : graph.snapshots()) {
        for (const Edge& e : snapshot.edges()) ++weights[e];
    }
    WeightedGraph out{graph.node_count(), {}};
    out.edges.reserve(weights.size());
    for (const auto& [edge, weight] : weights) out.edges.push_back({edge, weight});
    return out;
}

Eigen::SparseMatrix<double> combinatorial_laplacian(const WeightedGraph& graph) {
    const auto n = static_cast<Eigen::Index>(graph.node_count);
    const auto degree = weighted_degrees(graph);
    std::vector<Eigen::Triplet<double>> entries;
    for (Eigen::Index i = 0; i < n; ++i) {
        if (degree[static_cast<std::size_t>(i)] > 0.0) entries.emplace_back(i, i, degree[static_cast<std::size_t>(i)]);
    }
    for (const auto& [edge, weight] : graph.edges) {
        entries.emplace_back(edge.u, edge.v, -static_cast<double>(weight));
        entries.emplace_back(edge.v, edge.u, -static_cast<double>(weight));
    }
    Eigen::SparseMatrix<double> lap(n, n);
    lap.setFromTriplets(entries.begin(), entries.end());
    return lap;
}

Eigen::SparseMatrix<double> normalized_laplacian(const WeightedGraph& graph) {
    const auto n = static_cast<Eigen::Index>(graph.node_count);
    const auto degree = weighted_degrees(graph);
    std::vector<Eigen::Triplet<double>> entries;
    for (Eigen::Index i = 0; i < n; ++i) {
        if (degree[static_cast<std::size_t>(i)] > 0.0) entries.emplace_back(i, i, 1.0);
    }
    for (const auto& [edge, weight] : graph.edges) {
        const double value = -static_cast<double>(weight) / std::sqrt(degree[edge.u] * degree[edge.v]);
        entries.emplace_back(edge.u, edge.v, value);
        entries.emplace_back(edge.v, edge.u, value);
    }
    Eigen::SparseMatrix<double> lap(n, n);
    lap.setFromTriplets(entries.begin(), entries.end());
    return lap;
}

SpectralEmbedding spectral_embed(const WeightedGraph& graph, const SpectralParams& params) {
    if (params.dim < 1 || params.dim > graph.node_count) {
        throw Error(ErrorKind::invalid_argument, "spectral dimension must be in 1..node_count");
    }
    if (!(params.tol > 0.0)) throw Error(ErrorKind::invalid_argument, "eigen tolerance must be positive");
    const auto lap = params.normalized ? normalized_laplacian(graph) : combinatorial_laplacian(graph);

    const bool dense = params.method == EigenMethod::dense ||
                       (params.method == EigenMethod::automatic && graph.node_count <= params.dense_limit);
    SpectralEmbedding out;
    if (dense) {
        out = dense_solve(lap, params.dim);
    } else {
        // Gershgorin: the spectrum lies in [0, 2] (normalized) or [0, 2 * max degree].
        const auto degree = weighted_degrees(graph);
        const double max_degree = degree.empty() ? 0.0 : *std::max_element(degree.begin(), degree.end());
        out = subspace_solve(lap, params, params.normalized ? 2.0 : 2.0 * std::max(max_degree, 1.0));
    }
    const double worst = *std::max_element(out.residuals.begin(), out.residuals.end());
    if (worst > params.tol) {
        throw Error(ErrorKind::convergence, "eigen residual " + std::to_string(worst) + " exceeds tolerance");
    }
    normalize_signs(out.coordinates);
    return out;
}

std::vector<std::array<double, 2>> pca_project(std::span<const Point> points) {
    if (points.size() < 2) throw Error(ErrorKind::invalid_argument, "projection needs at least 2 points");
    const std::size_t dim = points.front().size();
    for (const auto& p : points) {
        if (p.size() != dim) throw Error(ErrorKind::invalid_argument, "points differ in dimension");
    }
    const auto n = static_cast<Eigen::Index>(points.size());
    Eigen::MatrixXd data(n, static_cast<Eigen::Index>(dim));
    for (Eigen::Index i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < dim; ++j) data(i, static_cast<Eigen::Index>(j)) = points[static_cast<std::size_t>(i)][j];
    }
    data.rowwise() -= data.colwise().mean();

    std::vector<std::array<double, 2>> out(points.size(), {0.0, 0.0});
    if (dim == 0 || data.cwiseAbs().maxCoeff() == 0.0) return out;

    const Eigen::MatrixXd covariance = data.transpose() * data / static_cast<double>(n);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(covariance);
    const Eigen::Index components = std::min<Eigen::Index>(2, static_cast<Eigen::Index>(dim));
    Eigen::MatrixXd directions(static_cast<Eigen::Index>(dim), components);
    for (Eigen::Index c = 0; c < components; ++c) {
        directions.col(c) = solver.eigenvectors().col(static_cast<Eigen::Index>(dim) - 1 - c);
    }
    normalize_signs(directions);
    const Eigen::MatrixXd projected = data * directions;
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index c = 0; c < components; ++c) out[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)] = projected(i, c);
    }
    return out;
}

}  // namespace tet
