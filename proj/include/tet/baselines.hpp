#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "tet/clustering.hpp"
#include "tet/graph.hpp"

namespace tet {

struct WeightedEdge {
    Edge edge;
    std::uint32_t weight{1};
};

struct WeightedGraph {
    std::size_t node_count{0};
    std::vector<WeightedEdge> edges;  // sorted by edge
};

/// Collapses the snapshots; each edge is weighted by the number of snapshots containing it.
WeightedGraph union_graph(const TemporalGraph& graph);

enum class EigenMethod { automatic, dense, subspace_iteration };

struct SpectralParams {
    std::size_t dim{2};
    double tol{1e-8};
    std::size_t max_iter{20000};
    /// false selects the combinatorial Laplacian D - W.
    bool normalized{true};
    EigenMethod method{EigenMethod::automatic};
    /// automatic switches to subspace iteration above this node count.
    std::size_t dense_limit{2000};
};

struct SpectralEmbedding {
    Eigen::MatrixXd coordinates;  // node_count x dim, column j = j-th eigenvector
    std::vector<double> eigenvalues;
    std::vector<double> residuals;  // ||L x - lambda x|| / ||x||
};

/// I - D^{-1/2} W D^{-1/2}; rows of isolated nodes are all zero.
Eigen::SparseMatrix<double> normalized_laplacian(const WeightedGraph& graph);
Eigen::SparseMatrix<double> combinatorial_laplacian(const WeightedGraph& graph);

/// The dim eigenpairs with smallest eigenvalues, including the trivial one.
/// Throws ErrorKind::convergence with the achieved residual when max_iter is hit.
SpectralEmbedding spectral_embed(const WeightedGraph& graph, const SpectralParams& params);

/// Centers and projects onto the top two principal directions. Each direction
/// is signed so its first nonzero coordinate is positive. Identical points
/// project to the origin.
std::vector<std::array<double, 2>> pca_project(std::span<const Point> points);

}  // namespace tet
