// Shared fixtures and independent oracles for the test suites. Oracles here
// deliberately avoid the library's own code paths: graph scores are computed
// from dense matrix formulas, ranks and eigenpairs from dense solvers, and
// Vietoris-Rips memberships by brute-force clique checks.
#pragma once

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "lapsel/complex.hpp"
#include "lapsel/distance.hpp"
#include "lapsel/rng.hpp"

namespace testsupport {

using lapsel::SimplexVertices;
using lapsel::SimplicialComplex;
using lapsel::VertexId;

// ---------------------------------------------------------------- fixtures

/// Triangle graph K3 (no 2-simplex).
inline SimplicialComplex k3_graph() {
    return SimplicialComplex::from_simplices(3, {{{0}, {1}, {2}}, {{0, 1}, {0, 2}, {1, 2}}});
}

/// Filled triangle.
inline SimplicialComplex k3_filled() {
    return SimplicialComplex::from_simplices(
        3, {{{0}, {1}, {2}}, {{0, 1}, {0, 2}, {1, 2}}, {{0, 1, 2}}});
}

/// Path 0-1-2.
inline SimplicialComplex p3_path() {
    return SimplicialComplex::from_simplices(3, {{{0}, {1}, {2}}, {{0, 1}, {1, 2}}});
}

/// Cycle graph C_n.
inline SimplicialComplex cycle(int n) {
    std::vector<SimplexVertices> vertices;
    std::vector<SimplexVertices> edges;
    for (VertexId v = 0; v < n; ++v) vertices.push_back({v});
    for (VertexId v = 0; v + 1 < n; ++v) edges.push_back({v, static_cast<VertexId>(v + 1)});
    edges.push_back({0, static_cast<VertexId>(n - 1)});
    return SimplicialComplex::from_simplices(n, {vertices, edges});
}

/// All proper faces of the 3-simplex {0,1,2,3} (a 2-sphere).
inline SimplicialComplex tetrahedron_boundary() {
    return SimplicialComplex::from_simplices(
        4, {{{0}, {1}, {2}, {3}},
            {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}},
            {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}}});
}

/// Two disjoint filled triangles.
inline SimplicialComplex two_triangles() {
    return SimplicialComplex::from_simplices(
        6, {{{0}, {1}, {2}, {3}, {4}, {5}},
            {{0, 1}, {0, 2}, {1, 2}, {3, 4}, {3, 5}, {4, 5}},
            {{0, 1, 2}, {3, 4, 5}}});
}

/// Two disjoint triangle graphs (1-skeleton of two_triangles).
inline SimplicialComplex two_k3_graphs() {
    return SimplicialComplex::from_simplices(
        6, {{{0}, {1}, {2}, {3}, {4}, {5}},
            {{0, 1}, {0, 2}, {1, 2}, {3, 4}, {3, 5}, {4, 5}}});
}

// ------------------------------------------------------- random test data

/// Random points in [0,1]^dim.
inline Eigen::MatrixXd random_points(int n, int dim, lapsel::SubstreamRng& rng) {
    Eigen::MatrixXd points(n, dim);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < dim; ++j) points(i, j) = rng.next_unit();
    }
    return points;
}

/// Random VR complex on <= max_n points with a random mid-range epsilon.
inline SimplicialComplex random_vr_complex(lapsel::SubstreamRng& rng, int max_n, int max_dim,
                                           lapsel::DistanceMatrix* dist_out = nullptr,
                                           double* eps_out = nullptr) {
    const int n = 3 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(max_n - 2)));
    Eigen::MatrixXd points = random_points(n, 2, rng);
    lapsel::DistanceMatrix dist = lapsel::compute_distances(points, lapsel::Metric::Euclidean);
    double lo = 1e9, hi = 0;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            lo = std::min(lo, dist(i, j));
            hi = std::max(hi, dist(i, j));
        }
    }
    const double eps = lo + (0.2 + 0.7 * rng.next_unit()) * (hi - lo);
    if (dist_out) *dist_out = dist;
    if (eps_out) *eps_out = eps;
    return lapsel::build_vietoris_rips(dist, eps, max_dim);
}

// ----------------------------------------------------------- dense oracles

/**
 * Graph Laplacian score computed straight from the dense formulas:
 * w_i = sum_j A_ij, L = I - diag(w)^{-1} A, centering by the weighted mean,
 * score = <f~, L f~>_w / <f~, f~>_w. Isolated vertices keep weight `floor`.
 */
inline double graph_laplacian_score_oracle(const Eigen::MatrixXd& adjacency,
                                           const Eigen::VectorXd& f, double floor = 1e-12) {
    const Eigen::Index n = adjacency.rows();
    Eigen::VectorXd w = adjacency.rowwise().sum();
    for (Eigen::Index i = 0; i < n; ++i) w[i] = std::max(w[i], floor);
    Eigen::MatrixXd laplacian =
        Eigen::MatrixXd::Identity(n, n) - w.cwiseInverse().asDiagonal() * adjacency;
    const double mean = w.dot(f) / w.sum();
    Eigen::VectorXd centered = f.array() - mean;
    const double denom = centered.dot(w.asDiagonal() * centered);
    return centered.dot(w.asDiagonal() * (laplacian * centered)) / denom;
}

/// Dense rank with relative threshold 1e-9; used as the Betti oracle route.
inline Eigen::Index dense_rank_oracle(const Eigen::MatrixXd& m) {
    if (m.size() == 0) return 0;
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(m);
    qr.setThreshold(1e-9);
    return qr.rank();
}

/**
 * Generalized symmetric eigensolve of (M, W): an independent dense route to
 * the weighted eigenproblem L y = lambda y with M = W L. Returns ascending
 * eigenvalues and W-orthonormal eigenvectors.
 */
inline void generalized_eig_oracle(const Eigen::MatrixXd& form, const Eigen::VectorXd& weights,
                                   Eigen::VectorXd& values, Eigen::MatrixXd& vectors) {
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> solver(
        form, Eigen::MatrixXd(weights.asDiagonal()));
    values = solver.eigenvalues();
    vectors = solver.eigenvectors();
}

// ----------------------------------------------------------- statistics

/// Two-sided Kolmogorov-Smirnov statistic against U(0,1).
inline double ks_statistic_uniform(std::vector<double> samples) {
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double cdf = samples[i];
        d = std::max(d, std::abs((static_cast<double>(i) + 1.0) / n - cdf));
        d = std::max(d, std::abs(cdf - static_cast<double>(i) / n));
    }
    return d;
}

/// AUC of `score` for separating positives (label true) from negatives.
inline double auc(const std::vector<double>& score, const std::vector<bool>& positive) {
    std::vector<std::size_t> order(score.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return score[a] < score[b]; });
    // Rank-sum with midranks for ties.
    std::vector<double> rank(score.size());
    std::size_t i = 0;
    while (i < order.size()) {
        std::size_t j = i;
        while (j + 1 < order.size() && score[order[j + 1]] == score[order[i]]) ++j;
        const double mid = 0.5 * (static_cast<double>(i) + static_cast<double>(j)) + 1.0;
        for (std::size_t r = i; r <= j; ++r) rank[order[r]] = mid;
        i = j + 1;
    }
    double pos_rank_sum = 0.0;
    double n_pos = 0.0;
    for (std::size_t r = 0; r < score.size(); ++r) {
        if (positive[r]) {
            pos_rank_sum += rank[r];
            n_pos += 1.0;
        }
    }
    const double n_neg = static_cast<double>(score.size()) - n_pos;
    return (pos_rank_sum - n_pos * (n_pos + 1.0) / 2.0) / (n_pos * n_neg);
}

// ----------------------------------------------------------- synthetic data

/// Two Gaussian blobs in R^dim separated by `separation` along axis 0.
inline Eigen::MatrixXd two_cluster_points(int n_per_cluster, int dim, double separation,
                                          lapsel::SubstreamRng& rng, std::vector<bool>* label) {
    const int n = 2 * n_per_cluster;
    Eigen::MatrixXd points(n, dim);
    if (label) label->assign(n, false);
    for (int i = 0; i < n; ++i) {
        const bool second = i >= n_per_cluster;
        if (label && second) (*label)[i] = true;
        for (int j = 0; j < dim; ++j) {
            points(i, j) = rng.next_gaussian() + (second && j == 0 ? separation : 0.0);
        }
    }
    return points;
}

/**
 * Feature matrix over two-cluster samples: the first `n_informative` rows
 * shift by +-delta with the cluster label, the rest are pure noise with the
 * same marginal variance (so variance cannot separate them).
 */
inline Eigen::MatrixXd cluster_features(int n_features, int n_informative,
                                        const std::vector<bool>& label, double delta,
                                        double sigma, lapsel::SubstreamRng& rng) {
    const int n = static_cast<int>(label.size());
    const double null_sd = std::sqrt(delta * delta + sigma * sigma);
    Eigen::MatrixXd features(n_features, n);
    for (int r = 0; r < n_features; ++r) {
        for (int c = 0; c < n; ++c) {
            if (r < n_informative) {
                features(r, c) = (label[c] ? delta : -delta) + sigma * rng.next_gaussian();
            } else {
                features(r, c) = null_sd * rng.next_gaussian();
            }
        }
    }
    return features;
}

/// n points on a radius-1 circle with radial gaussian noise.
inline Eigen::MatrixXd circle_points(int n, double noise, lapsel::SubstreamRng& rng,
                                     std::vector<double>* angles = nullptr) {
    Eigen::MatrixXd points(n, 2);
    if (angles) angles->resize(n);
    for (int i = 0; i < n; ++i) {
        const double theta = 2.0 * M_PI * (static_cast<double>(i) + rng.next_unit()) /
                             static_cast<double>(n);
        const double r = 1.0 + noise * rng.next_gaussian();
        points(i, 0) = r * std::cos(theta);
        points(i, 1) = r * std::sin(theta);
        if (angles) (*angles)[i] = theta;
    }
    return points;
}

// ----------------------------------------------------------- file helpers

/// Unique scratch directory under the system temp dir, removed on destruction.
class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        static int counter = 0;
        path_ = std::filesystem::temp_directory_path() /
                ("lapsel_" + tag + "_" + std::to_string(::getpid()) + "_" +
                 std::to_string(counter++));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    std::filesystem::path file(const std::string& name) const { return path_ / name; }

private:
    std::filesystem::path path_;
};

inline void write_text(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
}

inline std::string read_text(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

} // namespace testsupport
