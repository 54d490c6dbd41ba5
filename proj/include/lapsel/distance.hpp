#pragma once

#include <Eigen/Dense>

#include "lapsel/errors.hpp"

namespace lapsel {

enum class Metric { Euclidean, Correlation };

/**
 * Symmetric matrix of pairwise nonnegative dissimilarities over n samples.
 * The triangle inequality is not required; semi-metrics are accepted.
 */
class DistanceMatrix {
public:
    /// Validates symmetry, zero diagonal and nonnegativity.
    explicit DistanceMatrix(Eigen::MatrixXd d);

    int size() const { return static_cast<int>(d_.rows()); }
    double operator()(int i, int j) const { return d_(i, j); }
    const Eigen::MatrixXd& matrix() const { return d_; }

private:
    Eigen::MatrixXd d_;
};

/**
 * Pairwise distances between the rows of an n x p coordinate matrix.
 *
 * Euclidean is the L2 norm of row differences; Correlation is
 * 1 - Pearson(r_i, r_j), with range [0, 2]. The correlation metric
 * requires every row to have nonzero variance (ZeroVarianceRow).
 */
DistanceMatrix compute_distances(const Eigen::MatrixXd& points, Metric metric);

} // namespace lapsel
