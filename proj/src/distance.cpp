#include "lapsel/distance.hpp"

#include <cmath>
#include <string>

namespace lapsel {

DistanceMatrix::DistanceMatrix(Eigen::MatrixXd d) : d_(std::move(d)) {
    const Eigen::Index n = d_.rows();
    if (n == 0 || d_.cols() != n) {
        throw DimensionMismatch("distance matrix must be square and nonempty");
    }
    for (Eigen::Index i = 0; i < n; ++i) {
        if (d_(i, i) != 0.0) {
            throw InvalidArgument("distance matrix diagonal must be zero at (" +
                                  std::to_string(i) + "," + std::to_string(i) + ")");
        }
        for (Eigen::Index j = i + 1; j < n; ++j) {
            if (d_(i, j) != d_(j, i)) {
                throw InvalidArgument("distance matrix not symmetric at (" +
                                      std::to_string(i) + "," + std::to_string(j) + ")");
            }
            if (!(d_(i, j) >= 0.0)) {
                throw InvalidArgument("negative or invalid distance at (" +
                                      std::to_string(i) + "," + std::to_string(j) + ")");
            }
        }
    }
}

DistanceMatrix compute_distances(const Eigen::MatrixXd& points, Metric metric) {
    const Eigen::Index n = points.rows();
    const Eigen::Index p = points.cols();
    if (n < 2 || p < 1) {
        throw DimensionMismatch("need at least 2 samples and 1 coordinate, got " +
                                std::to_string(n) + "x" + std::to_string(p));
    }

    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
    if (metric == Metric::Euclidean) {
        for (Eigen::Index i = 0; i < n; ++i) {
            for (Eigen::Index j = i + 1; j < n; ++j) {
                double v = (points.row(i) - points.row(j)).norm();
                d(i, j) = v;
                d(j, i) = v;
            }
        }
        return DistanceMatrix(std::move(d));
    }

    // Correlation distance 1 - r: precompute centered, normalized rows.
    Eigen::MatrixXd z(n, p);
    for (Eigen::Index i = 0; i < n; ++i) {
        Eigen::RowVectorXd row = points.row(i);
        row.array() -= row.mean();
        double norm = row.norm();
        if (norm == 0.0) {
            throw ZeroVarianceRow("row " + std::to_string(i) +
                                  " has zero variance; correlation distance undefined");
        }
        z.row(i) = row / norm;
    }
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i + 1; j < n; ++j) {
            double r = z.row(i).dot(z.row(j));
            r = std::min(1.0, std::max(-1.0, r));
            double v = 1.0 - r;
            d(i, j) = v;
            d(j, i) = v;
        }
    }
    return DistanceMatrix(std::move(d));
}

} // namespace lapsel
