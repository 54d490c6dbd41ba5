#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "lapsel/distance.hpp"
#include "lapsel/features.hpp"
#include "lapsel/inference.hpp"

namespace lapsel {

/// Shortest-but-stable decimal rendering used for all numeric TSV output.
std::string format_double(double x);

/**
 * Reads a numeric CSV/TSV matrix (delimiter sniffed per file, optional
 * header row detected when any cell of the first row fails to parse as a
 * number). Rows must have equal length; errors carry file and line.
 */
Eigen::MatrixXd read_matrix(const std::filesystem::path& path);

/**
 * Reads a precomputed distance matrix: square, symmetric, zero diagonal,
 * nonnegative. Violations raise ParseError naming the offending cell.
 */
DistanceMatrix read_distance_matrix(const std::filesystem::path& path);

/**
 * Reads 1-point features: one row per feature, first column the feature
 * name, remaining columns the per-sample values. Header row optional.
 */
FeatureSet read_point_features(const std::filesystem::path& path);

/**
 * Reads 2-point features as TSV triplets (i, j, value) with i < j; an
 * optional leading name column groups triplets into named features
 * (3 columns: a single feature named "pairs").
 */
FeatureSet read_pair_features(const std::filesystem::path& path);

void write_score_report(std::ostream& out, const ScoreReport& report);
void write_sweep_result(std::ostream& out, const SweepResult& sweep);

/// Eigenmap TSV: simplex id column (vertices joined by '-') + m coordinates.
void write_eigenmap(std::ostream& out, const SimplicialComplex& k, int q,
                    const Eigen::MatrixXd& coords);

} // namespace lapsel
