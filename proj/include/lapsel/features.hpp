#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>

#include "lapsel/cochain.hpp"
#include "lapsel/complex.hpp"

namespace lapsel {

/// How a 1-point feature is pushed onto the vertices of a higher simplex.
enum class Aggregation { Mean, Min, Max };

Aggregation aggregation_from_name(const std::string& name);
std::string aggregation_name(Aggregation agg);

/**
 * Sparse table of a q-point feature: values keyed by strictly ascending
 * sample index tuples of length `arity`. Lookups for tuples missing from
 * the table raise MissingTupleValue unless a default value is set.
 */
class QPointTable {
public:
    explicit QPointTable(int arity) : arity_(arity) {}

    int arity() const { return arity_; }

    void set(SimplexVertices tuple, double value);
    void set_default(double value) { default_value_ = value; }

    /// Value at an ascending tuple; throws MissingTupleValue when absent.
    double at(const SimplexVertices& tuple) const;

    std::size_t size() const { return values_.size(); }

private:
    int arity_;
    std::unordered_map<SimplexVertices, double, VertexVecHash> values_;
    std::optional<double> default_value_;
};

/**
 * A named batch of features over the sample set: either 1-point features
 * (one row of sample values per feature) or q-point features with arity >= 2
 * (one sparse tuple table per feature).
 */
class FeatureSet {
public:
    static FeatureSet from_matrix(std::vector<std::string> names, Eigen::MatrixXd values);
    static FeatureSet from_rows(std::vector<std::string> names,
                                std::vector<Eigen::VectorXd> rows);
    static FeatureSet from_tables(std::vector<std::string> names,
                                  std::vector<QPointTable> tables);

    int arity() const { return arity_; }
    std::size_t feature_count() const { return names_.size(); }
    const std::vector<std::string>& names() const { return names_; }
    const std::string& name(std::size_t i) const { return names_[i]; }

    const Eigen::VectorXd& point_values(std::size_t i) const { return rows_[i]; }
    const QPointTable& table(std::size_t i) const { return tables_[i]; }

private:
    int arity_ = 1;
    std::vector<std::string> names_;
    std::vector<Eigen::VectorXd> rows_;  // arity 1
    std::vector<QPointTable> tables_;    // arity >= 2
};

/**
 * q-form induced by a 1-point feature: the value on each q-simplex is the
 * aggregation of f over its vertices. At q = 0 this returns f itself for
 * every aggregation choice.
 */
Cochain induce_from_point_feature(const Eigen::VectorXd& f, const SimplicialComplex& k,
                                  int q, Aggregation agg);

/**
 * (arity-1)-form induced by a q-point feature: the value on each simplex is
 * the table entry at its ascending vertex tuple.
 */
Cochain induce_from_qpoint_feature(const QPointTable& f, const SimplicialComplex& k);

/**
 * Induces the cochain for feature `index` at dimension q, optionally after
 * relabeling samples: with `relabel` the feature value at sample i is taken
 * from sample relabel[i]. This is the primitive behind permutation nulls.
 */
Cochain induce_feature(const FeatureSet& fs, std::size_t index, const SimplicialComplex& k,
                       int q, Aggregation agg, const std::vector<VertexId>* relabel = nullptr);

enum class FeatureStatusKind { Ok, ZeroVariance, DimensionMismatch };

struct FeatureStatus {
    FeatureStatusKind kind = FeatureStatusKind::Ok;
    std::string message;
    bool ok() const { return kind == FeatureStatusKind::Ok; }
};

/**
 * Screens every feature for problems that would surface downstream —
 * wrong sample count, or a constant induced cochain (ZeroVarianceFeature) —
 * reporting per-feature statuses without aborting the batch.
 */
std::vector<FeatureStatus> validate_features(const FeatureSet& fs, const SimplicialComplex& k,
                                             int q, Aggregation agg);

} // namespace lapsel
