#include "lapsel/features.hpp"

#include <algorithm>

namespace lapsel {

Aggregation aggregation_from_name(const std::string& name) {
    if (name == "mean") return Aggregation::Mean;
    if (name == "min") return Aggregation::Min;
    if (name == "max") return Aggregation::Max;
    throw InvalidArgument("unknown aggregation: " + name);
}

std::string aggregation_name(Aggregation agg) {
    switch (agg) {
        case Aggregation::Mean: return "mean";
        case Aggregation::Min: return "min";
        case Aggregation::Max: return "max";
    }
    return "mean";
}

void QPointTable::set(SimplexVertices tuple, double value) {
    if (static_cast<int>(tuple.size()) != arity_) {
        throw DimensionMismatch("tuple length does not match table arity");
    }
    if (!strictly_ascending(tuple)) {
        throw InvalidArgument("q-point tuples must be strictly ascending: " +
                              simplex_label(tuple));
    }
    values_[std::move(tuple)] = value;
}

double QPointTable::at(const SimplexVertices& tuple) const {
    auto it = values_.find(tuple);
    if (it != values_.end()) return it->second;
    if (default_value_) return *default_value_;
    throw MissingTupleValue("no value for tuple " + simplex_label(tuple));
}

FeatureSet FeatureSet::from_matrix(std::vector<std::string> names, Eigen::MatrixXd values) {
    if (static_cast<Eigen::Index>(names.size()) != values.rows()) {
        throw DimensionMismatch("feature names do not match matrix rows");
    }
    FeatureSet fs;
    fs.arity_ = 1;
    fs.names_ = std::move(names);
    fs.rows_.reserve(fs.names_.size());
    for (Eigen::Index i = 0; i < values.rows(); ++i) {
        fs.rows_.push_back(values.row(i).transpose());
    }
    return fs;
}

FeatureSet FeatureSet::from_rows(std::vector<std::string> names,
                                 std::vector<Eigen::VectorXd> rows) {
    if (names.size() != rows.size()) {
        throw DimensionMismatch("feature names do not match row count");
    }
    FeatureSet fs;
    fs.arity_ = 1;
    fs.names_ = std::move(names);
    fs.rows_ = std::move(rows);
    return fs;
}

FeatureSet FeatureSet::from_tables(std::vector<std::string> names,
                                   std::vector<QPointTable> tables) {
    if (names.size() != tables.size()) {
        throw DimensionMismatch("feature names do not match table count");
    }
    if (tables.empty()) throw InvalidArgument("empty q-point feature set");
    FeatureSet fs;
    fs.arity_ = tables.front().arity();
    for (const auto& t : tables) {
        if (t.arity() != fs.arity_) throw DimensionMismatch("mixed arities in feature set");
    }
    if (fs.arity_ < 2) throw InvalidArgument("q-point tables need arity >= 2");
    fs.names_ = std::move(names);
    fs.tables_ = std::move(tables);
    return fs;
}

Cochain induce_from_point_feature(const Eigen::VectorXd& f, const SimplicialComplex& k,
                                  int q, Aggregation agg) {
    if (q < 0) throw InvalidArgument("cochain dimension must be nonnegative");
    if (k.simplex_count(q) == 0) {
        throw NoSimplicesAtDimension("no simplices at dimension " + std::to_string(q));
    }
    if (f.size() != k.vertex_count()) {
        throw DimensionMismatch("feature has " + std::to_string(f.size()) +
                                " values for " + std::to_string(k.vertex_count()) + " samples");
    }
    const std::int64_t count = k.simplex_count(q);
    Eigen::VectorXd out(count);
    for (std::int64_t i = 0; i < count; ++i) {
        auto verts = k.simplex_vertices(q, i);
        double v = f[verts[0]];
        switch (agg) {
            case Aggregation::Mean:
                for (std::size_t j = 1; j < verts.size(); ++j) v += f[verts[j]];
                v /= static_cast<double>(verts.size());
                break;
            case Aggregation::Min:
                for (std::size_t j = 1; j < verts.size(); ++j) v = std::min(v, f[verts[j]]);
                break;
            case Aggregation::Max:
                for (std::size_t j = 1; j < verts.size(); ++j) v = std::max(v, f[verts[j]]);
                break;
        }
        out[i] = v;
    }
    return {q, std::move(out)};
}

Cochain induce_from_qpoint_feature(const QPointTable& f, const SimplicialComplex& k) {
    const int q = f.arity() - 1;
    if (k.simplex_count(q) == 0) {
        throw NoSimplicesAtDimension("no simplices at dimension " + std::to_string(q));
    }
    const std::int64_t count = k.simplex_count(q);
    Eigen::VectorXd out(count);
    SimplexVertices key(static_cast<std::size_t>(q) + 1);
    for (std::int64_t i = 0; i < count; ++i) {
        auto verts = k.simplex_vertices(q, i);
        std::copy(verts.begin(), verts.end(), key.begin());
        out[i] = f.at(key);
    }
    return {q, std::move(out)};
}

Cochain induce_feature(const FeatureSet& fs, std::size_t index, const SimplicialComplex& k,
                       int q, Aggregation agg, const std::vector<VertexId>* relabel) {
    if (fs.arity() == 1) {
        const Eigen::VectorXd& f = fs.point_values(index);
        if (!relabel) return induce_from_point_feature(f, k, q, agg);
        if (static_cast<Eigen::Index>(relabel->size()) != f.size()) {
            throw DimensionMismatch("relabeling does not match the sample count");
        }
        Eigen::VectorXd g(f.size());
        for (Eigen::Index i = 0; i < f.size(); ++i) g[i] = f[(*relabel)[i]];
        return induce_from_point_feature(g, k, q, agg);
    }

    if (q != fs.arity() - 1) {
        throw DimensionMismatch("arity-" + std::to_string(fs.arity()) +
                                " features induce " + std::to_string(fs.arity() - 1) +
                                "-forms, not " + std::to_string(q) + "-forms");
    }
    const QPointTable& table = fs.table(index);
    if (!relabel) return induce_from_qpoint_feature(table, k);

    // Relabeled q-point feature: look up the sorted image tuple.
    const std::int64_t count = k.simplex_count(q);
    if (count == 0) {
        throw NoSimplicesAtDimension("no simplices at dimension " + std::to_string(q));
    }
    Eigen::VectorXd out(count);
    SimplexVertices key(static_cast<std::size_t>(q) + 1);
    for (std::int64_t i = 0; i < count; ++i) {
        auto verts = k.simplex_vertices(q, i);
        for (std::size_t j = 0; j < key.size(); ++j) key[j] = (*relabel)[verts[j]];
        std::sort(key.begin(), key.end());
        out[i] = table.at(key);
    }
    return {q, std::move(out)};
}

std::vector<FeatureStatus> validate_features(const FeatureSet& fs, const SimplicialComplex& k,
                                             int q, Aggregation agg) {
    std::vector<FeatureStatus> statuses(fs.feature_count());
    for (std::size_t i = 0; i < fs.feature_count(); ++i) {
        auto& status = statuses[i];
        if (fs.arity() == 1 && fs.point_values(i).size() != k.vertex_count()) {
            status.kind = FeatureStatusKind::DimensionMismatch;
            status.message = "expected " + std::to_string(k.vertex_count()) + " values, got " +
                             std::to_string(fs.point_values(i).size());
            continue;
        }
        try {
            Cochain c = induce_feature(fs, i, k, q, agg);
            Cochain centered = center_cochain(c, k);
            auto w = k.weight_vector(q);
            const double norm2 = (w.array() * centered.values.array().square()).sum();
            const double raw = (w.array() * c.values.array().square()).sum();
            if (!(norm2 > 1e-12 * std::max(1.0, raw))) {
                status.kind = FeatureStatusKind::ZeroVariance;
                status.message = "constant after induction";
            }
        } catch (const DimensionMismatch& e) {
            status.kind = FeatureStatusKind::DimensionMismatch;
            status.message = e.what();
        } catch (const MissingTupleValue& e) {
            status.kind = FeatureStatusKind::DimensionMismatch;
            status.message = e.what();
        }
    }
    return statuses;
}

} // namespace lapsel
