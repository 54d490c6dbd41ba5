#include "lapsel/inference.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "lapsel/parallel.hpp"
#include "lapsel/rng.hpp"

namespace lapsel {

namespace {

/**
 * Per-worker scoring kernel. Holds the assembled Laplacian plus scratch
 * buffers so that one observed score and its permutation replicas run
 * without allocation in the hot loop.
 */
class FeatureScorer {
public:
    FeatureScorer(const SimplicialComplex& k, const LaplacianOperator& L, int q, Aggregation agg)
        : k_(k), L_(L), q_(q), agg_(agg), weights_(L.simplex_weights()),
          weight_sum_(weights_.sum()) {}

    /// Score of feature `index`, optionally relabeled; nullopt for
    /// zero-variance (constant after induction) features.
    std::optional<double> score(const FeatureSet& fs, std::size_t index,
                                const std::vector<VertexId>* relabel) {
        Cochain c = induce_feature(fs, index, k_, q_, agg_, relabel);
        const double mean = weights_.dot(c.values) / weight_sum_;
        centered_ = c.values.array() - mean;
        const double denom = (weights_.array() * centered_.array().square()).sum();
        const double raw = (weights_.array() * c.values.array().square()).sum();
        if (!(denom > 1e-12 * std::max(1.0, raw))) return std::nullopt;
        return L_.quadratic_form(centered_) / denom;
    }

private:
    const SimplicialComplex& k_;
    const LaplacianOperator& L_;
    int q_;
    Aggregation agg_;
    Eigen::VectorXd weights_;
    double weight_sum_;
    Eigen::VectorXd centered_;
};

struct FeatureResult {
    ScoreOutcome score;
    PValueOutcome p;
};

/**
 * Observed score and (optionally) permutation p-value for one feature.
 * The permutation stream is keyed by (seed, feature index) only, so the
 * result is independent of which worker executes it.
 */
FeatureResult evaluate_feature(const SimplicialComplex& k, const LaplacianOperator& L,
                               const FeatureSet& fs, std::size_t index, int q, Aggregation agg,
                               const PermutationConfig* cfg) {
    FeatureResult result;
    FeatureScorer scorer(k, L, q, agg);

    std::optional<double> observed;
    try {
        observed = scorer.score(fs, index, nullptr);
    } catch (const MissingTupleValue&) {
        result.score.flag = "missing_tuple";
        return result;
    } catch (const DimensionMismatch&) {
        result.score.flag = "dimension_mismatch";
        return result;
    }
    if (!observed) {
        result.score.flag = "zero_variance";
        return result;
    }
    result.score.score = *observed;
    result.score.valid = true;
    if (!cfg) return result;

    SubstreamRng rng(cfg->seed, static_cast<std::uint64_t>(index));
    std::vector<VertexId> relabel(static_cast<std::size_t>(k.vertex_count()));
    std::int64_t count_le = 0;
    for (int t = 0; t < cfg->n_permutations; ++t) {
        std::iota(relabel.begin(), relabel.end(), 0);
        rng.shuffle(relabel);
        std::optional<double> permuted;
        try {
            permuted = scorer.score(fs, index, &relabel);
        } catch (const MissingTupleValue&) {
            result.score.flag = "missing_tuple";
            result.p = PValueOutcome{};
            return result;
        }
        // Undefined replicas and ties both count toward the numerator,
        // keeping the estimator conservative.
        if (!permuted || *permuted <= *observed) ++count_le;
    }
    result.p.p = static_cast<double>(1 + count_le) / static_cast<double>(1 + cfg->n_permutations);
    result.p.valid = true;
    return result;
}

void validate_config(const PermutationConfig& cfg) {
    if (cfg.n_permutations < 1) throw InvalidArgument("n_permutations must be >= 1");
    if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0)) throw InvalidArgument("alpha must be in (0, 1)");
}

} // namespace

std::vector<ScoreOutcome> score_features(const SimplicialComplex& k, const FeatureSet& fs,
                                         int q, Aggregation agg, int threads) {
    LaplacianOperator L = assemble_laplacian(k, q, LaplacianParts::Both);
    std::vector<ScoreOutcome> out(fs.feature_count());
    parallel_for(fs.feature_count(), threads, [&](std::size_t i) {
        out[i] = evaluate_feature(k, L, fs, i, q, agg, nullptr).score;
    });
    return out;
}

std::vector<PValueOutcome> permutation_pvalues(const SimplicialComplex& k, const FeatureSet& fs,
                                               int q, const PermutationConfig& cfg,
                                               Aggregation agg, int threads) {
    validate_config(cfg);
    LaplacianOperator L = assemble_laplacian(k, q, LaplacianParts::Both);
    std::vector<PValueOutcome> out(fs.feature_count());
    parallel_for(fs.feature_count(), threads, [&](std::size_t i) {
        out[i] = evaluate_feature(k, L, fs, i, q, agg, &cfg).p;
    });
    return out;
}

BhResult bh_adjust(const std::vector<double>& p_values, double alpha) {
    const std::size_t m = p_values.size();
    for (double p : p_values) {
        if (!(p > 0.0) || p > 1.0) {
            throw InvalidPValue("p-values must lie in (0, 1]");
        }
    }
    BhResult result;
    result.q_values.assign(m, 1.0);
    result.rejected.assign(m, false);
    if (m == 0) return result;

    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return p_values[a] < p_values[b]; });

    double running_min = 1.0;
    for (std::size_t r = m; r-- > 0;) {
        const double q = std::min(1.0, p_values[order[r]] * static_cast<double>(m) /
                                           static_cast<double>(r + 1));
        running_min = std::min(running_min, q);
        result.q_values[order[r]] = running_min;
    }
    for (std::size_t i = 0; i < m; ++i) {
        result.rejected[i] = result.q_values[i] <= alpha;
    }
    return result;
}

std::int64_t ScoreReport::rejection_count() const {
    std::int64_t n = 0;
    for (const auto& row : rows) n += row.rejected ? 1 : 0;
    return n;
}

ScoreReport run_scoring(const SimplicialComplex& k, const FeatureSet& fs, int q,
                        Aggregation agg, const PermutationConfig& cfg, int threads,
                        const std::string& weight_scheme_label) {
    validate_config(cfg);
    LaplacianOperator L = assemble_laplacian(k, q, LaplacianParts::Both);

    std::vector<FeatureResult> results(fs.feature_count());
    parallel_for(fs.feature_count(), threads, [&](std::size_t i) {
        results[i] = evaluate_feature(k, L, fs, i, q, agg, &cfg);
    });

    // BH runs over the features that produced a p-value.
    std::vector<double> valid_p;
    std::vector<std::size_t> valid_index;
    for (std::size_t i = 0; i < results.size(); ++i) {
        if (results[i].p.valid) {
            valid_p.push_back(results[i].p.p);
            valid_index.push_back(i);
        }
    }
    BhResult bh = bh_adjust(valid_p, cfg.alpha);

    ScoreReport report;
    report.epsilon = k.epsilon();
    report.n_permutations = cfg.n_permutations;
    report.seed = cfg.seed;
    report.alpha = cfg.alpha;
    report.weight_scheme = weight_scheme_label;
    report.rows.resize(fs.feature_count());
    for (std::size_t i = 0; i < fs.feature_count(); ++i) {
        auto& row = report.rows[i];
        row.feature = fs.name(i);
        row.q = q;
        row.valid = results[i].score.valid && results[i].p.valid;
        row.flag = results[i].score.flag;
        row.score = results[i].score.score;
        row.p_value = results[i].p.p;
    }
    for (std::size_t r = 0; r < valid_index.size(); ++r) {
        auto& row = report.rows[valid_index[r]];
        row.q_value = bh.q_values[r];
        row.rejected = bh.rejected[r];
    }
    return report;
}

SweepResult sweep_epsilon(const DistanceMatrix& dist, const FeatureSet& fs, int q,
                          const std::vector<double>& grid, const PermutationConfig& cfg,
                          int max_dim, const WeightScheme& scheme, Aggregation agg,
                          int threads) {
    if (grid.empty()) throw InvalidArgument("epsilon grid must be nonempty");
    if (!std::is_sorted(grid.begin(), grid.end())) {
        throw InvalidArgument("epsilon grid must be ascending");
    }
    validate_config(cfg);

    SweepResult sweep;
    sweep.rows.reserve(grid.size());
    for (double epsilon : grid) {
        SweepRow row;
        row.epsilon = epsilon;
        try {
            SimplicialComplex k = build_vietoris_rips(dist, epsilon, max_dim);
            k.compute_weights(scheme);
            row.n_edges = k.simplex_count(1);
            ScoreReport report = run_scoring(k, fs, q, agg, cfg, threads, scheme.name());
            row.n_rejected = report.rejection_count();
        } catch (const Error& e) {
            row.n_rejected = 0;
            row.note = e.what();
        }
        sweep.rows.push_back(std::move(row));
    }

    std::int64_t best = -1;
    for (const auto& row : sweep.rows) {
        if (row.n_rejected > best) {
            best = row.n_rejected;
            sweep.best_epsilon = row.epsilon;
        }
    }
    return sweep;
}

} // namespace lapsel
