#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lapsel/complex.hpp"
#include "lapsel/distance.hpp"
#include "lapsel/features.hpp"
#include "lapsel/laplacian.hpp"

namespace lapsel {

struct PermutationConfig {
    int n_permutations = 1000;
    std::uint64_t seed = 0;
    double alpha = 0.05; // FDR level
};

/// Score of one feature; invalid entries carry a diagnostic flag instead.
struct ScoreOutcome {
    double score = 0.0;
    bool valid = false;
    std::string flag; // "zero_variance", "missing_tuple", ... when invalid
};

/**
 * Combinatorial Laplacian scores for every feature at dimension q. The
 * Laplacian is assembled once; constant features are flagged rather than
 * aborting the batch.
 */
std::vector<ScoreOutcome> score_features(const SimplicialComplex& k, const FeatureSet& fs,
                                         int q, Aggregation agg, int threads = 1);

struct PValueOutcome {
    double p = 1.0;
    bool valid = false;
};

/**
 * Left-tail permutation p-values: for each feature, feature values are
 * relabeled by cfg.n_permutations uniform random permutations of the sample
 * set (the complex stays fixed), the score is recomputed, and
 * p = (1 + #{R_perm <= R_obs}) / (1 + n_permutations); low scores are
 * significant. The permutation stream is a deterministic function of
 * (seed, feature index), so results are identical for any thread count.
 * Invalid features propagate as missing p-values.
 */
std::vector<PValueOutcome> permutation_pvalues(const SimplicialComplex& k, const FeatureSet& fs,
                                               int q, const PermutationConfig& cfg,
                                               Aggregation agg, int threads = 1);

struct BhResult {
    std::vector<double> q_values;
    std::vector<bool> rejected;
};

/**
 * Benjamini-Hochberg step-up: ascending p_(i) get q_i = min_{j>=i} m p_(j)/j
 * capped at 1; every feature with q <= alpha is rejected (boundary
 * inclusive). All p must lie in (0, 1] (InvalidPValue).
 */
BhResult bh_adjust(const std::vector<double>& p_values, double alpha);

/// Per-feature results plus the run metadata needed to reproduce them.
struct ScoreReport {
    struct Row {
        std::string feature;
        int q = 0;
        double score = 0.0;
        double p_value = 1.0;
        double q_value = 1.0;
        bool rejected = false;
        bool valid = false; // false: flagged feature, score/p/q not meaningful
        std::string flag;
    };
    std::vector<Row> rows;
    std::optional<double> epsilon;
    int n_permutations = 0;
    std::uint64_t seed = 0;
    double alpha = 0.05;
    std::string weight_scheme;

    std::int64_t rejection_count() const;
};

/**
 * Full batch: scores, permutation p-values, BH adjustment. One Laplacian
 * assembly; feature loop runs on `threads` workers with per-feature RNG
 * substreams, so the report is identical for any worker count.
 */
ScoreReport run_scoring(const SimplicialComplex& k, const FeatureSet& fs, int q,
                        Aggregation agg, const PermutationConfig& cfg, int threads = 1,
                        const std::string& weight_scheme_label = "");

struct SweepRow {
    double epsilon = 0.0;
    std::int64_t n_edges = 0;
    std::int64_t n_rejected = 0;
    std::string note; // diagnostic for per-epsilon failures
};

struct SweepResult {
    std::vector<SweepRow> rows;
    double best_epsilon = 0.0; // smallest epsilon attaining the max rejections
};

/**
 * Scale sweep: for every epsilon in the ascending grid, builds the
 * Vietoris-Rips complex, scores, permutes and BH-adjusts, and records the
 * rejection count. Per-epsilon failures (e.g. no simplices at dimension q)
 * become zero-rejection rows with a diagnostic note instead of aborting.
 */
SweepResult sweep_epsilon(const DistanceMatrix& dist, const FeatureSet& fs, int q,
                          const std::vector<double>& grid, const PermutationConfig& cfg,
                          int max_dim, const WeightScheme& scheme, Aggregation agg,
                          int threads = 1);

} // namespace lapsel
