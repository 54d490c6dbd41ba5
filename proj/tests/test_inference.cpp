#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <numeric>

#include "lapsel/inference.hpp"
#include "test_support.hpp"

using namespace lapsel;
namespace ts = testsupport;

namespace {

FeatureSet k3_features() {
    Eigen::MatrixXd values(3, 3);
    values << 1, 0, 0, 0, 1, 0, 7, 7, 7;
    return FeatureSet::from_matrix({"f1", "f2", "const"}, values);
}

} // namespace

TEST_CASE("score_features: K3 fixture, batching, and flagged constants") {
    SimplicialComplex k = ts::k3_graph();
    k.compute_weights(WeightScheme::unit());
    FeatureSet fs = k3_features();
    auto scores = score_features(k, fs, 0, Aggregation::Mean);
    REQUIRE(scores.size() == 3);
    CHECK(scores[0].valid);
    CHECK(scores[0].score == doctest::Approx(3.0));
    CHECK(scores[1].valid);
    CHECK(scores[1].score == doctest::Approx(3.0));
    CHECK(!scores[2].valid);
    CHECK(scores[2].flag == "zero_variance");

    // Batch scoring equals one-feature calls.
    FeatureSet single = FeatureSet::from_matrix({"f1"}, Eigen::RowVector3d(1, 0, 0));
    auto alone = score_features(k, single, 0, Aggregation::Mean);
    CHECK(alone[0].score == scores[0].score);
}

TEST_CASE("permutation_pvalues: extreme rank gives 1/(n+1)") {
    // Points on a line; the coordinate itself is maximally smooth, so its
    // observed score sits below every permuted replica (ties are
    // vanishingly rare and absent for this seed).
    const int n = 8;
    Eigen::MatrixXd points(n, 1);
    for (int i = 0; i < n; ++i) points(i, 0) = i;
    DistanceMatrix dist = compute_distances(points, Metric::Euclidean);
    SimplicialComplex k = build_vietoris_rips(dist, 1.1, 1);
    k.compute_weights(WeightScheme::coface_sum());

    Eigen::MatrixXd values(1, n);
    for (int i = 0; i < n; ++i) values(0, i) = i;
    FeatureSet fs = FeatureSet::from_matrix({"position"}, values);

    PermutationConfig cfg{99, 0, 0.05};
    auto p = permutation_pvalues(k, fs, 0, cfg, Aggregation::Mean);
    REQUIRE(p.size() == 1);
    CHECK(p[0].valid);
    CHECK(p[0].p == doctest::Approx(0.01));
}

TEST_CASE("permutation_pvalues: constant features are excluded") {
    SimplicialComplex k = ts::k3_graph();
    k.compute_weights(WeightScheme::unit());
    FeatureSet fs = k3_features();
    PermutationConfig cfg{19, 3, 0.05};
    auto p = permutation_pvalues(k, fs, 0, cfg, Aggregation::Mean);
    CHECK(p[0].valid);
    CHECK(!p[2].valid);
}

TEST_CASE("permutation_pvalues: the add-one bound p >= 1/(n+1) always holds") {
    SubstreamRng rng(73, 0);
    Eigen::MatrixXd points = ts::random_points(20, 2, rng);
    DistanceMatrix dist = compute_distances(points, Metric::Euclidean);
    SimplicialComplex k = build_vietoris_rips(dist, 0.4, 1);
    k.compute_weights(WeightScheme::coface_sum());

    Eigen::MatrixXd values(30, 20);
    for (Eigen::Index r = 0; r < values.rows(); ++r) {
        for (Eigen::Index c = 0; c < values.cols(); ++c) values(r, c) = rng.next_gaussian();
    }
    std::vector<std::string> names;
    for (int r = 0; r < 30; ++r) names.push_back("f" + std::to_string(r));
    FeatureSet fs = FeatureSet::from_matrix(names, values);

    PermutationConfig cfg{49, 9, 0.05};
    auto p = permutation_pvalues(k, fs, 0, cfg, Aggregation::Mean);
    for (const auto& entry : p) {
        REQUIRE(entry.valid);
        CHECK(entry.p >= 1.0 / 50.0);
        CHECK(entry.p <= 1.0);
    }
}

TEST_CASE("bh_adjust: worked step-up example rejects all four") {
    BhResult bh = bh_adjust({0.01, 0.02, 0.04, 0.05}, 0.05);
    CHECK(bh.q_values[0] == doctest::Approx(0.04));
    CHECK(bh.q_values[1] == doctest::Approx(0.04));
    CHECK(bh.q_values[2] == doctest::Approx(0.05));
    CHECK(bh.q_values[3] == doctest::Approx(0.05));
    for (bool r : bh.rejected) CHECK(r);
}

TEST_CASE("bh_adjust: degenerate and boundary cases") {
    BhResult all_ones = bh_adjust({1.0, 1.0, 1.0}, 0.05);
    for (bool r : all_ones.rejected) CHECK(!r);

    BhResult boundary = bh_adjust({0.05}, 0.05);
    CHECK(boundary.rejected[0]); // boundary inclusive

    CHECK_THROWS_AS(bh_adjust({0.0, 0.5}, 0.05), InvalidPValue);
    CHECK_THROWS_AS(bh_adjust({1.5}, 0.05), InvalidPValue);
}

TEST_CASE("bh_adjust: q-values in (0,1] and rejections monotone in alpha") {
    SubstreamRng rng(79, 0);
    std::vector<double> p(40);
    for (auto& x : p) x = std::max(1e-6, rng.next_unit());
    BhResult strict = bh_adjust(p, 0.03);
    BhResult loose = bh_adjust(p, 0.10);
    for (std::size_t i = 0; i < p.size(); ++i) {
        CHECK(strict.q_values[i] > 0.0);
        CHECK(strict.q_values[i] <= 1.0);
        if (strict.rejected[i]) CHECK(loose.rejected[i]);
    }
}

TEST_CASE("run_scoring: identical reports for any worker count") {
    SubstreamRng rng(83, 0);
    Eigen::MatrixXd points = ts::random_points(25, 2, rng);
    DistanceMatrix dist = compute_distances(points, Metric::Euclidean);
    SimplicialComplex k = build_vietoris_rips(dist, 0.5, 1);
    k.compute_weights(WeightScheme::coface_sum());

    Eigen::MatrixXd values(40, 25);
    for (Eigen::Index r = 0; r < values.rows(); ++r) {
        for (Eigen::Index c = 0; c < values.cols(); ++c) values(r, c) = rng.next_gaussian();
    }
    std::vector<std::string> names;
    for (int r = 0; r < 40; ++r) names.push_back("f" + std::to_string(r));
    FeatureSet fs = FeatureSet::from_matrix(names, values);

    PermutationConfig cfg{59, 42, 0.05};
    ScoreReport serial = run_scoring(k, fs, 0, Aggregation::Mean, cfg, 1, "coface");
    ScoreReport parallel = run_scoring(k, fs, 0, Aggregation::Mean, cfg, 4, "coface");
    REQUIRE(serial.rows.size() == parallel.rows.size());
    for (std::size_t i = 0; i < serial.rows.size(); ++i) {
        CHECK(serial.rows[i].score == parallel.rows[i].score); // bitwise
        CHECK(serial.rows[i].p_value == parallel.rows[i].p_value);
        CHECK(serial.rows[i].q_value == parallel.rows[i].q_value);
        CHECK(serial.rows[i].rejected == parallel.rows[i].rejected);
    }
}

TEST_CASE("relabeling both distances and features leaves 0-dim scores unchanged") {
    // Relabeling symmetry of the null holds at q = 0, where the Laplacian
    // does not depend on the global vertex order. At q >= 1 relabeling
    // conjugates L by orientation signs while Mean-induced cochains stay
    // fixed, so q >= 1 scores are tied to the declared sample order.
    SubstreamRng rng(89, 0);
    const int n = 15;
    Eigen::MatrixXd points = ts::random_points(n, 2, rng);
    DistanceMatrix dist = compute_distances(points, Metric::Euclidean);
    Eigen::MatrixXd values(5, n);
    for (Eigen::Index r = 0; r < values.rows(); ++r) {
        for (Eigen::Index c = 0; c < values.cols(); ++c) values(r, c) = rng.next_gaussian();
    }

    std::vector<VertexId> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    rng.shuffle(perm);
    Eigen::MatrixXd relabeled_points(n, 2);
    Eigen::MatrixXd relabeled_values(values.rows(), n);
    for (int i = 0; i < n; ++i) {
        relabeled_points.row(i) = points.row(perm[i]);
        relabeled_values.col(i) = values.col(perm[i]);
    }
    DistanceMatrix relabeled_dist = compute_distances(relabeled_points, Metric::Euclidean);

    std::vector<std::string> names{"a", "b", "c", "d", "e"};
    for (auto scheme : {WeightScheme::unit(), WeightScheme::coface_sum()}) {
        SimplicialComplex k1 = build_vietoris_rips(dist, 0.45, 2);
        SimplicialComplex k2 = build_vietoris_rips(relabeled_dist, 0.45, 2);
        k1.compute_weights(scheme);
        k2.compute_weights(scheme);
        auto s1 = score_features(k1, FeatureSet::from_matrix(names, values), 0,
                                 Aggregation::Mean);
        auto s2 = score_features(k2, FeatureSet::from_matrix(names, relabeled_values), 0,
                                 Aggregation::Mean);
        for (std::size_t i = 0; i < s1.size(); ++i) {
            REQUIRE(s1[i].valid == s2[i].valid);
            if (s1[i].valid) {
                CHECK(s1[i].score == doctest::Approx(s2[i].score).epsilon(1e-10));
            }
        }
    }
}

TEST_CASE("sweep_epsilon: single-entry grid returns that epsilon") {
    Eigen::MatrixXd points(4, 2);
    points << 0, 0, 1, 0, 1, 1, 0, 1;
    DistanceMatrix dist = compute_distances(points, Metric::Euclidean);
    Eigen::MatrixXd values(2, 4);
    values << 1, 0, 0, 1, 0, 1, 1, 0;
    FeatureSet fs = FeatureSet::from_matrix({"a", "b"}, values);
    PermutationConfig cfg{19, 0, 0.05};
    SweepResult sweep = sweep_epsilon(dist, fs, 0, {1.1}, cfg, 1,
                                      WeightScheme::coface_sum(), Aggregation::Mean);
    REQUIRE(sweep.rows.size() == 1);
    CHECK(sweep.best_epsilon == 1.1);
    CHECK(sweep.rows[0].n_edges == 4);
}

TEST_CASE("sweep_epsilon: epsilon below the minimum distance is degenerate but sound") {
    Eigen::MatrixXd points(5, 1);
    points << 0, 10, 20, 30, 40;
    DistanceMatrix dist = compute_distances(points, Metric::Euclidean);
    Eigen::MatrixXd values(2, 5);
    values << 1, 2, 3, 4, 5, 5, 4, 3, 2, 1;
    FeatureSet fs = FeatureSet::from_matrix({"a", "b"}, values);
    PermutationConfig cfg{19, 0, 0.05};

    // q=0: the Laplacian is the zero operator, every score is 0, ties give
    // p = 1, nothing is rejected.
    SweepResult sweep = sweep_epsilon(dist, fs, 0, {1.0}, cfg, 1,
                                      WeightScheme::coface_sum(), Aggregation::Mean);
    CHECK(sweep.rows[0].n_edges == 0);
    CHECK(sweep.rows[0].n_rejected == 0);
    CHECK(sweep.rows[0].note.empty());
    SimplicialComplex k = build_vietoris_rips(dist, 1.0, 1);
    k.compute_weights(WeightScheme::coface_sum());
    auto scores = score_features(k, fs, 0, Aggregation::Mean);
    CHECK(scores[0].score == 0.0);
    ScoreReport report = run_scoring(k, fs, 0, Aggregation::Mean, cfg, 1, "coface");
    CHECK(report.rows[0].p_value == 1.0);

    // q=1: no edges exist; the failure becomes a diagnostic row.
    SweepResult degenerate = sweep_epsilon(dist, fs, 1, {1.0}, cfg, 1,
                                           WeightScheme::coface_sum(), Aggregation::Mean);
    CHECK(degenerate.rows[0].n_rejected == 0);
    CHECK(!degenerate.rows[0].note.empty());

    CHECK_THROWS_AS(sweep_epsilon(dist, fs, 0, {}, cfg, 1, WeightScheme::coface_sum(),
                                  Aggregation::Mean),
                    InvalidArgument);
    CHECK_THROWS_AS(sweep_epsilon(dist, fs, 0, {2.0, 1.0}, cfg, 1, WeightScheme::coface_sum(),
                                  Aggregation::Mean),
                    InvalidArgument);
}

TEST_CASE("sweep_epsilon: mid-range epsilon beats the extremes on two clusters") {
    SubstreamRng rng(97, 0);
    std::vector<bool> label;
    Eigen::MatrixXd points = ts::two_cluster_points(30, 4, 8.0, rng, &label);
    Eigen::MatrixXd values = ts::cluster_features(100, 10, label, 2.0, 0.5, rng);
    std::vector<std::string> names;
    for (int r = 0; r < 100; ++r) names.push_back("f" + std::to_string(r));
    FeatureSet fs = FeatureSet::from_matrix(names, values);
    DistanceMatrix dist = compute_distances(points, Metric::Euclidean);

    double lo = 1e18, hi = 0.0;
    for (int i = 0; i < dist.size(); ++i) {
        for (int j = i + 1; j < dist.size(); ++j) {
            lo = std::min(lo, dist(i, j));
            hi = std::max(hi, dist(i, j));
        }
    }
    // 999 permutations so the smallest attainable p-value (1/1000) clears
    // the BH threshold for ~10 true signals among 100 features.
    PermutationConfig cfg{999, 5, 0.05};
    std::vector<double> grid{lo * 0.9, 4.0, hi * 1.01};
    SweepResult sweep = sweep_epsilon(dist, fs, 0, grid, cfg, 1,
                                      WeightScheme::coface_sum(), Aggregation::Mean);
    REQUIRE(sweep.rows.size() == 3);
    CHECK(sweep.rows[1].n_rejected > sweep.rows[0].n_rejected);
    CHECK(sweep.rows[1].n_rejected > sweep.rows[2].n_rejected);
    CHECK(sweep.best_epsilon == 4.0);
}

TEST_CASE("run_scoring: report metadata and argument validation") {
    SimplicialComplex k = ts::k3_graph();
    k.compute_weights(WeightScheme::unit());
    FeatureSet fs = k3_features();
    PermutationConfig bad_perm{0, 0, 0.05};
    CHECK_THROWS_AS(run_scoring(k, fs, 0, Aggregation::Mean, bad_perm, 1, "unit"),
                    InvalidArgument);
    PermutationConfig bad_alpha{10, 0, 1.5};
    CHECK_THROWS_AS(run_scoring(k, fs, 0, Aggregation::Mean, bad_alpha, 1, "unit"),
                    InvalidArgument);

    PermutationConfig cfg{19, 7, 0.1};
    ScoreReport report = run_scoring(k, fs, 0, Aggregation::Mean, cfg, 2, "unit");
    CHECK(report.n_permutations == 19);
    CHECK(report.seed == 7);
    CHECK(report.alpha == 0.1);
    CHECK(report.weight_scheme == "unit");
    CHECK(!report.epsilon.has_value());
    CHECK(report.rows[2].flag == "zero_variance");
}
