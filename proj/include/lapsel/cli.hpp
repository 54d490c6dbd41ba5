#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace lapsel {

/// Where a complex comes from: a JSON document or a fresh VR build.
struct ComplexSource {
    std::string complex_path;              // import when nonempty
    std::string input_path;                // else: coordinates or distances
    std::string metric = "euclidean";      // euclidean | correlation | precomputed
    std::optional<double> epsilon;
    int max_dim = -1;                      // -1: command-specific default
    std::string weights = "coface";        // unit | coface
    bool weights_explicit = false;         // --weights given on the command line
};

struct BuildConfig {
    ComplexSource source;
    std::string out; // empty: stdout
};

struct ScoreConfig {
    ComplexSource source;
    std::string features_path;
    int feature_arity = 1;
    int q = 0;
    std::string agg = "mean";
    int n_permutations = 1000;
    std::uint64_t seed = 0;
    double alpha = 0.05;
    int threads = 0; // 0: hardware concurrency
    std::string out;
};

struct SweepConfig {
    ComplexSource source; // input/metric/max_dim/weights used; epsilon ignored
    std::vector<double> grid;
    std::string features_path;
    int feature_arity = 1;
    int q = 0;
    std::string agg = "mean";
    int n_permutations = 1000;
    std::uint64_t seed = 0;
    double alpha = 0.05;
    int threads = 0;
    std::string out;
};

struct EigenmapConfig {
    ComplexSource source;
    int q = 0;
    int m = 2;
    bool drop_first = false;
    std::string out;
};

struct ExportConfig {
    std::string complex_path;
    std::string format = "dot"; // dot | json
    std::string out;
};

// Batch commands. Each is a pure function of its input files and flags:
// progress goes to stderr, data to the output path (or stdout), and all
// randomness flows from the seed. Errors are reported by throwing
// lapsel::Error; the CLI driver maps them to a nonzero exit code.
void cmd_build(const BuildConfig& config);
void cmd_score(const ScoreConfig& config);
void cmd_sweep(const SweepConfig& config);
void cmd_eigenmap(const EigenmapConfig& config);
void cmd_export(const ExportConfig& config);

} // namespace lapsel
