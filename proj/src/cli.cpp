#include "lapsel/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "json.hpp"

#include "lapsel/complex_io.hpp"
#include "lapsel/errors.hpp"
#include "lapsel/inference.hpp"
#include "lapsel/spectrum.hpp"
#include "lapsel/table_io.hpp"

namespace lapsel {

namespace {

WeightScheme scheme_from_name(const std::string& name) {
    if (name == "unit") return WeightScheme::unit();
    if (name == "coface") return WeightScheme::coface_sum();
    throw InvalidArgument("unknown weight scheme: " + name + " (expected unit|coface)");
}

DistanceMatrix load_distances(const ComplexSource& source) {
    if (source.input_path.empty()) {
        throw InvalidArgument("an input file is required (coordinates or distances)");
    }
    if (source.metric == "precomputed") {
        return read_distance_matrix(source.input_path);
    }
    Eigen::MatrixXd points = read_matrix(source.input_path);
    if (source.metric == "euclidean") return compute_distances(points, Metric::Euclidean);
    if (source.metric == "correlation") return compute_distances(points, Metric::Correlation);
    throw InvalidArgument("unknown metric: " + source.metric +
                          " (expected euclidean|correlation|precomputed)");
}

/**
 * Materializes the complex named by `source`: either imports a JSON
 * document or builds a Vietoris-Rips complex from the input data. Weights
 * stored in an imported document are kept unless --weights was given
 * explicitly; the returned label records which weights the run used.
 */
SimplicialComplex resolve_complex(const ComplexSource& source, int default_max_dim,
                                  std::string* weight_label) {
    if (!source.complex_path.empty()) {
        SimplicialComplex k = import_complex_file(source.complex_path);
        if (source.weights_explicit || !k.has_weights()) {
            k.compute_weights(scheme_from_name(source.weights));
            if (weight_label) *weight_label = source.weights;
        } else if (weight_label) {
            *weight_label = "stored";
        }
        return k;
    }
    if (!source.epsilon) {
        throw InvalidArgument("either --complex or --epsilon (with an input file) is required");
    }
    DistanceMatrix dist = load_distances(source);
    int max_dim = source.max_dim >= 0 ? source.max_dim : default_max_dim;
    SimplicialComplex k = build_vietoris_rips(dist, *source.epsilon, max_dim);
    k.compute_weights(scheme_from_name(source.weights));
    if (weight_label) *weight_label = source.weights;
    return k;
}

// Data goes to --out when given, to stdout otherwise.
void write_output(const std::string& out_path, const std::string& payload) {
    if (out_path.empty()) {
        std::cout << payload;
        std::cout.flush();
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw ParseError("cannot write output file: " + out_path);
    out << payload;
}

void print_complex_summary(const SimplicialComplex& k) {
    std::ostringstream line;
    line << "complex: " << k.vertex_count() << " vertices; simplex counts";
    for (int q = 0; q <= k.top_dimension(); ++q) {
        line << " S_" << q << "=" << k.simplex_count(q);
    }
    std::cerr << line.str() << '\n';
}

} // namespace

void cmd_build(const BuildConfig& config) {
    ComplexSource source = config.source;
    if (!source.complex_path.empty()) {
        throw InvalidArgument("build constructs a complex from data; --complex is not accepted");
    }
    if (source.max_dim < 0) source.max_dim = 2;
    SimplicialComplex k = resolve_complex(source, source.max_dim, nullptr);
    print_complex_summary(k);
    write_output(config.out, export_complex(k).dump(2) + "\n");
}

void cmd_score(const ScoreConfig& config) {
    std::string weight_label;
    SimplicialComplex k =
        resolve_complex(config.source, std::max(1, config.q + 1), &weight_label);
    print_complex_summary(k);

    FeatureSet features = config.feature_arity >= 2 ? read_pair_features(config.features_path)
                                                    : read_point_features(config.features_path);
    if (features.arity() >= 2 && config.q != features.arity() - 1) {
        throw InvalidArgument("arity-" + std::to_string(features.arity()) +
                              " features score at q = " + std::to_string(features.arity() - 1) +
                              ", not q = " + std::to_string(config.q));
    }
    std::cerr << "features: " << features.feature_count() << " (arity "
              << features.arity() << ")\n";

    PermutationConfig cfg{config.n_permutations, config.seed, config.alpha};
    ScoreReport report = run_scoring(k, features, config.q, aggregation_from_name(config.agg),
                                     cfg, config.threads, weight_label);
    std::ostringstream buffer;
    write_score_report(buffer, report);
    write_output(config.out, buffer.str());
    std::int64_t flagged = 0;
    for (const auto& row : report.rows) flagged += row.valid ? 0 : 1;
    if (flagged > 0) {
        std::cerr << "flagged " << flagged << " features (see the report's NA rows)\n";
    }
    std::cerr << "rejected " << report.rejection_count() << " of " << report.rows.size()
              << " features at FDR " << format_double(config.alpha) << '\n';
}

void cmd_sweep(const SweepConfig& config) {
    if (config.grid.empty()) throw InvalidArgument("sweep requires a nonempty --grid");
    DistanceMatrix dist = load_distances(config.source);
    FeatureSet features = config.feature_arity >= 2 ? read_pair_features(config.features_path)
                                                    : read_point_features(config.features_path);
    int max_dim = config.source.max_dim >= 0 ? config.source.max_dim : std::max(1, config.q + 1);

    PermutationConfig cfg{config.n_permutations, config.seed, config.alpha};
    SweepResult sweep =
        sweep_epsilon(dist, features, config.q, config.grid, cfg, max_dim,
                      scheme_from_name(config.source.weights),
                      aggregation_from_name(config.agg), config.threads);
    for (const auto& row : sweep.rows) {
        if (!row.note.empty()) {
            std::cerr << "epsilon " << format_double(row.epsilon) << ": " << row.note << '\n';
        }
    }
    std::ostringstream buffer;
    write_sweep_result(buffer, sweep);
    write_output(config.out, buffer.str());
    std::cerr << "best epsilon " << format_double(sweep.best_epsilon) << '\n';
}

void cmd_eigenmap(const EigenmapConfig& config) {
    std::string weight_label;
    SimplicialComplex k =
        resolve_complex(config.source, std::max(1, config.q + 1), &weight_label);
    print_complex_summary(k);
    Eigen::MatrixXd coords = eigenmap(k, config.q, config.m, config.drop_first);
    std::ostringstream buffer;
    write_eigenmap(buffer, k, config.q, coords);
    write_output(config.out, buffer.str());
}

void cmd_export(const ExportConfig& config) {
    if (config.complex_path.empty()) throw InvalidArgument("export requires --complex");
    SimplicialComplex k = import_complex_file(config.complex_path);

    std::ostringstream buffer;
    if (config.format == "dot") {
        buffer << "graph complex {\n";
        for (std::int64_t v = 0; v < k.simplex_count(0); ++v) {
            buffer << "  " << k.simplex_vertices(0, v)[0] << ";\n";
        }
        for (std::int64_t e = 0; e < k.simplex_count(1); ++e) {
            auto verts = k.simplex_vertices(1, e);
            buffer << "  " << verts[0] << " -- " << verts[1] << ";\n";
        }
        buffer << "}\n";
    } else if (config.format == "json") {
        nlohmann::ordered_json doc;
        doc["vertex_count"] = k.vertex_count();
        if (k.epsilon()) {
            doc["epsilon"] = *k.epsilon();
        } else {
            doc["epsilon"] = nullptr;
        }
        auto nodes = nlohmann::ordered_json::array();
        for (std::int64_t v = 0; v < k.simplex_count(0); ++v) {
            nodes.push_back(k.simplex_vertices(0, v)[0]);
        }
        auto edges = nlohmann::ordered_json::array();
        for (std::int64_t e = 0; e < k.simplex_count(1); ++e) {
            auto verts = k.simplex_vertices(1, e);
            edges.push_back({verts[0], verts[1]});
        }
        doc["nodes"] = std::move(nodes);
        doc["edges"] = std::move(edges);
        buffer << doc.dump(2) << '\n';
    } else {
        throw InvalidArgument("unknown export format: " + config.format + " (expected dot|json)");
    }
    write_output(config.out, buffer.str());
}

} // namespace lapsel
