#include <exception>
#include <iostream>

#include "CLI11.hpp"

#include "lapsel/cli.hpp"
#include "lapsel/errors.hpp"

namespace {

void add_source_options(CLI::App* cmd, lapsel::ComplexSource& source, bool allow_complex) {
    if (allow_complex) {
        cmd->add_option("--complex", source.complex_path, "Complex JSON document to import");
    }
    cmd->add_option("--input", source.input_path, "Coordinate or distance CSV/TSV file");
    cmd->add_option("--metric", source.metric, "euclidean|correlation|precomputed")
        ->default_val("euclidean");
    cmd->add_option("--epsilon", source.epsilon, "Vietoris-Rips scale (edges where d <= epsilon)");
    cmd->add_option("--max-dim", source.max_dim, "Largest simplex dimension to build");
    cmd->add_option("--weights", source.weights, "unit|coface weight scheme")
        ->default_val("coface");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Combinatorial Laplacian score feature selection on simplicial complexes"};
    app.require_subcommand(1);

    lapsel::BuildConfig build;
    auto* cmd_build = app.add_subcommand(
        "build", "Build a Vietoris-Rips complex from data and write it as JSON");
    add_source_options(cmd_build, build.source, false);
    cmd_build->add_option("--out", build.out, "Output path (default: stdout)");

    lapsel::ScoreConfig score;
    auto* cmd_score = app.add_subcommand(
        "score", "Score features with permutation p-values and BH-adjusted q-values");
    add_source_options(cmd_score, score.source, true);
    cmd_score->add_option("--features", score.features_path, "Feature TSV file")->required();
    cmd_score->add_option("--arity", score.feature_arity, "Feature arity (1 or 2)")
        ->default_val(1);
    cmd_score->add_option("--q", score.q, "Cochain dimension to score at")->default_val(0);
    cmd_score->add_option("--agg", score.agg, "mean|min|max vertex aggregation")
        ->default_val("mean");
    cmd_score->add_option("--permutations", score.n_permutations, "Permutation count")
        ->default_val(1000);
    cmd_score->add_option("--seed", score.seed, "RNG seed")->default_val(0);
    cmd_score->add_option("--alpha", score.alpha, "FDR level")->default_val(0.05);
    cmd_score->add_option("--threads", score.threads, "Worker threads (0 = all cores)")
        ->default_val(0);
    cmd_score->add_option("--out", score.out, "Output path (default: stdout)");

    lapsel::SweepConfig sweep;
    auto* cmd_sweep = app.add_subcommand(
        "sweep", "Rejection counts over an epsilon grid; reports the maximizing epsilon");
    add_source_options(cmd_sweep, sweep.source, false);
    cmd_sweep->add_option("--grid", sweep.grid, "Ascending comma-separated epsilon grid")
        ->required()
        ->delimiter(',');
    cmd_sweep->add_option("--features", sweep.features_path, "Feature TSV file")->required();
    cmd_sweep->add_option("--arity", sweep.feature_arity, "Feature arity (1 or 2)")
        ->default_val(1);
    cmd_sweep->add_option("--q", sweep.q, "Cochain dimension to score at")->default_val(0);
    cmd_sweep->add_option("--agg", sweep.agg, "mean|min|max vertex aggregation")
        ->default_val("mean");
    cmd_sweep->add_option("--permutations", sweep.n_permutations, "Permutation count")
        ->default_val(1000);
    cmd_sweep->add_option("--seed", sweep.seed, "RNG seed")->default_val(0);
    cmd_sweep->add_option("--alpha", sweep.alpha, "FDR level")->default_val(0.05);
    cmd_sweep->add_option("--threads", sweep.threads, "Worker threads (0 = all cores)")
        ->default_val(0);
    cmd_sweep->add_option("--out", sweep.out, "Output path (default: stdout)");

    lapsel::EigenmapConfig eigenmap;
    auto* cmd_eigenmap = app.add_subcommand(
        "eigenmap", "Laplacian eigenmap coordinates for the q-simplices");
    add_source_options(cmd_eigenmap, eigenmap.source, true);
    cmd_eigenmap->add_option("--q", eigenmap.q, "Simplex dimension to embed")->default_val(0);
    cmd_eigenmap->add_option("--m", eigenmap.m, "Embedding dimension")->default_val(2);
    cmd_eigenmap->add_flag("--drop-first", eigenmap.drop_first,
                           "Skip the leading eigenvector (graph eigenmap convention)");
    cmd_eigenmap->add_option("--out", eigenmap.out, "Output path (default: stdout)");

    lapsel::ExportConfig exp;
    auto* cmd_export = app.add_subcommand(
        "export", "Export the 1-skeleton of a complex for external plotting");
    cmd_export->add_option("--complex", exp.complex_path, "Complex JSON document")->required();
    cmd_export->add_option("--format", exp.format, "dot|json")->default_val("dot");
    cmd_export->add_option("--out", exp.out, "Output path (default: stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_build->parsed()) {
            lapsel::cmd_build(build);
        } else if (cmd_score->parsed()) {
            score.source.weights_explicit = cmd_score->count("--weights") > 0;
            lapsel::cmd_score(score);
        } else if (cmd_sweep->parsed()) {
            lapsel::cmd_sweep(sweep);
        } else if (cmd_eigenmap->parsed()) {
            eigenmap.source.weights_explicit = cmd_eigenmap->count("--weights") > 0;
            lapsel::cmd_eigenmap(eigenmap);
        } else if (cmd_export->parsed()) {
            lapsel::cmd_export(exp);
        }
    } catch (const lapsel::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
