/// Command line front end. Subcommands cover the stages separately
/// (generate, basis, embed, refine, soe, evaluate) plus a pipeline command
/// that runs a whole method end to end and emits a report.
///
/// Exit codes: 0 success, 1 usage error, 2 pipeline failure.

#include <ordgeo/ordgeo.hpp>

#include <CLI11.hpp>

#include <cinttypes>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

namespace {

using nlohmann::json;

struct InputArgs {
    std::string dataset;       // CSV path
    std::string generate_spec; // kind:n:d
    std::uint64_t seed = 0;
    std::size_t gmm_components = 5;
    double gmm_sigma = 1.0;
};

struct BasisArgs {
    std::string strategy = "lens-apex";
    std::string candidate_rule = "two-center";
    std::string hull_source = "affine-set";
};

struct SoeArgs {
    std::size_t restarts = 20;
    double margin = 0.1;
    double loss_threshold = 1e-3;
    std::size_t threads = 1;
};

void add_input_options(CLI::App* cmd, InputArgs& args, bool generate_only = false) {
    auto* generate = cmd->add_option("--generate", args.generate_spec,
                                     "synthetic dataset as kind:n:d with kind one of "
                                     "ball, sphere, gaussian, gmm");
    if (!generate_only) {
        auto* dataset = cmd->add_option("--dataset", args.dataset, "CSV file with one point per row");
        dataset->excludes(generate);
    }
    cmd->add_option("--seed", args.seed, "random seed");
    cmd->add_option("--gmm-components", args.gmm_components, "mixture components for gmm data");
    cmd->add_option("--gmm-sigma", args.gmm_sigma, "component deviation for gmm data");
}

void add_basis_options(CLI::App* cmd, BasisArgs& args) {
    cmd->add_option("--strategy", args.strategy, "endpoint strategy")
        ->check(CLI::IsMember({"lens-apex", "farthest-rank"}));
    cmd->add_option("--candidate-rule", args.candidate_rule, "candidate scoring rule")
        ->check(CLI::IsMember({"two-center", "literal"}));
    cmd->add_option("--hull-source", args.hull_source, "hull estimate base for candidate scoring")
        ->check(CLI::IsMember({"affine-set", "all-endpoints"}));
}

void add_soe_options(CLI::App* cmd, SoeArgs& args) {
    cmd->add_option("--soe-restarts", args.restarts, "random restarts for the stochastic fit");
    cmd->add_option("--soe-margin", args.margin, "hinge margin separating triple distances");
    cmd->add_option("--loss-threshold", args.loss_threshold, "loss below which a fit counts as converged");
    cmd->add_option("--threads", args.threads, "worker threads across restarts");
}

std::tuple<ordgeo::DatasetKind, std::size_t, std::size_t> parse_generate_spec(const std::string& spec) {
    const auto first = spec.find(':');
    const auto second = spec.find(':', first == std::string::npos ? first : first + 1);
    if (first == std::string::npos || second == std::string::npos)
        throw ordgeo::ParseError("expected kind:n:d, got '" + spec + "'");
    const auto kind = ordgeo::dataset_kind_from(spec.substr(0, first));
    std::size_t n = 0, d = 0;
    try {
        n = std::stoul(spec.substr(first + 1, second - first - 1));
        d = std::stoul(spec.substr(second + 1));
    } catch (const std::exception&) {
        throw ordgeo::ParseError("expected kind:n:d, got '" + spec + "'");
    }
    if (n == 0 || d == 0) throw ordgeo::ParseError("generate spec needs n >= 1 and d >= 1");
    return {kind, n, d};
}

/// Loads points from --dataset or synthesizes them from --generate.
/// Returns the matrix plus the label used in reports.
std::pair<Eigen::MatrixXd, std::string> resolve_input(const InputArgs& args) {
    if (!args.dataset.empty() && !args.generate_spec.empty())
        throw ordgeo::InvalidQueryError("--dataset and --generate are mutually exclusive");
    if (!args.dataset.empty()) return {ordgeo::read_points_csv(args.dataset), args.dataset};
    if (args.generate_spec.empty())
        throw ordgeo::InvalidQueryError("one of --dataset or --generate is required");
    const auto [kind, n, d] = parse_generate_spec(args.generate_spec);
    ordgeo::GmmParams gmm;
    gmm.components = args.gmm_components;
    gmm.sigma = args.gmm_sigma;
    return {ordgeo::generate_dataset(kind, n, d, args.seed, gmm).points, args.generate_spec};
}

ordgeo::BasisConfig make_basis_config(const BasisArgs& args, std::uint64_t seed) {
    ordgeo::BasisConfig config;
    config.seed = seed;
    config.strategy = args.strategy == "farthest-rank" ? ordgeo::EndpointStrategy::FarthestRank
                                                       : ordgeo::EndpointStrategy::LensApex;
    config.candidate_rule = args.candidate_rule == "literal" ? ordgeo::CandidateRule::Literal
                                                             : ordgeo::CandidateRule::TwoCenter;
    config.hull_source = args.hull_source == "all-endpoints" ? ordgeo::HullSource::AllEndpoints
                                                             : ordgeo::HullSource::AffineSet;
    return config;
}

json basis_config_json(const BasisArgs& args, std::uint64_t seed) {
    return {{"seed", seed},
            {"strategy", args.strategy},
            {"candidate_rule", args.candidate_rule},
            {"hull_source", args.hull_source}};
}

json soe_config_json(const SoeArgs& args) {
    return {{"restarts", args.restarts},
            {"margin", args.margin},
            {"loss_threshold", args.loss_threshold},
            {"threads", args.threads}};
}

std::string hex_hash(const json& config) {
    const std::string dump = config.dump();
    char buffer[24];
    std::snprintf(buffer, sizeof(buffer), "%016" PRIx64, ordgeo::detail::fnv1a(dump));
    return buffer;
}

/// Sidecar manifest describing how an output file was produced. Contains
/// no timestamps: rerunning a command rewrites identical bytes.
void write_manifest(const std::string& out_path, const std::string& command, const json& config) {
    json manifest;
    manifest["command"] = command;
    manifest["config"] = config;
    manifest["config_hash"] = hex_hash(config);
    manifest["library_version"] = ordgeo::version_string;
    ordgeo::write_json(out_path + ".manifest.json", manifest);
}

void emit_json(const json& j, const std::string& out_path) {
    if (out_path.empty())
        std::cout << j.dump(2) << '\n';
    else
        ordgeo::write_json(out_path, j);
}

struct PipelineOutcome {
    ordgeo::RunReport report;
    Eigen::MatrixXd positions;
    ordgeo::TripleSet triples{1};
};

PipelineOutcome run_pipeline(const Eigen::MatrixXd& points, const std::string& label,
                             const std::string& method, std::uint64_t seed,
                             const BasisArgs& basis_args, const SoeArgs& soe_args, std::size_t k,
                             bool linear_search, bool selection_only) {
    ordgeo::GroundTruthOracle oracle(points);
    auto [basis, ranks] = ordgeo::choose_basis(oracle, make_basis_config(basis_args, seed));
    auto embedding = linear_search ? ordgeo::embed_all_linear_search(oracle, ranks, basis)
                                   : ordgeo::embed_all(ranks, basis);

    PipelineOutcome out;
    out.report.method = method;
    out.report.dataset = label;
    out.report.d = static_cast<std::size_t>(points.cols());
    out.report.d_hat = basis.dimension_estimate();
    out.report.metadata["seed"] = seed;
    out.report.metadata["objects"] = static_cast<std::size_t>(points.rows());
    out.report.metadata["basis"] = basis_config_json(basis_args, seed);
    out.positions = embedding.coordinates;
    out.triples = ordgeo::TripleSet(static_cast<std::size_t>(points.rows()));

    if (method != "basis") {
        out.triples.merge(ordgeo::basis_triples(ranks));
        if (method == "extra+soe") {
            if (k == 0) k = ordgeo::default_knn_k(static_cast<std::size_t>(points.rows()));
            const auto mode = selection_only ? ordgeo::HarvestMode::Selection
                                             : ordgeo::HarvestMode::Sort;
            out.triples.merge(ordgeo::harvest_knn_triples(oracle, embedding, k, mode));
            out.report.metadata["knn_k"] = k;
        }
        ordgeo::SoeConfig soe;
        soe.dim = std::max<std::size_t>(1, basis.dimension_estimate());
        soe.margin = soe_args.margin;
        soe.restarts = soe_args.restarts;
        soe.loss_threshold = soe_args.loss_threshold;
        soe.threads = soe_args.threads;
        soe.seed = seed;
        soe.start = embedding.coordinates; // warm start: the ranks already order most pairs
        const auto fit = ordgeo::soe_fit_doubling(static_cast<std::size_t>(points.rows()),
                                                  out.triples, soe);
        out.positions = fit.positions;
        out.report.metadata["soe"] = soe_config_json(soe_args);
        out.report.metadata["soe_dim"] = static_cast<std::size_t>(fit.positions.cols());
        out.report.metadata["soe_loss"] = fit.final_loss;
        out.report.metadata["soe_converged"] = fit.converged;
        out.report.metadata["soe_dimension_doubled"] = fit.dimension_doubled;
        out.report.metadata["triples"] = out.triples.size();
    }

    out.report.comparisons = oracle.ledger().unique_count();
    const auto eval = ordgeo::evaluate_embedding(points, out.positions);
    out.report.tau = eval.tau;
    out.report.knn = eval.knn;
    out.report.rmse = eval.rmse;
    out.report.metadata["library_version"] = ordgeo::version_string;
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"ordinal geometry: embeddings from triplet comparisons"};
    app.set_version_flag("--version", std::string(ordgeo::version_string));
    app.require_subcommand(1);

    // generate
    auto* generate = app.add_subcommand("generate", "sample a synthetic dataset to CSV");
    InputArgs gen_input;
    std::string gen_out;
    add_input_options(generate, gen_input, true);
    generate->add_option("--out", gen_out, "output CSV path")->required();

    // basis
    auto* basis_cmd = app.add_subcommand("basis", "choose an ordinal basis and report its size");
    InputArgs basis_input;
    BasisArgs basis_basis;
    std::string basis_out;
    add_input_options(basis_cmd, basis_input);
    add_basis_options(basis_cmd, basis_basis);
    basis_cmd->add_option("--out", basis_out, "write the basis as JSON");

    // embed
    auto* embed_cmd = app.add_subcommand("embed", "choose a basis and embed every object");
    InputArgs embed_input;
    BasisArgs embed_basis;
    std::string embed_out;
    bool embed_linear = false;
    add_input_options(embed_cmd, embed_input);
    add_basis_options(embed_cmd, embed_basis);
    embed_cmd->add_flag("--linear-search-coords", embed_linear,
                        "locate coordinates by comparison search instead of lens medians");
    embed_cmd->add_option("--out", embed_out, "output CSV of embedded coordinates")->required();

    // refine
    auto* refine_cmd = app.add_subcommand("refine", "harvest ordinal triples around an embedding");
    InputArgs refine_input;
    BasisArgs refine_basis;
    std::string refine_out;
    std::size_t refine_k = 0;
    bool refine_selection = false;
    add_input_options(refine_cmd, refine_input);
    add_basis_options(refine_cmd, refine_basis);
    refine_cmd->add_option("--k", refine_k, "neighbors per object (default: ceil(log2 n))");
    refine_cmd->add_flag("--knn-selection-only", refine_selection,
                         "rank-select neighbor triples instead of fully sorting candidates");
    refine_cmd->add_option("--out", refine_out, "output triple file")->required();

    // soe
    auto* soe_cmd = app.add_subcommand("soe", "fit coordinates to a triple file");
    SoeArgs soe_soe;
    std::string soe_triples_path, soe_out;
    std::size_t soe_n = 0, soe_dim = 2;
    std::uint64_t soe_seed = 0;
    soe_cmd->add_option("--triples", soe_triples_path, "triple file from refine or pipeline")->required();
    soe_cmd->add_option("--n", soe_n, "object count (default: inferred from indices)");
    soe_cmd->add_option("--dim", soe_dim, "embedding dimension");
    soe_cmd->add_option("--seed", soe_seed, "random seed");
    add_soe_options(soe_cmd, soe_soe);
    soe_cmd->add_option("--out", soe_out, "output CSV of fitted coordinates")->required();

    // evaluate
    auto* eval_cmd = app.add_subcommand("evaluate", "score an embedding against true coordinates");
    std::string eval_truth, eval_positions, eval_out;
    std::size_t eval_k = 0;
    eval_cmd->add_option("--dataset", eval_truth, "CSV of true coordinates")->required();
    eval_cmd->add_option("--positions", eval_positions, "CSV of embedded coordinates")->required();
    eval_cmd->add_option("--k", eval_k, "neighbors for precision (default: ceil(log2 n))");
    eval_cmd->add_option("--out", eval_out, "write metrics JSON here instead of stdout");

    // pipeline
    auto* pipe_cmd = app.add_subcommand("pipeline", "run a full method and emit a report");
    InputArgs pipe_input;
    BasisArgs pipe_basis;
    SoeArgs pipe_soe;
    std::string pipe_method = "basis", pipe_out, pipe_emit_triples, pipe_positions_out;
    std::size_t pipe_k = 0;
    bool pipe_linear = false, pipe_selection = false;
    add_input_options(pipe_cmd, pipe_input);
    add_basis_options(pipe_cmd, pipe_basis);
    add_soe_options(pipe_cmd, pipe_soe);
    pipe_cmd->add_option("--method", pipe_method, "embedding method")
        ->check(CLI::IsMember({"basis", "basis+soe", "extra+soe"}));
    pipe_cmd->add_option("--k", pipe_k, "neighbors per object for extra triples");
    pipe_cmd->add_flag("--linear-search-coords", pipe_linear,
                       "locate coordinates by comparison search instead of lens medians");
    pipe_cmd->add_flag("--knn-selection-only", pipe_selection,
                       "rank-select neighbor triples instead of fully sorting candidates");
    pipe_cmd->add_option("--emit-triples", pipe_emit_triples, "also write harvested triples here");
    pipe_cmd->add_option("--positions-out", pipe_positions_out, "also write final coordinates here");
    pipe_cmd->add_option("--out", pipe_out, "write the report JSON here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*generate) {
            const auto [points, label] = resolve_input(gen_input);
            ordgeo::write_points_csv(gen_out, points);
            json config{{"input", label},
                        {"seed", gen_input.seed},
                        {"gmm_components", gen_input.gmm_components},
                        {"gmm_sigma", gen_input.gmm_sigma}};
            write_manifest(gen_out, "generate", config);
        } else if (*basis_cmd) {
            const auto [points, label] = resolve_input(basis_input);
            ordgeo::GroundTruthOracle oracle(points);
            auto [basis, ranks] = ordgeo::choose_basis(oracle, make_basis_config(basis_basis, basis_input.seed));
            json summary{{"dataset", label},
                         {"dimension_estimate", basis.dimension_estimate()},
                         {"comparisons", oracle.ledger().unique_count()},
                         {"total_calls", oracle.ledger().total_calls()}};
            std::cout << summary.dump(2) << '\n';
            if (!basis_out.empty()) {
                ordgeo::write_json(basis_out, ordgeo::basis_to_json(basis));
                write_manifest(basis_out, "basis",
                               basis_config_json(basis_basis, basis_input.seed));
            }
        } else if (*embed_cmd) {
            const auto [points, label] = resolve_input(embed_input);
            ordgeo::GroundTruthOracle oracle(points);
            auto [basis, ranks] = ordgeo::choose_basis(oracle, make_basis_config(embed_basis, embed_input.seed));
            const auto embedding = embed_linear
                                       ? ordgeo::embed_all_linear_search(oracle, ranks, basis)
                                       : ordgeo::embed_all(ranks, basis);
            ordgeo::write_points_csv(embed_out, embedding.coordinates);
            json config = basis_config_json(embed_basis, embed_input.seed);
            config["input"] = label;
            config["linear_search_coords"] = embed_linear;
            config["comparisons"] = oracle.ledger().unique_count();
            write_manifest(embed_out, "embed", config);
        } else if (*refine_cmd) {
            const auto [points, label] = resolve_input(refine_input);
            ordgeo::GroundTruthOracle oracle(points);
            auto [basis, ranks] = ordgeo::choose_basis(oracle, make_basis_config(refine_basis, refine_input.seed));
            const auto embedding = ordgeo::embed_all(ranks, basis);
            auto triples = ordgeo::basis_triples(ranks);
            std::size_t k = refine_k;
            if (k == 0) k = ordgeo::default_knn_k(static_cast<std::size_t>(points.rows()));
            const auto mode = refine_selection ? ordgeo::HarvestMode::Selection
                                               : ordgeo::HarvestMode::Sort;
            triples.merge(ordgeo::harvest_knn_triples(oracle, embedding, k, mode));
            ordgeo::write_triples(refine_out, triples);
            json config = basis_config_json(refine_basis, refine_input.seed);
            config["input"] = label;
            config["k"] = k;
            config["selection_only"] = refine_selection;
            config["comparisons"] = oracle.ledger().unique_count();
            write_manifest(refine_out, "refine", config);
        } else if (*soe_cmd) {
            std::size_t n = soe_n;
            if (n == 0) {
                // Infer the object count from the largest index in the file.
                const auto probe = ordgeo::read_triples(soe_triples_path,
                                                        std::numeric_limits<std::size_t>::max());
                for (const auto& t : probe.items())
                    n = std::max({n, t.head + 1, t.closer + 1, t.farther + 1});
            }
            const auto triples = ordgeo::read_triples(soe_triples_path, n);
            ordgeo::SoeConfig config;
            config.dim = soe_dim;
            config.margin = soe_soe.margin;
            config.restarts = soe_soe.restarts;
            config.loss_threshold = soe_soe.loss_threshold;
            config.threads = soe_soe.threads;
            config.seed = soe_seed;
            const auto fit = ordgeo::soe_fit(n, triples, config);
            ordgeo::write_points_csv(soe_out, fit.positions);
            json manifest_config = soe_config_json(soe_soe);
            manifest_config["triples"] = soe_triples_path;
            manifest_config["n"] = n;
            manifest_config["dim"] = soe_dim;
            manifest_config["seed"] = soe_seed;
            manifest_config["final_loss"] = fit.final_loss;
            manifest_config["converged"] = fit.converged;
            write_manifest(soe_out, "soe", manifest_config);
        } else if (*eval_cmd) {
            const auto truth = ordgeo::read_points_csv(eval_truth);
            const auto positions = ordgeo::read_points_csv(eval_positions);
            const auto report = ordgeo::evaluate_embedding(truth, positions, eval_k);
            emit_json(json{{"tau", report.tau}, {"knn", report.knn}, {"rmse", report.rmse}},
                      eval_out);
        } else if (*pipe_cmd) {
            const auto [points, label] = resolve_input(pipe_input);
            const auto outcome = run_pipeline(points, label, pipe_method, pipe_input.seed,
                                              pipe_basis, pipe_soe, pipe_k, pipe_linear,
                                              pipe_selection);
            emit_json(ordgeo::report_to_json(outcome.report), pipe_out);
            if (!pipe_out.empty()) {
                json config = basis_config_json(pipe_basis, pipe_input.seed);
                config["method"] = pipe_method;
                config["input"] = label;
                config["soe"] = soe_config_json(pipe_soe);
                write_manifest(pipe_out, "pipeline", config);
            }
            if (!pipe_emit_triples.empty()) ordgeo::write_triples(pipe_emit_triples, outcome.triples);
            if (!pipe_positions_out.empty())
                ordgeo::write_points_csv(pipe_positions_out, outcome.positions);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
