// Command-line front end: fixtures, train, rank, eval, optimize, variant,
// sweep, export-vectors. Option values resolve in three layers: built-in
// defaults, then --config key=value entries, then explicit flags.

#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "tagrec/config.hpp"
#include "tagrec/experiments.hpp"
#include "tagrec/fixture.hpp"
#include "tagrec/ranking.hpp"

using namespace tagrec;
namespace fs = std::filesystem;

namespace {

struct GlobalOptions {
    TrainConfig train;
    OptConfig opt;
};

// --config is applied before CLI11 writes flag values, so explicit flags win.
void preload_config(int argc, char** argv, GlobalOptions& options) {
    for (int i = 1; i < argc - 1; ++i) {
        if (std::string_view(argv[i]) == "--config")
            apply_config(load_key_value_config(argv[i + 1]), options.train, options.opt);
    }
}

void add_train_flags(CLI::App* cmd, TrainConfig& train) {
    cmd->add_option("--dim", train.dim, "Embedding dimension")->capture_default_str();
    cmd->add_option("--window", train.window, "Context window size")->capture_default_str();
    cmd->add_option("--min-count", train.min_count, "Minimum tag frequency")
        ->capture_default_str();
    cmd->add_option("--iterations", train.iterations, "Training passes over the sentences")
        ->capture_default_str();
    cmd->add_option("--negative", train.negative_samples, "Negative samples per position")
        ->capture_default_str();
    cmd->add_option("--learning-rate", train.learning_rate_start, "Starting learning rate")
        ->capture_default_str();
}

void add_opt_flags(CLI::App* cmd, OptConfig& opt, std::string& objective_name,
                   std::string& strategy_name_out) {
    cmd->add_option("--objective", objective_name, "Metric to optimize")->capture_default_str();
    cmd->add_option("--strategy", strategy_name_out, "same_for_all or per_user")
        ->capture_default_str();
    cmd->add_option("--range-lo", opt.range_lo, "Parameter range lower bound")
        ->capture_default_str();
    cmd->add_option("--range-hi", opt.range_hi, "Parameter range upper bound")
        ->capture_default_str();
    cmd->add_option("--grid-step", opt.grid_step, "Grid lattice step")->capture_default_str();
    cmd->add_option("--ga-population", opt.ga_population, "GA population size")
        ->capture_default_str();
    cmd->add_option("--ga-generations", opt.ga_generations, "GA generations")
        ->capture_default_str();
    cmd->add_flag("--full-range", "Grid the full range instead of the GA box");
}

void finish_opt_flags(CLI::App* cmd, OptConfig& opt, const std::string& objective_name,
                      const std::string& strategy_name_in) {
    opt.objective = metric_from_string(objective_name);
    opt.strategy = strategy_from_string(strategy_name_in);
    if (cmd->count("--full-range") > 0) opt.ga_range = false;
}

void write_text_file(const fs::path& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
}

void warn_on_profiles_without_positives(const std::vector<UserProfile>& profiles) {
    for (const UserProfile& profile : profiles) {
        bool has_positive = false;
        for (const ProfileEntry& entry : profile.entries)
            if (entry.rating > 2) has_positive = true;
        if (!has_positive)
            std::cerr << "warning: profile '" << profile.user_id
                      << "' has no positive entry; its self-ranking score is 0\n";
    }
}

void print_params(const SearchResult& result) {
    if (result.global_params) {
        std::printf("alpha %.4f  beta %.4f  gamma %.4f\n", result.global_params->alpha,
                    result.global_params->beta, result.global_params->gamma);
    }
    for (const auto& [user, params] : result.user_params)
        std::printf("%s  alpha %.4f  beta %.4f  gamma %.4f\n", user.c_str(), params.alpha,
                    params.beta, params.gamma);
    std::printf("objective %.6f over the tuning profiles\n", result.objective_value);
}

void print_report_summary(const EvalReport& report) {
    for (const std::string& skipped : report.skipped)
        std::cerr << "warning: request '" << skipped << "' not in qrels, skipped\n";
    std::printf("requests %zu\n", report.per_request.size());
    for (Metric metric : all_metrics())
        std::printf("%-12s all  %.4f\n", std::string(metric_name(metric)).c_str(),
                    metric_value(report.means, metric));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Tag-embedding POI recommendation pipeline"};
    app.require_subcommand(1);

    GlobalOptions options;
    try {
        preload_config(argc, argv, options);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }

    std::string config_path;
    std::uint64_t seed = 0;
    app.add_option("--config", config_path, "key=value config file");
    auto* seed_option = app.add_option("--seed", seed, "Seed for training and optimization");

    // fixtures
    auto* fixtures_cmd = app.add_subcommand("fixtures", "Generate a synthetic dataset");
    std::string fixtures_out;
    int fx_users = 4, fx_pois = 120, fx_tags = 20;
    ClusterSpec cluster;
    fixtures_cmd->add_option("--out", fixtures_out, "Output directory")->required();
    fixtures_cmd->add_option("--users", fx_users, "Number of users")->capture_default_str();
    fixtures_cmd->add_option("--pois", fx_pois, "Number of POIs")->capture_default_str();
    fixtures_cmd->add_option("--tags", fx_tags, "Number of distinct tags")->capture_default_str();
    fixtures_cmd->add_option("--clusters", cluster.n_clusters, "Synonym clusters")
        ->capture_default_str();
    fixtures_cmd->add_flag("--split-synonyms", cluster.split_synonyms,
                           "Keep profile and candidate tag halves disjoint");
    fixtures_cmd->add_option("--cross-cluster", cluster.cross_cluster_prob,
                             "Per-tag chance of a foreign-cluster tag")
        ->capture_default_str();
    fixtures_cmd->add_option("--profile-size", cluster.profile_size, "Rated POIs per user")
        ->capture_default_str();
    fixtures_cmd->add_option("--candidates", cluster.candidates_per_request,
                             "Candidates per request")
        ->capture_default_str();

    // train
    auto* train_cmd = app.add_subcommand("train", "Train or encode a tag embedding model");
    std::string train_pois, train_out;
    bool train_one_hot = false;
    int train_permutations = 1;
    train_cmd->add_option("--pois", train_pois, "POI collection file")->required();
    train_cmd->add_option("--out", train_out, "Model output path")->required();
    train_cmd->add_flag("--one-hot", train_one_hot, "One-hot encode instead of training");
    train_cmd->add_option("--permutations", train_permutations,
                          "Sentences per POI (extra random orderings)")
        ->capture_default_str();
    add_train_flags(train_cmd, options.train);

    // rank
    auto* rank_cmd = app.add_subcommand("rank", "Rank request candidates with fixed parameters");
    std::string rank_model, rank_data, rank_out, rank_tag = "tagrec";
    double rank_alpha = 1.0, rank_beta = 1.0, rank_gamma = 1.0;
    bool rank_weighted = false;
    rank_cmd->add_option("--model", rank_model, "Embedding model file")->required();
    rank_cmd->add_option("--data", rank_data, "Dataset directory")->required();
    rank_cmd->add_option("--out", rank_out, "Run file output path")->required();
    rank_cmd->add_option("--alpha", rank_alpha, "Positive profile weight")->capture_default_str();
    rank_cmd->add_option("--beta", rank_beta, "Neutral profile weight")->capture_default_str();
    rank_cmd->add_option("--gamma", rank_gamma, "Negative profile weight")->capture_default_str();
    rank_cmd->add_flag("--weighted", rank_weighted, "Use rating-weighted profiles");
    rank_cmd->add_option("--run-tag", rank_tag, "Run tag")->capture_default_str();

    // eval
    auto* eval_cmd = app.add_subcommand("eval", "Evaluate a run against qrels");
    std::string eval_run, eval_qrels, eval_csv;
    int eval_threshold = 1;
    eval_cmd->add_option("--run", eval_run, "Run file")->required();
    eval_cmd->add_option("--qrels", eval_qrels, "Qrels file")->required();
    eval_cmd->add_option("--threshold", eval_threshold, "Relevance threshold (grade >=)")
        ->capture_default_str();
    eval_cmd->add_option("--csv", eval_csv, "Write the per-request report CSV here");

    // Objective/strategy flag defaults reflect any --config values.
    const std::string default_objective = std::string(metric_name(options.opt.objective));
    const std::string default_strategy = std::string(strategy_name(options.opt.strategy));

    // optimize
    auto* optimize_cmd = app.add_subcommand("optimize", "Tune (alpha, gamma) on the profiles");
    std::string opt_model, opt_data, opt_trace;
    bool opt_weighted = false;
    std::string opt_objective = default_objective, opt_strategy = default_strategy;
    optimize_cmd->add_option("--model", opt_model, "Embedding model file")->required();
    optimize_cmd->add_option("--data", opt_data, "Dataset directory")->required();
    optimize_cmd->add_flag("--weighted", opt_weighted, "Use rating-weighted profiles");
    optimize_cmd->add_option("--trace", opt_trace, "Write the lattice trace CSV here");
    add_opt_flags(optimize_cmd, options.opt, opt_objective, opt_strategy);

    // variant
    auto* variant_cmd = app.add_subcommand("variant", "Run one named method end to end");
    std::string variant_name_arg, variant_data, variant_out_dir;
    std::string variant_objective = default_objective, variant_strategy = default_strategy;
    variant_cmd->add_option("--name", variant_name_arg, "WUPSame, UnWUPUniq01, ...")->required();
    variant_cmd->add_option("--data", variant_data, "Dataset directory")->required();
    variant_cmd->add_option("--out-dir", variant_out_dir, "Output directory")->required();
    add_train_flags(variant_cmd, options.train);
    add_opt_flags(variant_cmd, options.opt, variant_objective, variant_strategy);

    // sweep
    auto* sweep_cmd = app.add_subcommand("sweep", "Run a variant grid over one axis");
    std::string sweep_axis_arg = "iterations", sweep_data, sweep_out;
    std::string sweep_metric = "ndcg_cut_5";
    std::vector<std::string> sweep_values, sweep_variants;
    std::string sweep_objective = default_objective, sweep_strategy = default_strategy;
    sweep_cmd->add_option("--axis", sweep_axis_arg,
                          "iterations | dataset_size | objective_metric")
        ->capture_default_str();
    sweep_cmd->add_option("--values", sweep_values, "Axis values")->required()->delimiter(',');
    sweep_cmd->add_option("--variants", sweep_variants, "Variant names")
        ->required()
        ->delimiter(',');
    sweep_cmd->add_option("--data", sweep_data, "Dataset directory")->required();
    sweep_cmd->add_option("--out", sweep_out, "Output CSV path")->required();
    sweep_cmd->add_option("--metric", sweep_metric, "Reported metric")->capture_default_str();
    add_train_flags(sweep_cmd, options.train);
    add_opt_flags(sweep_cmd, options.opt, sweep_objective, sweep_strategy);

    // export-vectors
    auto* export_cmd = app.add_subcommand("export-vectors", "Dump tag and POI vectors as CSV");
    std::string export_model, export_pois, export_out;
    export_cmd->add_option("--model", export_model, "Embedding model file")->required();
    export_cmd->add_option("--pois", export_pois, "POI collection file (optional)");
    export_cmd->add_option("--out", export_out, "Output CSV path")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (seed_option->count() > 0) {
            options.train.seed = seed;
            options.opt.seed = seed;
        }

        if (fixtures_cmd->parsed()) {
            const Dataset dataset =
                generate_fixture(options.train.seed, fx_users, fx_pois, fx_tags, cluster);
            write_dataset(dataset, fixtures_out);
            std::printf("wrote %zu pois, %zu profiles, %zu requests to %s\n",
                        dataset.pois.size(), dataset.profiles.size(), dataset.requests.size(),
                        fixtures_out.c_str());
        } else if (train_cmd->parsed()) {
            const std::vector<Poi> pois = load_pois(train_pois);
            EmbeddingModel model;
            if (train_one_hot) {
                model = encode_one_hot(pois);
            } else {
                const auto sentences =
                    build_tag_sentences(pois, train_permutations, options.train.seed);
                model = train_cbow(sentences, options.train);
            }
            save_model(model, train_out);
            std::printf("%s model: dim %d, vocabulary %zu -> %s\n",
                        std::string(model_kind_name(model.kind)).c_str(), model.dim,
                        model.vocab.size(), train_out.c_str());
        } else if (rank_cmd->parsed()) {
            const EmbeddingModel model = load_model(rank_model);
            const Dataset dataset = load_dataset(rank_data);
            const RocchioParams params{rank_alpha, rank_beta, rank_gamma};
            const Weighting weighting =
                rank_weighted ? Weighting::weighted : Weighting::unweighted;
            std::vector<RankedList> ranked;
            for (const Request& request : resolve_requests(dataset)) {
                const UserModel user = build_user_model(model, request.profile, weighting, params);
                std::vector<PoiVector> candidates;
                for (const Poi& poi : request.candidates)
                    candidates.push_back(poi_vector(model, poi));
                ranked.push_back(rank_candidates(user, request.request_id, candidates));
            }
            const RunFile run = emit_run(ranked, rank_tag);
            write_run(run, rank_out);
            std::printf("wrote %zu rows for %zu requests to %s\n", run.size(), ranked.size(),
                        rank_out.c_str());
        } else if (eval_cmd->parsed()) {
            const RunFile run = read_run(eval_run);
            const Qrels qrels = load_qrels(eval_qrels);
            const EvalReport report = evaluate_run(run, qrels, eval_threshold);
            print_report_summary(report);
            if (!eval_csv.empty()) write_text_file(eval_csv, report_csv(report));
        } else if (optimize_cmd->parsed()) {
            finish_opt_flags(optimize_cmd, options.opt, opt_objective, opt_strategy);
            const EmbeddingModel model = load_model(opt_model);
            const Dataset dataset = load_dataset(opt_data);
            warn_on_profiles_without_positives(dataset.profiles);
            const Weighting weighting = opt_weighted ? Weighting::weighted : Weighting::unweighted;
            const ParamBox box =
                options.opt.ga_range
                    ? genetic_range_search(model, dataset.profiles, weighting, options.opt)
                    : full_range_box(options.opt);
            const SearchResult result =
                grid_search(model, dataset.profiles, weighting, box, options.opt);
            print_params(result);
            if (!opt_trace.empty()) write_text_file(opt_trace, trace_csv(result));
        } else if (variant_cmd->parsed()) {
            finish_opt_flags(variant_cmd, options.opt, variant_objective, variant_strategy);
            const Variant variant = variant_from_string(variant_name_arg);
            const Dataset dataset = load_dataset(variant_data);
            warn_on_profiles_without_positives(dataset.profiles);
            const VariantResult result =
                run_variant(variant_spec(variant), dataset, options.train, options.opt);

            fs::create_directories(variant_out_dir);
            const fs::path base = fs::path(variant_out_dir) / variant_name_arg;
            write_run(result.run, base.string() + ".run");
            write_text_file(base.string() + ".trace.csv", trace_csv(result.search));
            save_model(result.model, base.string() + ".model");
            print_params(result.search);
            if (result.report) {
                write_text_file(base.string() + ".eval.csv", report_csv(*result.report));
                print_report_summary(*result.report);
            } else {
                std::printf("no qrels: evaluation skipped\n");
            }
        } else if (sweep_cmd->parsed()) {
            finish_opt_flags(sweep_cmd, options.opt, sweep_objective, sweep_strategy);
            const SweepAxis axis = sweep_axis_from_string(sweep_axis_arg);
            std::vector<Variant> variants;
            for (const std::string& name : sweep_variants)
                variants.push_back(variant_from_string(name));
            const Dataset dataset = load_dataset(sweep_data);
            const auto cells = sweep(axis, sweep_values, variants, dataset, options.train,
                                     options.opt, metric_from_string(sweep_metric));
            write_text_file(sweep_out, sweep_csv(cells));
            std::printf("wrote %zu cells to %s\n", cells.size(), sweep_out.c_str());
        } else if (export_cmd->parsed()) {
            const EmbeddingModel model = load_model(export_model);
            std::vector<Poi> pois;
            if (!export_pois.empty()) pois = load_pois(export_pois);
            write_text_file(export_out, export_vectors(model, pois));
            std::printf("wrote %zu tag rows and %zu poi rows to %s\n", model.vocab.size(),
                        pois.size(), export_out.c_str());
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
