// Acceptance suite: one line per criterion, nonzero exit if any required
// criterion fails. Criterion 9 is dataset-contingent and reports SKIP unless
// TAGREC_TREC_DATA points at a converted TREC CS 2016 dataset directory.
//
// Usage: acceptance [path-to-cli-binary]
// The CLI path (passed by ctest) lets the determinism criterion compare the
// bytes written by two real process invocations; without it the same
// pipelines run in process.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracle_metrics.hpp"
#include "tagrec/experiments.hpp"
#include "tagrec/fixture.hpp"
#include "tagrec/ranking.hpp"

using namespace tagrec;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

void report(int number, const char* title, bool pass, const std::string& detail) {
    std::printf("%s  criterion %d: %s (%s)\n", pass ? "PASS" : "FAIL", number, title,
                detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path);
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

// ---------------------------------------------------------------- criterion 1

bool check_against_oracle(const std::vector<std::string>& ranking,
                          const std::map<std::string, int>& judgments, int threshold,
                          double& worst) {
    const MetricValues values = evaluate_ranking(ranking, judgments, threshold);
    for (Metric metric : all_metrics()) {
        const double got = metric_value(values, metric);
        const double want = oracle::metric(metric, ranking, judgments, threshold);
        worst = std::max(worst, std::fabs(got - want));
        if (std::fabs(got - want) > 1e-9) return false;
    }
    return true;
}

void criterion_1_metric_oracle() {
    Timer timer;
    bool pass = true;
    double worst = 0.0;
    long cases = 0;

    // Exhaustive: every grade assignment in {0,1,2}^n for n = 1..8.
    for (int n = 1; n <= 8 && pass; ++n) {
        const long total = static_cast<long>(std::pow(3, n));
        for (long code = 0; code < total && pass; ++code) {
            std::vector<std::string> ranking;
            std::map<std::string, int> judgments;
            long rest = code;
            for (int i = 0; i < n; ++i) {
                const std::string id = "d" + std::to_string(i);
                ranking.push_back(id);
                judgments[id] = static_cast<int>(rest % 3);
                rest /= 3;
            }
            pass = check_against_oracle(ranking, judgments, 1, worst) &&
                   check_against_oracle(ranking, judgments, 2, worst);
            ++cases;
        }
    }

    // Randomized: unjudged retrieved documents and judged unretrieved ones.
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<int> length(1, 8);
    std::uniform_int_distribution<int> state(0, 3);
    std::uniform_int_distribution<int> extra(0, 4);
    std::uniform_int_distribution<int> grade(0, 2);
    for (int trial = 0; trial < 1000 && pass; ++trial) {
        std::vector<std::string> ranking;
        std::map<std::string, int> judgments;
        const int n = length(rng);
        for (int i = 0; i < n; ++i) {
            const std::string id = "d" + std::to_string(i);
            ranking.push_back(id);
            const int s = state(rng);
            if (s < 3) judgments[id] = s;
        }
        const int m = extra(rng);
        for (int i = 0; i < m; ++i) judgments["u" + std::to_string(i)] = grade(rng);
        pass = check_against_oracle(ranking, judgments, 1, worst) &&
               check_against_oracle(ranking, judgments, 2, worst);
        ++cases;
    }

    const double elapsed = timer.seconds();
    pass = pass && elapsed < 60.0;
    char detail[160];
    std::snprintf(detail, sizeof(detail), "%ld rankings, max |diff| %.2e, %.1fs", cases, worst,
                  elapsed);
    report(1, "metric oracle equivalence", pass, detail);
}

// ---------------------------------------------------------------- criterion 2

void criterion_2_rating_scale() {
    const bool pass = scale_rating(0) == -3 && scale_rating(1) == -2 && scale_rating(2) == 1 &&
                      scale_rating(3) == 2 && scale_rating(4) == 3;
    report(2, "rating-scale exactness", pass, "5/5 table entries");
}

// ---------------------------------------------------------------- criterion 3

EmbeddingModel random_model(std::mt19937_64& rng, int dim, int n_tags) {
    std::uniform_real_distribution<double> value(-10.0, 10.0);
    EmbeddingModel model;
    model.kind = ModelKind::dense;
    model.dim = dim;
    for (int t = 0; t < n_tags; ++t) {
        Vec v(dim);
        for (double& x : v) x = value(rng);
        model.vocab["t" + std::to_string(t)] = std::move(v);
    }
    return model;
}

Poi random_poi(std::mt19937_64& rng, const std::string& id, int n_tags, int max_count) {
    std::uniform_int_distribution<int> count(0, max_count);
    std::uniform_int_distribution<int> pick(0, n_tags - 1);
    Poi poi{id, {}};
    for (int i = count(rng); i > 0; --i) {
        const std::string name = "t" + std::to_string(pick(rng));
        poi.tags.push_back(Tag{name, name});
    }
    return poi;
}

void criterion_3_vector_algebra() {
    Timer timer;
    std::mt19937_64 rng(41);
    std::uniform_int_distribution<int> dim_dist(2, 8);
    std::uniform_real_distribution<double> param(-8.0, 8.0);
    std::uniform_int_distribution<int> rating(0, 4);
    bool pass = true;
    double worst = 0.0;

    for (int trial = 0; trial < 1000 && pass; ++trial) {
        const int dim = dim_dist(rng);
        const EmbeddingModel model = random_model(rng, dim, 10);

        // poi_vector additivity over tag multisets.
        const Poi a = random_poi(rng, "a", 10, 5);
        const Poi b = random_poi(rng, "b", 10, 5);
        Poi merged{"m", a.tags};
        merged.tags.insert(merged.tags.end(), b.tags.begin(), b.tags.end());
        const Vec va = poi_vector(model, a).vector;
        const Vec vb = poi_vector(model, b).vector;
        const Vec vm = poi_vector(model, merged).vector;
        for (int d = 0; d < dim; ++d) {
            const double diff = std::fabs(vm[d] - (va[d] + vb[d]));
            worst = std::max(worst, diff);
            if (diff > 1e-12) pass = false;
        }

        // Centroid arithmetic against a long-double accumulation.
        std::vector<ProfileEntry> entries;
        std::uniform_int_distribution<int> entry_count(1, 6);
        const int n = entry_count(rng);
        for (int i = 0; i < n; ++i)
            entries.push_back(
                ProfileEntry{random_poi(rng, "p" + std::to_string(i), 10, 5), rating(rng)});
        const Vec centroid = profile_unweighted(model, entries);
        const Vec weighted = profile_weighted(model, entries);
        for (int d = 0; d < dim; ++d) {
            long double plain = 0.0L, scaled = 0.0L;
            for (const ProfileEntry& entry : entries) {
                const double component = poi_vector(model, entry.poi).vector[d];
                plain += component;
                scaled += static_cast<long double>(scale_rating(entry.rating)) * component;
            }
            plain /= n;
            scaled /= n;
            const double diff_plain = std::fabs(centroid[d] - static_cast<double>(plain));
            const double diff_scaled = std::fabs(weighted[d] - static_cast<double>(scaled));
            worst = std::max({worst, diff_plain, diff_scaled});
            if (diff_plain > 1e-12 || diff_scaled > 1e-12) pass = false;
        }

        // combine_rocchio linearity.
        Vec pos(dim), neu(dim), neg(dim);
        std::uniform_real_distribution<double> coord(-5.0, 5.0);
        for (int d = 0; d < dim; ++d) {
            pos[d] = coord(rng);
            neu[d] = coord(rng);
            neg[d] = coord(rng);
        }
        const RocchioParams params{param(rng), param(rng), param(rng)};
        const Vec combined = combine_rocchio(pos, neu, neg, params);
        for (int d = 0; d < dim; ++d) {
            const long double expected = static_cast<long double>(params.alpha) * pos[d] +
                                         static_cast<long double>(params.beta) * neu[d] -
                                         static_cast<long double>(params.gamma) * neg[d];
            const double diff = std::fabs(combined[d] - static_cast<double>(expected));
            worst = std::max(worst, diff);
            if (diff > 1e-12) pass = false;
        }
    }
    char detail[120];
    std::snprintf(detail, sizeof(detail), "1000 cases, max |diff| %.2e, %.1fs", worst,
                  timer.seconds());
    report(3, "vector-model algebra", pass, detail);
}

// ---------------------------------------------------------------- criterion 4

void criterion_4_ranking_invariances() {
    Timer timer;
    std::mt19937_64 rng(43);
    std::uniform_int_distribution<int> n_cands(2, 12);
    std::uniform_int_distribution<int> dim_dist(2, 6);
    std::uniform_real_distribution<double> coord(-4.0, 4.0);
    std::uniform_real_distribution<double> lambda(0.1, 10.0);
    bool pass = true;

    for (int trial = 0; trial < 1000 && pass; ++trial) {
        const int dim = dim_dist(rng);
        const int n = n_cands(rng);
        std::vector<PoiVector> candidates;
        for (int i = 0; i < n; ++i) {
            Vec v(dim);
            for (double& x : v) x = coord(rng);
            char id[16];
            std::snprintf(id, sizeof(id), "p%03d", i);
            candidates.push_back(PoiVector{id, std::move(v)});
        }
        // Duplicate a vector under a new id to force a tie.
        if (n >= 2) {
            PoiVector dup = candidates[0];
            dup.poi_id = "p-dup";
            candidates.push_back(dup);
        }

        UserModel user;
        user.combined.resize(dim);
        for (double& x : user.combined) x = coord(rng);

        const RankedList base = rank_candidates(user, "r", candidates);

        // Tie determinism: scores non-increasing, ids ascending within ties.
        for (std::size_t i = 1; i < base.items.size(); ++i) {
            if (base.items[i - 1].score < base.items[i].score) pass = false;
            if (base.items[i - 1].score == base.items[i].score &&
                base.items[i - 1].poi_id >= base.items[i].poi_id)
                pass = false;
        }

        // Positive scaling leaves order and scores unchanged.
        UserModel scaled = user;
        scale_inplace(scaled.combined, lambda(rng));
        const RankedList after = rank_candidates(scaled, "r", candidates);
        for (std::size_t i = 0; i < base.items.size(); ++i) {
            if (base.items[i].poi_id != after.items[i].poi_id) pass = false;
            if (std::fabs(base.items[i].score - after.items[i].score) > 1e-12) pass = false;
        }

        // Candidate order never matters.
        std::shuffle(candidates.begin(), candidates.end(), rng);
        const RankedList shuffled = rank_candidates(user, "r", candidates);
        for (std::size_t i = 0; i < base.items.size(); ++i) {
            if (base.items[i].poi_id != shuffled.items[i].poi_id) pass = false;
            if (base.items[i].score != shuffled.items[i].score) pass = false;
        }
    }
    char detail[80];
    std::snprintf(detail, sizeof(detail), "1000 instances, %.1fs", timer.seconds());
    report(4, "ranking invariances", pass, detail);
}

// ---------------------------------------------------------------- criterion 5

std::vector<Sentence> two_cluster_corpus(int n_pois, int tags_per_cluster, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> count(2, 5);
    std::uniform_int_distribution<int> pick(0, tags_per_cluster - 1);
    std::vector<Sentence> sentences;
    for (int p = 0; p < n_pois; ++p) {
        Sentence sentence;
        for (int t = count(rng); t > 0; --t)
            sentence.push_back(((p % 2) == 0 ? "a" : "b") + std::to_string(pick(rng)));
        sentences.push_back(std::move(sentence));
    }
    return sentences;
}

void criterion_5_embedding_clusters() {
    Timer timer;
    int separated = 0;
    double worst_margin = 1e9;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const auto sentences = two_cluster_corpus(200, 10, seed);
        TrainConfig config;  // dim 9, window 5, min_count 3, 1000 iterations
        config.seed = seed;
        const EmbeddingModel model = train_cbow(sentences, config);

        std::vector<const Vec*> a, b;
        for (const auto& [tag, vec] : model.vocab) (tag[0] == 'a' ? a : b).push_back(&vec);
        double intra = 0.0, inter = 0.0;
        int n_intra = 0, n_inter = 0;
        for (const auto* group : {&a, &b})
            for (std::size_t i = 0; i < group->size(); ++i)
                for (std::size_t j = i + 1; j < group->size(); ++j) {
                    intra += cosine(*(*group)[i], *(*group)[j]);
                    ++n_intra;
                }
        for (const Vec* va : a)
            for (const Vec* vb : b) {
                inter += cosine(*va, *vb);
                ++n_inter;
            }
        const double margin = intra / n_intra - inter / n_inter;
        worst_margin = std::min(worst_margin, margin);
        if (margin >= 0.2) ++separated;
    }
    const double elapsed = timer.seconds();
    const bool pass = separated >= 9 && elapsed < 120.0;
    char detail[120];
    std::snprintf(detail, sizeof(detail), "%d/10 seeds >= 0.2 margin, min margin %.3f, %.1fs",
                  separated, worst_margin, elapsed);
    report(5, "embedding cluster sanity", pass, detail);
}

// ---------------------------------------------------------------- criterion 6

void criterion_6_dense_beats_one_hot() {
    Timer timer;
    int wins_weighted = 0, wins_unweighted = 0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        ClusterSpec cluster;
        cluster.split_synonyms = true;
        const Dataset dataset = generate_fixture(seed, 8, 200, 20, cluster);

        TrainConfig train;  // dim 9, window 5, min_count 3, 1000 iterations
        train.seed = seed;
        OptConfig opt;
        opt.seed = seed;

        auto ndcg5 = [&](Variant variant) {
            const VariantResult result = run_variant(variant_spec(variant), dataset, train, opt);
            return mean_metric(*result.report, Metric::ndcg_cut_5);
        };
        if (ndcg5(Variant::WUPSame) > ndcg5(Variant::WUPSame01)) ++wins_weighted;
        if (ndcg5(Variant::UnWUPSame) > ndcg5(Variant::UnWUPSame01)) ++wins_unweighted;
    }
    const double elapsed = timer.seconds();
    const bool pass = wins_weighted >= 8 && wins_unweighted >= 8 && elapsed < 300.0;
    char detail[140];
    std::snprintf(detail, sizeof(detail),
                  "WUPSame > WUPSame01 on %d/10 seeds, UnWUPSame > UnWUPSame01 on %d/10, %.1fs",
                  wins_weighted, wins_unweighted, elapsed);
    report(6, "dense beats one-hot at desk scale", pass, detail);
}

// ---------------------------------------------------------------- criterion 7

void criterion_7_optimizer() {
    Timer timer;
    bool grid_ok = true;

    // Grid search equals the exhaustive lattice argmax on varied landscapes.
    const std::vector<std::pair<const char*, Objective2D>> landscapes = {
        {"gaussian", [](double a, double g) {
             return std::exp(-((a - 1.3) * (a - 1.3) + (g + 2.1) * (g + 2.1)) / 2.0);
         }},
        {"separable", [](double a, double g) { return -std::fabs(a - 0.37) - std::fabs(g - 3.1); }},
        {"linear", [](double a, double g) { return 0.3 * a - 0.7 * g; }},
        {"plateau", [](double a, double g) { return (a > 1.0 && g < -1.0) ? 1.0 : 0.0; }},
        {"ripple", [](double a, double g) { return std::sin(a) * std::cos(g); }},
    };
    OptConfig config;
    for (const auto& [name, objective] : landscapes) {
        const ParamBox box{-4.0, 4.0, -4.0, 4.0};
        const SearchResult result = grid_search(objective, box, config);
        double best = -1e300;
        long best_ka = 0, best_kg = 0;
        for (long ka = -20; ka <= 20; ++ka)
            for (long kg = -20; kg <= 20; ++kg) {
                const double score = objective(ka * 0.2, kg * 0.2);
                const bool better =
                    score > best ||
                    (score == best && (ka * ka + kg * kg < best_ka * best_ka + best_kg * best_kg ||
                                       (ka * ka + kg * kg == best_ka * best_ka + best_kg * best_kg &&
                                        std::pair(ka, kg) < std::pair(best_ka, best_kg))));
                if (better) {
                    best = score;
                    best_ka = ka;
                    best_kg = kg;
                }
            }
        if (std::fabs(result.global_params->alpha - best_ka * 0.2) > 1e-12 ||
            std::fabs(result.global_params->gamma - best_kg * 0.2) > 1e-12 ||
            result.objective_value != best)
            grid_ok = false;
        for (const TracePoint& point : result.trace)
            if (result.objective_value < point.objective) grid_ok = false;
    }

    // GA box contains the planted optimum on 10/10 seeded landscapes.
    int contained = 0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        std::mt19937_64 rng(seed * 977);
        std::uniform_real_distribution<double> place(-6.0, 6.0);
        const double a0 = place(rng), g0 = place(rng);
        const Objective2D objective = [=](double a, double g) {
            return std::exp(-((a - a0) * (a - a0) + (g - g0) * (g - g0)) / (2.0 * 0.5 * 0.5));
        };
        OptConfig ga_config;
        ga_config.seed = seed;
        if (genetic_range_search(objective, ga_config).contains(a0, g0)) ++contained;
    }

    // Per-user training objective dominates same-for-all on every fixture.
    bool per_user_dominates = true;
    for (std::uint64_t seed : {3ULL, 17ULL, 29ULL}) {
        const Dataset fixture = generate_fixture(seed, 6, 80, 16, ClusterSpec{});
        TrainConfig train;
        train.iterations = 60;
        train.seed = seed;
        const EmbeddingModel model =
            train_cbow(build_tag_sentences(fixture.pois, 1, train.seed), train);
        for (Weighting weighting : {Weighting::unweighted, Weighting::weighted}) {
            OptConfig grid_config;
            const ParamBox box{-4.0, 4.0, -4.0, 4.0};
            grid_config.strategy = Strategy::same_for_all;
            const double same =
                grid_search(model, fixture.profiles, weighting, box, grid_config).objective_value;
            grid_config.strategy = Strategy::per_user;
            const double per_user =
                grid_search(model, fixture.profiles, weighting, box, grid_config).objective_value;
            if (per_user < same) per_user_dominates = false;
        }
    }

    const bool pass = grid_ok && contained == 10 && per_user_dominates;
    char detail[160];
    std::snprintf(detail, sizeof(detail),
                  "grid argmax %s, GA box contains optimum %d/10, per-user >= same-for-all %s, %.1fs",
                  grid_ok ? "exact" : "WRONG", contained, per_user_dominates ? "yes" : "NO",
                  timer.seconds());
    report(7, "optimizer correctness", pass, detail);
}

// ---------------------------------------------------------------- criterion 8

std::string run_cli(const std::string& cli, const std::string& args) {
    const std::string command = cli + " " + args + " > /dev/null 2>&1";
    return std::to_string(std::system(command.c_str()));
}

void criterion_8_determinism(const char* cli_path) {
    Timer timer;
    bool pass = true;
    std::string mode;

    const fs::path work = fs::temp_directory_path() / "tagrec-acceptance-determinism";
    fs::remove_all(work);
    fs::create_directories(work);

    const Dataset dataset = generate_fixture(5, 4, 120, 20, ClusterSpec{});
    write_dataset(dataset, work / "data");

    if (cli_path != nullptr && fs::exists(cli_path)) {
        mode = "cli";
        const std::string base = std::string(cli_path) + " --seed 11 ";
        for (const char* round : {"a", "b"}) {
            const std::string out = (work / round).string();
            if (run_cli("", base + "variant --name WUPSame --data " + (work / "data").string() +
                                " --out-dir " + out + " --iterations 120") != "0")
                pass = false;
            if (run_cli("", base + "sweep --axis iterations --values 60,120 --variants " +
                                "WUPSame,UnWUPSame01 --data " + (work / "data").string() +
                                " --out " + out + "/sweep.csv --iterations 120") != "0")
                pass = false;
        }
        for (const char* name :
             {"WUPSame.run", "WUPSame.eval.csv", "WUPSame.trace.csv", "sweep.csv"}) {
            const std::string a = read_file(work / "a" / name);
            const std::string b = read_file(work / "b" / name);
            if (a.empty() || a != b) pass = false;
        }
    } else {
        mode = "in-process";
        TrainConfig train;
        train.iterations = 120;
        train.seed = 11;
        OptConfig opt;
        opt.seed = 11;
        const VariantResult first =
            run_variant(variant_spec(Variant::WUPSame), dataset, train, opt);
        const VariantResult second =
            run_variant(variant_spec(Variant::WUPSame), dataset, train, opt);
        if (format_run(first.run) != format_run(second.run)) pass = false;
        if (trace_csv(first.search) != trace_csv(second.search)) pass = false;
        if (report_csv(*first.report) != report_csv(*second.report)) pass = false;

        const std::vector<std::string> values = {"60", "120"};
        const std::vector<Variant> variants = {Variant::WUPSame, Variant::UnWUPSame01};
        const auto sweep_a =
            sweep(SweepAxis::iterations, values, variants, dataset, train, opt, Metric::ndcg_cut_5);
        const auto sweep_b =
            sweep(SweepAxis::iterations, values, variants, dataset, train, opt, Metric::ndcg_cut_5);
        if (sweep_csv(sweep_a) != sweep_csv(sweep_b)) pass = false;
    }
    fs::remove_all(work);
    char detail[100];
    std::snprintf(detail, sizeof(detail), "%s, variant + sweep byte-identical, %.1fs",
                  mode.c_str(), timer.seconds());
    report(8, "end-to-end determinism", pass, detail);
}

// ---------------------------------------------------------------- criterion 9

void criterion_9_trec_dataset() {
    const char* data_dir = std::getenv("TAGREC_TREC_DATA");
    if (data_dir == nullptr) {
        std::printf("SKIP  criterion 9: TREC CS 2016 check (set TAGREC_TREC_DATA to run)\n");
        return;
    }
    Timer timer;
    const Dataset dataset = load_dataset(data_dir);
    double total = 0.0;
    double low = 1e9, high = -1e9;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        TrainConfig train;  // paper configuration: dim 9, window 5, min_count 3, 1000 iters
        train.seed = seed;
        OptConfig opt;
        opt.seed = seed;
        const VariantResult result =
            run_variant(variant_spec(Variant::WUPSame), dataset, train, opt);
        const double ndcg5 = mean_metric(*result.report, Metric::ndcg_cut_5);
        total += ndcg5;
        low = std::min(low, ndcg5);
        high = std::max(high, ndcg5);
    }
    const double mean = total / 5.0;
    const bool pass = std::fabs(mean - 0.3932) <= 0.05;
    char detail[160];
    std::snprintf(detail, sizeof(detail),
                  "WUPSame NDCG@5 mean %.4f over 5 seeds (range %.4f..%.4f), target 0.3932 +- 0.05, %.0fs",
                  mean, low, high, timer.seconds());
    report(9, "TREC CS 2016 reproduction (optional)", pass, detail);
}

}  // namespace

int main(int argc, char** argv) {
    criterion_1_metric_oracle();
    criterion_2_rating_scale();
    criterion_3_vector_algebra();
    criterion_4_ranking_invariances();
    criterion_5_embedding_clusters();
    criterion_6_dense_beats_one_hot();
    criterion_7_optimizer();
    criterion_8_determinism(argc > 1 ? argv[1] : nullptr);
    criterion_9_trec_dataset();

    if (g_failures > 0) {
        std::printf("%d criterion(s) failed\n", g_failures);
        return 1;
    }
    std::printf("all criteria passed\n");
    return 0;
}
