#include "tagrec/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "tagrec/io.hpp"
#include "tagrec/ranking.hpp"

namespace tagrec {

std::string_view strategy_name(Strategy strategy) {
    return strategy == Strategy::same_for_all ? "same_for_all" : "per_user";
}

Strategy strategy_from_string(std::string_view name) {
    if (name == "same_for_all") return Strategy::same_for_all;
    if (name == "per_user") return Strategy::per_user;
    throw std::invalid_argument("unknown strategy '" + std::string(name) + "'");
}

void OptConfig::validate() const {
    if (!(range_lo < range_hi))
        throw std::invalid_argument("optimizer: range_lo must be < range_hi");
    if (!(grid_step > 0.0)) throw std::invalid_argument("optimizer: grid_step must be > 0");
    if (ga_population < 4) throw std::invalid_argument("optimizer: ga_population must be >= 4");
    if (ga_generations < 1) throw std::invalid_argument("optimizer: ga_generations must be >= 1");
}

ParamBox full_range_box(const OptConfig& config) {
    return ParamBox{config.range_lo, config.range_hi, config.range_lo, config.range_hi};
}

std::string trace_csv(const SearchResult& result) {
    std::string out = "alpha,gamma,objective\n";
    for (const TracePoint& point : result.trace) {
        out += format_score(point.alpha);
        out += ',';
        out += format_score(point.gamma);
        out += ',';
        out += format_full(point.objective);
        out += '\n';
    }
    return out;
}

namespace {

constexpr int kSelfScoreThreshold = 3;  // rating >= 3 counts as relevant

// The class vectors and candidate set of one profile do not depend on
// (alpha, gamma), so they are computed once per user and reused across the
// whole lattice.
struct SelfRankContext {
    std::string user_id;
    Vec positive, neutral, negative;
    std::vector<PoiVector> candidates;
    std::map<std::string, int> judgments;
};

SelfRankContext make_context(const EmbeddingModel& model, const UserProfile& profile,
                             Weighting weighting) {
    if (profile.entries.empty())
        throw std::invalid_argument("profile_self_score: empty profile for user '" +
                                    profile.user_id + "'");
    const ProfilePartition part = partition_profile(profile);
    SelfRankContext ctx;
    ctx.user_id = profile.user_id;
    if (weighting == Weighting::weighted) {
        ctx.positive = profile_weighted(model, part.positive);
        ctx.neutral = profile_weighted(model, part.neutral);
        ctx.negative = profile_weighted(model, part.negative);
    } else {
        ctx.positive = profile_unweighted(model, part.positive);
        ctx.neutral = profile_unweighted(model, part.neutral);
        ctx.negative = profile_unweighted(model, part.negative);
    }
    for (const ProfileEntry& entry : profile.entries) {
        ctx.candidates.push_back(poi_vector(model, entry.poi));
        ctx.judgments[entry.poi.id] = entry.rating;
    }
    return ctx;
}

double score_context(const SelfRankContext& ctx, const RocchioParams& params, Metric objective) {
    UserModel user;
    user.user_id = ctx.user_id;
    user.params = params;
    user.combined = combine_rocchio(ctx.positive, ctx.neutral, ctx.negative, params);
    const RankedList ranked = rank_candidates(user, ctx.user_id, ctx.candidates);
    std::vector<std::string> ids;
    ids.reserve(ranked.items.size());
    for (const ScoredPoi& item : ranked.items) ids.push_back(item.poi_id);
    return metric_value(evaluate_ranking(ids, ctx.judgments, kSelfScoreThreshold), objective);
}

}  // namespace

double profile_self_score(const EmbeddingModel& model, const UserProfile& profile,
                          Weighting weighting, const RocchioParams& params, Metric objective) {
    return score_context(make_context(model, profile, weighting), params, objective);
}

namespace {

struct Individual {
    double alpha = 0.0;
    double gamma = 0.0;
    double fitness = 0.0;
};

bool fitter(const Individual& a, const Individual& b) {
    if (a.fitness != b.fitness) return a.fitness > b.fitness;
    if (a.alpha != b.alpha) return a.alpha < b.alpha;
    return a.gamma < b.gamma;
}

}  // namespace

ParamBox genetic_range_search(const Objective2D& objective, const OptConfig& config) {
    config.validate();
    const double lo = config.range_lo;
    const double hi = config.range_hi;
    const int population_size = config.ga_population;

    std::mt19937_64 rng(config.seed);
    std::uniform_real_distribution<double> uniform01(0.0, 1.0);
    std::uniform_real_distribution<double> init(lo, hi);
    std::uniform_int_distribution<int> pick(0, population_size - 1);
    std::normal_distribution<double> gauss(0.0, 1.0);

    auto clip = [&](double x) { return std::clamp(x, lo, hi); };

    std::vector<Individual> population(population_size);
    for (Individual& ind : population) {
        ind.alpha = init(rng);
        ind.gamma = init(rng);
        ind.fitness = objective(ind.alpha, ind.gamma);
    }

    auto tournament = [&]() -> const Individual& {
        const Individual* best = &population[pick(rng)];
        for (int i = 1; i < 3; ++i) {
            const Individual* challenger = &population[pick(rng)];
            if (challenger->fitness > best->fitness) best = challenger;
        }
        return *best;
    };

    for (int generation = 0; generation < config.ga_generations; ++generation) {
        // Mutation spread shrinks as the search focuses.
        const double sigma =
            0.1 * (hi - lo) *
                (1.0 - static_cast<double>(generation) / config.ga_generations) +
            0.01;

        std::vector<Individual> ordered = population;
        std::sort(ordered.begin(), ordered.end(), fitter);

        std::vector<Individual> next;
        next.reserve(population_size);
        next.push_back(ordered[0]);
        next.push_back(ordered[1]);
        while (static_cast<int>(next.size()) < population_size) {
            const Individual& p1 = tournament();
            const Individual& p2 = tournament();
            Individual child;
            // BLX-0.5 per coordinate.
            auto blend = [&](double a, double b) {
                const double lo_c = std::min(a, b);
                const double hi_c = std::max(a, b);
                const double d = hi_c - lo_c;
                return lo_c - 0.5 * d + uniform01(rng) * (d + d);
            };
            child.alpha = blend(p1.alpha, p2.alpha);
            child.gamma = blend(p1.gamma, p2.gamma);
            if (uniform01(rng) < 0.2) child.alpha += sigma * gauss(rng);
            if (uniform01(rng) < 0.2) child.gamma += sigma * gauss(rng);
            child.alpha = clip(child.alpha);
            child.gamma = clip(child.gamma);
            child.fitness = objective(child.alpha, child.gamma);
            next.push_back(child);
        }
        population = std::move(next);
    }

    double min_fitness = population[0].fitness;
    double max_fitness = population[0].fitness;
    for (const Individual& ind : population) {
        min_fitness = std::min(min_fitness, ind.fitness);
        max_fitness = std::max(max_fitness, ind.fitness);
    }
    if (min_fitness == max_fitness) return full_range_box(config);  // nothing to exploit

    std::sort(population.begin(), population.end(), fitter);
    const int decile = (population_size + 9) / 10;
    ParamBox box{population[0].alpha, population[0].alpha, population[0].gamma,
                 population[0].gamma};
    for (int i = 1; i < decile; ++i) {
        box.alpha_lo = std::min(box.alpha_lo, population[i].alpha);
        box.alpha_hi = std::max(box.alpha_hi, population[i].alpha);
        box.gamma_lo = std::min(box.gamma_lo, population[i].gamma);
        box.gamma_hi = std::max(box.gamma_hi, population[i].gamma);
    }
    // One grid step of slack so refinement can look just past the sample.
    box.alpha_lo = clip(box.alpha_lo - config.grid_step);
    box.alpha_hi = clip(box.alpha_hi + config.grid_step);
    box.gamma_lo = clip(box.gamma_lo - config.grid_step);
    box.gamma_hi = clip(box.gamma_hi + config.grid_step);
    return box;
}

namespace {

struct LatticeAxis {
    long k_lo = 0;
    long k_hi = -1;
};

// Lattice points are integer multiples of grid_step. Box bounds snap outward
// to the enclosing lattice points, then clip to the configured range.
LatticeAxis lattice_axis(double lo, double hi, const OptConfig& config) {
    const double step = config.grid_step;
    LatticeAxis axis;
    axis.k_lo = static_cast<long>(std::floor(lo / step + 1e-9));
    axis.k_hi = static_cast<long>(std::ceil(hi / step - 1e-9));
    const long range_lo = static_cast<long>(std::ceil(config.range_lo / step - 1e-9));
    const long range_hi = static_cast<long>(std::floor(config.range_hi / step + 1e-9));
    axis.k_lo = std::max(axis.k_lo, range_lo);
    axis.k_hi = std::min(axis.k_hi, range_hi);
    return axis;
}

struct LatticePoint {
    long k_alpha = 0;
    long k_gamma = 0;
    double alpha = 0.0;
    double gamma = 0.0;
};

std::vector<LatticePoint> build_lattice(const ParamBox& box, const OptConfig& config) {
    const LatticeAxis alpha_axis = lattice_axis(box.alpha_lo, box.alpha_hi, config);
    const LatticeAxis gamma_axis = lattice_axis(box.gamma_lo, box.gamma_hi, config);
    if (alpha_axis.k_lo > alpha_axis.k_hi || gamma_axis.k_lo > gamma_axis.k_hi)
        throw std::invalid_argument("grid_search: empty lattice (box outside search range)");

    std::vector<LatticePoint> lattice;
    for (long ka = alpha_axis.k_lo; ka <= alpha_axis.k_hi; ++ka)
        for (long kg = gamma_axis.k_lo; kg <= gamma_axis.k_hi; ++kg)
            lattice.push_back(LatticePoint{ka, kg, static_cast<double>(ka) * config.grid_step,
                                           static_cast<double>(kg) * config.grid_step});
    return lattice;
}

// Tie rule: higher score, then smaller ||(alpha, gamma)||, then lexicographic.
// Norms compare exactly via the integer lattice coordinates.
bool better_point(const LatticePoint& a, double score_a, const LatticePoint& b, double score_b) {
    if (score_a != score_b) return score_a > score_b;
    const long norm_a = a.k_alpha * a.k_alpha + a.k_gamma * a.k_gamma;
    const long norm_b = b.k_alpha * b.k_alpha + b.k_gamma * b.k_gamma;
    if (norm_a != norm_b) return norm_a < norm_b;
    if (a.k_alpha != b.k_alpha) return a.k_alpha < b.k_alpha;
    return a.k_gamma < b.k_gamma;
}

SearchResult grid_search_rows(const std::vector<std::string>& user_ids,
                              const std::vector<std::vector<double>>& scores,
                              const std::vector<LatticePoint>& lattice,
                              const OptConfig& config) {
    const std::size_t n_users = user_ids.size();
    const std::size_t n_points = lattice.size();

    std::vector<double> mean(n_points, 0.0);
    for (std::size_t u = 0; u < n_users; ++u)
        for (std::size_t p = 0; p < n_points; ++p) mean[p] += scores[u][p];
    for (double& m : mean) m /= static_cast<double>(n_users);

    SearchResult result;
    result.strategy = config.strategy;
    result.trace.reserve(n_points);
    for (std::size_t p = 0; p < n_points; ++p)
        result.trace.push_back(TracePoint{lattice[p].alpha, lattice[p].gamma, mean[p]});

    if (config.strategy == Strategy::same_for_all) {
        std::size_t best = 0;
        for (std::size_t p = 1; p < n_points; ++p)
            if (better_point(lattice[p], mean[p], lattice[best], mean[best])) best = p;
        result.global_params = RocchioParams{lattice[best].alpha, 1.0, lattice[best].gamma};
        result.objective_value = mean[best];
    } else {
        double total = 0.0;
        for (std::size_t u = 0; u < n_users; ++u) {
            std::size_t best = 0;
            for (std::size_t p = 1; p < n_points; ++p)
                if (better_point(lattice[p], scores[u][p], lattice[best], scores[u][best]))
                    best = p;
            result.user_params.emplace(
                user_ids[u], RocchioParams{lattice[best].alpha, 1.0, lattice[best].gamma});
            total += scores[u][best];
        }
        result.objective_value = total / static_cast<double>(n_users);
    }
    return result;
}

}  // namespace

SearchResult grid_search(const Objective2D& objective, const ParamBox& box,
                         const OptConfig& config) {
    config.validate();
    const std::vector<LatticePoint> lattice = build_lattice(box, config);
    std::vector<std::vector<double>> scores(1, std::vector<double>(lattice.size()));
    for (std::size_t p = 0; p < lattice.size(); ++p)
        scores[0][p] = objective(lattice[p].alpha, lattice[p].gamma);

    OptConfig single = config;
    single.strategy = Strategy::same_for_all;
    return grid_search_rows({"objective"}, scores, lattice, single);
}

SearchResult grid_search(const EmbeddingModel& model, std::span<const UserProfile> profiles,
                         Weighting weighting, const ParamBox& box, const OptConfig& config) {
    config.validate();
    if (profiles.empty()) throw std::invalid_argument("grid_search: no profiles");

    const std::vector<LatticePoint> lattice = build_lattice(box, config);
    std::vector<std::string> user_ids;
    std::vector<std::vector<double>> scores;
    user_ids.reserve(profiles.size());
    scores.reserve(profiles.size());
    for (const UserProfile& profile : profiles) {
        const SelfRankContext ctx = make_context(model, profile, weighting);
        std::vector<double> row(lattice.size());
        for (std::size_t p = 0; p < lattice.size(); ++p)
            row[p] = score_context(ctx, RocchioParams{lattice[p].alpha, 1.0, lattice[p].gamma},
                                   config.objective);
        user_ids.push_back(profile.user_id);
        scores.push_back(std::move(row));
    }
    return grid_search_rows(user_ids, scores, lattice, config);
}

ParamBox genetic_range_search(const EmbeddingModel& model,
                              std::span<const UserProfile> profiles, Weighting weighting,
                              const OptConfig& config) {
    config.validate();
    if (profiles.empty()) throw std::invalid_argument("genetic_range_search: no profiles");

    std::vector<SelfRankContext> contexts;
    contexts.reserve(profiles.size());
    for (const UserProfile& profile : profiles)
        contexts.push_back(make_context(model, profile, weighting));

    Objective2D mean_objective = [&](double alpha, double gamma) {
        const RocchioParams params{alpha, 1.0, gamma};
        double total = 0.0;
        for (const SelfRankContext& ctx : contexts)
            total += score_context(ctx, params, config.objective);
        return total / static_cast<double>(contexts.size());
    };
    return genetic_range_search(mean_objective, config);
}

}  // namespace tagrec
