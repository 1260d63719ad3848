#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tagrec/embedding.hpp"
#include "tagrec/evaluation.hpp"
#include "tagrec/modeling.hpp"
#include "tagrec/types.hpp"

namespace tagrec {

enum class Strategy { same_for_all, per_user };

std::string_view strategy_name(Strategy strategy);
Strategy strategy_from_string(std::string_view name);

struct OptConfig {
    Metric objective = Metric::ndcg_cut_5;
    Strategy strategy = Strategy::same_for_all;
    double range_lo = -8.0;
    double range_hi = 8.0;
    double grid_step = 0.2;
    int ga_population = 40;
    int ga_generations = 30;
    bool ga_range = true;  // refine inside the GA box; false = grid the full range
    std::uint64_t seed = 1;

    void validate() const;  // throws std::invalid_argument
};

/// Axis-aligned search region over (alpha, gamma); beta stays 1.0.
struct ParamBox {
    double alpha_lo = 0.0;
    double alpha_hi = 0.0;
    double gamma_lo = 0.0;
    double gamma_hi = 0.0;

    bool contains(double alpha, double gamma) const {
        return alpha_lo <= alpha && alpha <= alpha_hi && gamma_lo <= gamma && gamma <= gamma_hi;
    }
};

ParamBox full_range_box(const OptConfig& config);

struct TracePoint {
    double alpha = 0.0;
    double gamma = 0.0;
    double objective = 0.0;
};

struct SearchResult {
    Strategy strategy = Strategy::same_for_all;
    std::optional<RocchioParams> global_params;        // same_for_all
    std::map<std::string, RocchioParams> user_params;  // per_user
    double objective_value = 0.0;  // mean objective over users at the returned params
    std::vector<TracePoint> trace;  // lattice points with the mean objective
};

/// CSV rows `alpha,gamma,objective` for heatmap plotting.
std::string trace_csv(const SearchResult& result);

/// Ranks the profile's own POIs with the given params and scores the ranking
/// against the profile's ratings (relevant = rating >= 3, NDCG gain = rating).
/// A profile without positive entries scores 0 on every metric.
/// Throws std::invalid_argument for an empty profile.
double profile_self_score(const EmbeddingModel& model, const UserProfile& profile,
                          Weighting weighting, const RocchioParams& params, Metric objective);

using Objective2D = std::function<double(double alpha, double gamma)>;

/// Real-coded GA (tournament selection, blend crossover, Gaussian mutation)
/// maximizing the objective over [range_lo, range_hi]^2; returns a box around
/// the top decile of the final population, padded by one grid step and
/// clipped to the range. A flat final population yields the full range.
/// Deterministic per seed.
ParamBox genetic_range_search(const Objective2D& objective, const OptConfig& config);
ParamBox genetic_range_search(const EmbeddingModel& model,
                              std::span<const UserProfile> profiles, Weighting weighting,
                              const OptConfig& config);

/// Exhaustive search of the grid-step lattice inside the box (bounds snapped
/// outward to lattice points, then clipped to the configured range). Ties
/// break toward the smaller parameter norm, then lexicographically.
/// Throws std::invalid_argument when no lattice point falls inside the range.
SearchResult grid_search(const Objective2D& objective, const ParamBox& box,
                         const OptConfig& config);
SearchResult grid_search(const EmbeddingModel& model, std::span<const UserProfile> profiles,
                         Weighting weighting, const ParamBox& box, const OptConfig& config);

}  // namespace tagrec
