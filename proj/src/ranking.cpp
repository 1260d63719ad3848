#include "tagrec/ranking.hpp"

#include <algorithm>
#include <cmath>

namespace tagrec {

double cosine(const Vec& a, const Vec& b) {
    check_same_dim(a, b, "cosine");
    double dot_product = 0.0, norm_a = 0.0, norm_b = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        dot_product += a[i] * b[i];
        norm_a += a[i] * a[i];
        norm_b += b[i] * b[i];
    }
    if (norm_a == 0.0 || norm_b == 0.0) return 0.0;
    return dot_product / (std::sqrt(norm_a) * std::sqrt(norm_b));
}

RankedList rank_candidates(const UserModel& user, const std::string& request_id,
                           std::span<const PoiVector> candidates) {
    RankedList ranked;
    ranked.request_id = request_id;
    ranked.items.reserve(candidates.size());
    for (const PoiVector& candidate : candidates)
        ranked.items.push_back(ScoredPoi{candidate.poi_id, cosine(user.combined, candidate.vector)});
    std::sort(ranked.items.begin(), ranked.items.end(), [](const ScoredPoi& a, const ScoredPoi& b) {
        if (a.score != b.score) return a.score > b.score;
        return a.poi_id < b.poi_id;
    });
    return ranked;
}

RunFile emit_run(std::span<const RankedList> ranked, const std::string& run_tag) {
    RunFile run;
    for (const RankedList& list : ranked) {
        int rank = 0;
        for (const ScoredPoi& item : list.items)
            run.push_back(RunEntry{list.request_id, item.poi_id, ++rank, item.score, run_tag});
    }
    return run;
}

}  // namespace tagrec
