#pragma once

#include <span>
#include <string>
#include <vector>

#include "tagrec/modeling.hpp"
#include "tagrec/types.hpp"
#include "tagrec/vec.hpp"

namespace tagrec {

struct ScoredPoi {
    std::string poi_id;
    double score = 0.0;

    bool operator==(const ScoredPoi&) const = default;
};

/// Candidates in descending score order, ties broken by ascending poi id.
struct RankedList {
    std::string request_id;
    std::vector<ScoredPoi> items;
};

/// dot(a,b) / (|a|*|b|), or 0.0 when either norm is zero.
/// Throws on dimension mismatch.
double cosine(const Vec& a, const Vec& b);

RankedList rank_candidates(const UserModel& user, const std::string& request_id,
                           std::span<const PoiVector> candidates);

RunFile emit_run(std::span<const RankedList> ranked, const std::string& run_tag);

}  // namespace tagrec
