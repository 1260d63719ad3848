#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tagrec/embedding.hpp"
#include "tagrec/types.hpp"
#include "tagrec/vec.hpp"

namespace tagrec {

struct PoiVector {
    std::string poi_id;
    Vec vector;
};

/// Weights for combining the positive, neutral and negative profile vectors.
/// Unconstrained: the optimizer explores negative values too.
struct RocchioParams {
    double alpha = 1.0;
    double beta = 1.0;
    double gamma = 1.0;

    bool operator==(const RocchioParams&) const = default;
};

enum class Weighting { unweighted, weighted };

std::string_view weighting_name(Weighting weighting);
Weighting weighting_from_string(std::string_view name);

struct UserModel {
    std::string user_id;
    Weighting weighting = Weighting::unweighted;
    Vec positive;
    Vec neutral;
    Vec negative;
    Vec combined;  // alpha*positive + beta*neutral - gamma*negative
    RocchioParams params;
};

/// Sum of the POI's tag vectors; duplicates count once per occurrence,
/// out-of-vocabulary tags are skipped, and a POI whose tags all miss the
/// vocabulary gets the zero vector.
PoiVector poi_vector(const EmbeddingModel& model, const Poi& poi);

/// Centroid of the entries' POI vectors; zero when the class is empty.
/// Entries are expected to be pre-filtered to one rating class.
Vec profile_unweighted(const EmbeddingModel& model, std::span<const ProfileEntry> entries);

/// Centroid with each POI vector scaled by its entry's scaled rating
/// (denominator stays the entry count). Neutral entries scale by 1, so the
/// weighted neutral profile equals the unweighted one.
Vec profile_weighted(const EmbeddingModel& model, std::span<const ProfileEntry> entries);

/// alpha*pos + beta*neu - gamma*neg. Throws on dimension mismatch.
Vec combine_rocchio(const Vec& positive, const Vec& neutral, const Vec& negative,
                    const RocchioParams& params);

UserModel build_user_model(const EmbeddingModel& model, const UserProfile& profile,
                           Weighting weighting, const RocchioParams& params);

}  // namespace tagrec
