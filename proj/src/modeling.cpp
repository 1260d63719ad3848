#include "tagrec/modeling.hpp"

#include <stdexcept>

namespace tagrec {

std::string_view weighting_name(Weighting weighting) {
    return weighting == Weighting::weighted ? "weighted" : "unweighted";
}

Weighting weighting_from_string(std::string_view name) {
    if (name == "weighted") return Weighting::weighted;
    if (name == "unweighted") return Weighting::unweighted;
    throw std::invalid_argument("unknown weighting '" + std::string(name) + "'");
}

PoiVector poi_vector(const EmbeddingModel& model, const Poi& poi) {
    Vec sum(static_cast<std::size_t>(model.dim), 0.0);
    for (const Tag& tag : poi.tags) {
        const Vec* v = model.vector(tag.normalized);
        if (v != nullptr) add_inplace(sum, *v);
    }
    return PoiVector{poi.id, std::move(sum)};
}

Vec profile_unweighted(const EmbeddingModel& model, std::span<const ProfileEntry> entries) {
    Vec sum(static_cast<std::size_t>(model.dim), 0.0);
    if (entries.empty()) return sum;
    for (const ProfileEntry& entry : entries) add_inplace(sum, poi_vector(model, entry.poi).vector);
    scale_inplace(sum, 1.0 / static_cast<double>(entries.size()));
    return sum;
}

Vec profile_weighted(const EmbeddingModel& model, std::span<const ProfileEntry> entries) {
    Vec sum(static_cast<std::size_t>(model.dim), 0.0);
    if (entries.empty()) return sum;
    for (const ProfileEntry& entry : entries)
        axpy(sum, static_cast<double>(scale_rating(entry.rating)),
             poi_vector(model, entry.poi).vector);
    scale_inplace(sum, 1.0 / static_cast<double>(entries.size()));
    return sum;
}

Vec combine_rocchio(const Vec& positive, const Vec& neutral, const Vec& negative,
                    const RocchioParams& params) {
    check_same_dim(positive, neutral, "combine_rocchio");
    check_same_dim(positive, negative, "combine_rocchio");
    Vec combined(positive.size());
    for (std::size_t i = 0; i < positive.size(); ++i)
        combined[i] = params.alpha * positive[i] + params.beta * neutral[i] -
                      params.gamma * negative[i];
    return combined;
}

UserModel build_user_model(const EmbeddingModel& model, const UserProfile& profile,
                           Weighting weighting, const RocchioParams& params) {
    const ProfilePartition part = partition_profile(profile);

    UserModel user;
    user.user_id = profile.user_id;
    user.weighting = weighting;
    user.params = params;
    if (weighting == Weighting::weighted) {
        user.positive = profile_weighted(model, part.positive);
        user.neutral = profile_weighted(model, part.neutral);
        user.negative = profile_weighted(model, part.negative);
    } else {
        user.positive = profile_unweighted(model, part.positive);
        user.neutral = profile_unweighted(model, part.neutral);
        user.negative = profile_unweighted(model, part.negative);
    }
    user.combined = combine_rocchio(user.positive, user.neutral, user.negative, params);
    return user;
}

}  // namespace tagrec
