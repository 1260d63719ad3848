#include "tagrec/fixture.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <random>
#include <stdexcept>

namespace tagrec {

namespace {

std::string padded_id(const char* prefix, int index, int width) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%s%0*d", prefix, width, index);
    return buf;
}

// Tag counts 1..6 with mean ~2.7, the shape of the real tag data.
int draw_tag_count(std::mt19937_64& rng) {
    static constexpr std::array<int, 6> kWeights = {24, 29, 21, 12, 8, 6};
    std::uniform_int_distribution<int> dist(0, 99);
    int point = dist(rng);
    for (int i = 0; i < 6; ++i) {
        point -= kWeights[i];
        if (point < 0) return i + 1;
    }
    return 6;
}

// Sample `count` distinct indices from [0, n), order randomized.
std::vector<int> sample_distinct(std::mt19937_64& rng, int n, int count) {
    std::vector<int> indices(n);
    for (int i = 0; i < n; ++i) indices[i] = i;
    std::shuffle(indices.begin(), indices.end(), rng);
    indices.resize(count);
    return indices;
}

enum class Pool { profile, candidate, filler };

}  // namespace

Dataset generate_fixture(std::uint64_t seed, int n_users, int n_pois, int n_tags,
                         const ClusterSpec& spec) {
    if (n_users < 1 || n_pois < 2 || n_tags < 1)
        throw std::invalid_argument("fixture: need at least 1 user, 2 POIs, 1 tag");
    if (spec.n_clusters < 2) throw std::invalid_argument("fixture: need at least 2 clusters");
    if (n_tags < spec.n_clusters * (spec.split_synonyms ? 2 : 1))
        throw std::invalid_argument("fixture: not enough tags for " +
                                    std::to_string(spec.n_clusters) + " clusters");
    if (spec.profile_size < 2 || spec.candidates_per_request < 1)
        throw std::invalid_argument("fixture: profile_size must be >= 2 and candidates >= 1");
    if (spec.cross_cluster_prob < 0.0 || spec.cross_cluster_prob > 1.0)
        throw std::invalid_argument("fixture: cross_cluster_prob outside [0,1]");

    // Three pools: rated POIs, candidate POIs, and fillers whose sentences
    // tie a cluster's synonym halves together in the training corpus.
    const int profile_pool = std::max(spec.profile_size, n_pois * 3 / 10);
    const int candidate_pool = std::max(spec.candidates_per_request, n_pois * 3 / 10);
    const int filler_pool = n_pois - profile_pool - candidate_pool;
    if (filler_pool < (spec.split_synonyms ? spec.n_clusters : 0))
        throw std::invalid_argument("fixture: n_pois too small for the requested pools");

    // Tag t lives in cluster t % n_clusters; within a cluster the first half
    // is the "profile" half and the rest the "candidate" half.
    std::vector<std::vector<Tag>> cluster_tags(spec.n_clusters);
    for (int t = 0; t < n_tags; ++t) {
        const int cluster = t % spec.n_clusters;
        char raw[32];
        std::snprintf(raw, sizeof(raw), "C%d T%02d", cluster, t);
        cluster_tags[cluster].push_back(normalize_tag(raw));
    }

    auto allowed_tags = [&](int cluster, Pool pool) -> std::vector<Tag> {
        const auto& tags = cluster_tags[cluster];
        if (!spec.split_synonyms || pool == Pool::filler) return tags;
        const std::size_t half = tags.size() / 2;
        if (pool == Pool::profile)
            return std::vector<Tag>(tags.begin(), tags.begin() + half);
        return std::vector<Tag>(tags.begin() + half, tags.end());
    };

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uniform01(0.0, 1.0);

    Dataset dataset;
    std::vector<int> home_cluster(n_pois);
    for (int p = 0; p < n_pois; ++p) {
        const Pool pool =
            p < profile_pool ? Pool::profile
                             : (p < profile_pool + candidate_pool ? Pool::candidate : Pool::filler);
        const int cluster = p % spec.n_clusters;
        home_cluster[p] = cluster;

        std::vector<Tag> allowed = allowed_tags(cluster, pool);
        int count = std::min<int>(draw_tag_count(rng), static_cast<int>(allowed.size()));

        Poi poi;
        poi.id = padded_id("poi-", p, 4);
        std::vector<int> own = sample_distinct(rng, static_cast<int>(allowed.size()), count);
        for (int idx : own) {
            if (spec.cross_cluster_prob > 0.0 && uniform01(rng) < spec.cross_cluster_prob) {
                std::uniform_int_distribution<int> other(0, spec.n_clusters - 2);
                int foreign = other(rng);
                if (foreign >= cluster) ++foreign;
                const std::vector<Tag> foreign_tags = allowed_tags(foreign, pool);
                std::uniform_int_distribution<int> pick(0,
                                                        static_cast<int>(foreign_tags.size()) - 1);
                poi.tags.push_back(foreign_tags[pick(rng)]);
            } else {
                poi.tags.push_back(allowed[idx]);
            }
        }
        dataset.pois.push_back(std::move(poi));
    }

    // Profile-pool / candidate-pool POIs grouped by cluster for sampling.
    std::vector<std::vector<int>> profile_by_cluster(spec.n_clusters);
    std::vector<std::vector<int>> candidate_by_cluster(spec.n_clusters);
    for (int p = 0; p < profile_pool; ++p) profile_by_cluster[home_cluster[p]].push_back(p);
    for (int p = profile_pool; p < profile_pool + candidate_pool; ++p)
        candidate_by_cluster[home_cluster[p]].push_back(p);
    for (int c = 0; c < spec.n_clusters; ++c)
        if (profile_by_cluster[c].empty() || candidate_by_cluster[c].empty())
            throw std::invalid_argument("fixture: a cluster has no POIs in some pool");

    static constexpr std::array<const char*, 4> kCities = {"springfield", "rivertown", "lakeside",
                                                           "hillford"};
    static constexpr std::array<const char*, 4> kSeasons = {"spring", "summer", "autumn",
                                                            "winter"};
    static constexpr std::array<const char*, 3> kGroups = {"family", "friends", "alone"};

    for (int u = 0; u < n_users; ++u) {
        const int preferred = u % spec.n_clusters;
        UserProfile profile;
        profile.user_id = padded_id("user-", u, 3);

        // Half the rated POIs come from the preferred cluster, the rest from
        // the others; each group keeps one entry pinned so the partition
        // always has a positive and a negative side.
        const int n_preferred = (spec.profile_size + 1) / 2;
        const int n_other = spec.profile_size - n_preferred;

        std::vector<int> rated;
        {
            const auto& pool = profile_by_cluster[preferred];
            const int take = std::min<int>(n_preferred, static_cast<int>(pool.size()));
            for (int idx : sample_distinct(rng, static_cast<int>(pool.size()), take))
                rated.push_back(pool[idx]);
        }
        {
            std::vector<int> others;
            for (int c = 0; c < spec.n_clusters; ++c)
                if (c != preferred)
                    others.insert(others.end(), profile_by_cluster[c].begin(),
                                  profile_by_cluster[c].end());
            const int take = std::min<int>(n_other, static_cast<int>(others.size()));
            for (int idx : sample_distinct(rng, static_cast<int>(others.size()), take))
                rated.push_back(others[idx]);
        }

        std::uniform_int_distribution<int> coin(0, 1);
        for (std::size_t i = 0; i < rated.size(); ++i) {
            const int p = rated[i];
            const bool liked = home_cluster[p] == preferred;
            int rating = liked ? 3 + coin(rng) : coin(rng);
            const bool pinned = i == 0 || i == static_cast<std::size_t>(n_preferred);
            if (!pinned && uniform01(rng) < 0.15) rating = 2;
            profile.entries.push_back(ProfileEntry{dataset.pois[p], rating});
        }
        dataset.profiles.push_back(std::move(profile));

        RequestRecord request;
        request.request_id = padded_id("req-", u, 3);
        request.user_id = padded_id("user-", u, 3);
        request.context = Context{kCities[u % kCities.size()],
                                  u % 2 == 0 ? "leisure" : "business", "weekend",
                                  kGroups[u % kGroups.size()], kSeasons[u % kSeasons.size()]};

        const int n_relevant = std::max(1, spec.candidates_per_request / 2);
        std::vector<int> chosen;
        {
            const auto& pool = candidate_by_cluster[preferred];
            const int take = std::min<int>(n_relevant, static_cast<int>(pool.size()));
            for (int idx : sample_distinct(rng, static_cast<int>(pool.size()), take))
                chosen.push_back(pool[idx]);
        }
        {
            std::vector<int> others;
            for (int c = 0; c < spec.n_clusters; ++c)
                if (c != preferred)
                    others.insert(others.end(), candidate_by_cluster[c].begin(),
                                  candidate_by_cluster[c].end());
            const int take = std::min<int>(spec.candidates_per_request -
                                               static_cast<int>(chosen.size()),
                                           static_cast<int>(others.size()));
            for (int idx : sample_distinct(rng, static_cast<int>(others.size()), take))
                chosen.push_back(others[idx]);
        }
        std::shuffle(chosen.begin(), chosen.end(), rng);

        for (int p : chosen) {
            request.candidate_ids.push_back(dataset.pois[p].id);
            // Preference match decides the grade; with three or more
            // clusters the "next" cluster is partially relevant.
            int grade = 0;
            if (home_cluster[p] == preferred)
                grade = 2;
            else if (spec.n_clusters >= 3 &&
                     home_cluster[p] == (preferred + 1) % spec.n_clusters)
                grade = 1;
            dataset.qrels.add(request.request_id, dataset.pois[p].id, grade);
        }
        dataset.requests.push_back(std::move(request));
    }

    dataset.has_qrels = true;
    return dataset;
}

}  // namespace tagrec
