#pragma once

#include <cstdint>

#include "tagrec/io.hpp"
#include "tagrec/types.hpp"

namespace tagrec {

/// Shape of a synthetic dataset: tags fall into synonym clusters, each POI
/// draws its tags from one home cluster, each user prefers one cluster, and
/// qrels grade candidates by whether their home cluster matches the user's
/// preference. The latent assignment is the ground truth for every derived
/// file.
struct ClusterSpec {
    int n_clusters = 2;

    /// Half of every cluster's tags appear only on rated (profile) POIs and
    /// the other half only on candidate POIs; filler POIs mix both halves.
    /// Rankers that treat tags as unrelated symbols then see zero overlap
    /// between a profile and its candidates.
    bool split_synonyms = false;

    /// Chance that a single tag is drawn from a foreign cluster.
    double cross_cluster_prob = 0.0;

    int profile_size = 12;           // rated POIs per user
    int candidates_per_request = 15;
};

/// Deterministic per seed. Each POI gets 1..6 tags (mean about 2.7).
/// Throws std::invalid_argument for infeasible shapes.
Dataset generate_fixture(std::uint64_t seed, int n_users, int n_pois, int n_tags,
                         const ClusterSpec& spec);

}  // namespace tagrec
