#include "tagrec/types.hpp"

#include <algorithm>
#include <cctype>
#include <random>
#include <set>
#include <stdexcept>

namespace tagrec {

Tag normalize_tag(std::string_view raw) {
    std::size_t begin = 0;
    std::size_t end = raw.size();
    while (begin < end && std::isspace(static_cast<unsigned char>(raw[begin]))) ++begin;
    while (end > begin && std::isspace(static_cast<unsigned char>(raw[end - 1]))) --end;
    if (begin == end) throw std::invalid_argument("normalize_tag: empty tag");

    std::string normalized;
    normalized.reserve(end - begin);
    bool in_space = false;
    for (std::size_t i = begin; i < end; ++i) {
        unsigned char c = static_cast<unsigned char>(raw[i]);
        if (std::isspace(c)) {
            in_space = true;
            continue;
        }
        if (in_space) {
            normalized.push_back('-');
            in_space = false;
        }
        normalized.push_back(static_cast<char>(std::tolower(c)));
    }
    return Tag{std::string(raw), std::move(normalized)};
}

int scale_rating(int rating) {
    switch (rating) {
        case 0: return -3;
        case 1: return -2;
        case 2: return 1;
        case 3: return 2;
        case 4: return 3;
        default:
            throw std::out_of_range("scale_rating: rating " + std::to_string(rating) +
                                    " outside 0..4");
    }
}

ProfilePartition partition_profile(const UserProfile& profile) {
    ProfilePartition part;
    for (const ProfileEntry& entry : profile.entries) {
        if (entry.rating < kMinRating || entry.rating > kMaxRating)
            throw std::out_of_range("partition_profile: rating " + std::to_string(entry.rating) +
                                    " outside 0..4 for POI " + entry.poi.id);
        if (entry.rating > 2)
            part.positive.push_back(entry);
        else if (entry.rating == 2)
            part.neutral.push_back(entry);
        else
            part.negative.push_back(entry);
    }
    return part;
}

void Qrels::add(const std::string& request_id, const std::string& poi_id, int grade) {
    if (grade < 0)
        throw std::invalid_argument("qrels: negative grade for (" + request_id + ", " + poi_id +
                                    ")");
    auto& per_request = grades_[request_id];
    if (!per_request.emplace(poi_id, grade).second)
        throw std::invalid_argument("qrels: duplicate judgment for (" + request_id + ", " +
                                    poi_id + ")");
}

std::optional<int> Qrels::grade(const std::string& request_id, const std::string& poi_id) const {
    auto it = grades_.find(request_id);
    if (it == grades_.end()) return std::nullopt;
    auto jt = it->second.find(poi_id);
    if (jt == it->second.end()) return std::nullopt;
    return jt->second;
}

const std::map<std::string, int>* Qrels::for_request(const std::string& request_id) const {
    auto it = grades_.find(request_id);
    return it == grades_.end() ? nullptr : &it->second;
}

namespace {

// min(permutations_per_poi, k!) without overflowing.
int capped_permutation_count(std::size_t k, int cap) {
    std::uint64_t fact = 1;
    for (std::size_t i = 2; i <= k; ++i) {
        fact *= i;
        if (fact >= static_cast<std::uint64_t>(cap)) return cap;
    }
    return static_cast<int>(std::min<std::uint64_t>(fact, static_cast<std::uint64_t>(cap)));
}

}  // namespace

std::vector<Sentence> build_tag_sentences(const std::vector<Poi>& pois, int permutations_per_poi,
                                          std::uint64_t seed) {
    if (permutations_per_poi < 1)
        throw std::invalid_argument("build_tag_sentences: permutations_per_poi must be >= 1");

    std::mt19937_64 rng(seed);
    std::vector<Sentence> sentences;
    for (const Poi& poi : pois) {
        if (poi.tags.empty()) continue;

        Sentence canonical;
        canonical.reserve(poi.tags.size());
        for (const Tag& tag : poi.tags) canonical.push_back(tag.normalized);

        const std::size_t k = canonical.size();
        const int wanted = capped_permutation_count(k, permutations_per_poi);
        sentences.push_back(canonical);
        if (wanted == 1) continue;

        // Distinct permutations of tag positions; duplicates of the canonical
        // order (or of each other) are rejected until `wanted` are collected.
        std::vector<std::size_t> order(k);
        for (std::size_t i = 0; i < k; ++i) order[i] = i;

        std::set<std::vector<std::size_t>> seen;
        seen.insert(order);
        int produced = 1;
        while (produced < wanted) {
            std::shuffle(order.begin(), order.end(), rng);
            if (!seen.insert(order).second) continue;
            Sentence permuted(k);
            for (std::size_t i = 0; i < k; ++i) permuted[i] = canonical[order[i]];
            sentences.push_back(std::move(permuted));
            ++produced;
        }
    }
    return sentences;
}

}  // namespace tagrec
