#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace tagrec {

/// A user-assigned label on a POI. `raw` is the label as found in the data;
/// `normalized` is the lowercase, hyphen-joined token used everywhere else
/// (e.g. "Family Friendly" -> "family-friendly").
struct Tag {
    std::string raw;
    std::string normalized;

    bool operator==(const Tag&) const = default;
};

/// Lowercases and replaces internal whitespace runs with single hyphens.
/// Throws std::invalid_argument if the input is empty after trimming.
Tag normalize_tag(std::string_view raw);

/// Maps a 0..4 preference rating onto the signed weight scale
/// {-3, -2, 1, 2, 3}. Throws std::out_of_range for anything else.
int scale_rating(int rating);

constexpr int kMinRating = 0;
constexpr int kMaxRating = 4;

struct Poi {
    std::string id;
    std::vector<Tag> tags;

    bool operator==(const Poi&) const = default;
};

struct ProfileEntry {
    Poi poi;
    int rating = 0;  // 0 (highly disliked) .. 4 (profoundly enjoyed)

    bool operator==(const ProfileEntry&) const = default;
};

struct UserProfile {
    std::string user_id;
    std::vector<ProfileEntry> entries;  // at most one entry per POI id

    bool operator==(const UserProfile&) const = default;
};

/// Ratings {3,4} are positive, {2} neutral, {0,1} negative.
struct ProfilePartition {
    std::vector<ProfileEntry> positive;
    std::vector<ProfileEntry> neutral;
    std::vector<ProfileEntry> negative;
};

ProfilePartition partition_profile(const UserProfile& profile);

struct Context {
    std::string city;
    std::string trip_type;
    std::string trip_duration;
    std::string group_type;
    std::string season;

    bool operator==(const Context&) const = default;
};

/// A request as stored on disk: the profile and candidates are referenced
/// by id and resolved against the collection when a Dataset is assembled.
struct RequestRecord {
    std::string request_id;
    std::string user_id;
    Context context;
    std::vector<std::string> candidate_ids;

    bool operator==(const RequestRecord&) const = default;
};

/// A fully resolved request: the unit of ranking.
struct Request {
    std::string request_id;
    UserProfile profile;
    Context context;
    std::vector<Poi> candidates;
};

/// Graded relevance judgments keyed by (request_id, poi_id).
class Qrels {
  public:
    /// Throws std::invalid_argument on duplicate (request, poi) or negative grade.
    void add(const std::string& request_id, const std::string& poi_id, int grade);

    std::optional<int> grade(const std::string& request_id, const std::string& poi_id) const;

    /// Judged documents for one request (nullptr when the request is unjudged).
    const std::map<std::string, int>* for_request(const std::string& request_id) const;

    const std::map<std::string, std::map<std::string, int>>& all() const { return grades_; }
    bool empty() const { return grades_.empty(); }
    std::size_t request_count() const { return grades_.size(); }

  private:
    std::map<std::string, std::map<std::string, int>> grades_;
};

struct RunEntry {
    std::string request_id;
    std::string poi_id;
    int rank = 0;  // 1-based
    double score = 0.0;
    std::string run_tag;

    bool operator==(const RunEntry&) const = default;
};

using RunFile = std::vector<RunEntry>;

using Sentence = std::vector<std::string>;  // normalized tags

/// One sentence per POI in input tag order; when permutations_per_poi > 1,
/// additional distinct permutations are appended so that each POI with k tags
/// contributes min(permutations_per_poi, k!) sentences. POIs without tags
/// contribute nothing. Deterministic for a fixed seed.
std::vector<Sentence> build_tag_sentences(const std::vector<Poi>& pois, int permutations_per_poi,
                                          std::uint64_t seed = 1);

}  // namespace tagrec
