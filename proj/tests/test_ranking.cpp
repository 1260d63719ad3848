#include <doctest.h>

#include <algorithm>
#include <random>

#include "tagrec/ranking.hpp"

using namespace tagrec;

namespace {

UserModel user_with_combined(Vec combined) {
    UserModel user;
    user.user_id = "u";
    user.combined = std::move(combined);
    return user;
}

std::vector<PoiVector> random_candidates(std::mt19937_64& rng, int n, int dim) {
    std::uniform_real_distribution<double> value(-5.0, 5.0);
    std::vector<PoiVector> candidates;
    for (int i = 0; i < n; ++i) {
        Vec v(dim);
        for (double& x : v) x = value(rng);
        char id[16];
        std::snprintf(id, sizeof(id), "p%03d", i);
        candidates.push_back(PoiVector{id, std::move(v)});
    }
    return candidates;
}

}  // namespace

TEST_CASE("cosine basics") {
    const Vec v = {3.0, 4.0};
    CHECK(cosine(v, v) == doctest::Approx(1.0));
    CHECK(cosine({1.0, 0.0}, {0.0, 1.0}) == 0.0);
    CHECK(cosine(v, {6.0, 8.0}) == doctest::Approx(1.0));  // scale invariance
    CHECK(cosine({1.0, 0.0}, {-1.0, 0.0}) == doctest::Approx(-1.0));
}

TEST_CASE("cosine with a zero vector is defined as 0") {
    CHECK(cosine({0.0, 0.0}, {1.0, 2.0}) == 0.0);
    CHECK(cosine({1.0, 2.0}, {0.0, 0.0}) == 0.0);
    CHECK(cosine({0.0}, {0.0}) == 0.0);
}

TEST_CASE("cosine rejects dimension mismatches") {
    CHECK_THROWS_AS(cosine({1.0}, {1.0, 2.0}), std::invalid_argument);
}

TEST_CASE("a candidate equal to the profile vector ranks first") {
    const UserModel user = user_with_combined({1.0, 2.0, 3.0});
    std::vector<PoiVector> candidates = {{"other", {3.0, -1.0, 0.5}},
                                         {"same", {1.0, 2.0, 3.0}},
                                         {"far", {-1.0, -2.0, -3.0}}};
    const RankedList ranked = rank_candidates(user, "r1", candidates);
    REQUIRE(ranked.items.size() == 3);
    CHECK(ranked.items[0].poi_id == "same");
    CHECK(ranked.items[0].score == doctest::Approx(1.0));
    CHECK(ranked.items[2].poi_id == "far");
}

TEST_CASE("identical candidate vectors order by poi id") {
    const UserModel user = user_with_combined({1.0, 0.0});
    std::vector<PoiVector> candidates = {{"zeta", {2.0, 0.0}}, {"alpha", {2.0, 0.0}}};
    const RankedList ranked = rank_candidates(user, "r1", candidates);
    CHECK(ranked.items[0].poi_id == "alpha");
    CHECK(ranked.items[1].poi_id == "zeta");
    CHECK(ranked.items[0].score == ranked.items[1].score);
}

TEST_CASE("ranking matches a brute-force sort oracle") {
    std::mt19937_64 rng(31);
    const UserModel user = user_with_combined({0.4, -1.2, 2.0, 0.1});
    const auto candidates = random_candidates(rng, 5, 4);
    const RankedList ranked = rank_candidates(user, "r1", candidates);

    // Oracle: score each candidate independently and sort with the same rule.
    std::vector<std::pair<double, std::string>> expected;
    for (const auto& c : candidates) expected.emplace_back(cosine(user.combined, c.vector), c.poi_id);
    std::sort(expected.begin(), expected.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return a.second < b.second;
    });
    REQUIRE(ranked.items.size() == expected.size());
    for (std::size_t i = 0; i < expected.size(); ++i) {
        CHECK(ranked.items[i].poi_id == expected[i].second);
        CHECK(ranked.items[i].score == expected[i].first);
    }
}

TEST_CASE("positive scaling of the profile vector preserves order and scores") {
    std::mt19937_64 rng(37);
    std::uniform_real_distribution<double> lambda(0.1, 10.0);
    for (int trial = 0; trial < 100; ++trial) {
        const auto candidates = random_candidates(rng, 8, 5);
        Vec combined(5);
        std::uniform_real_distribution<double> value(-3.0, 3.0);
        for (double& x : combined) x = value(rng);

        const RankedList base = rank_candidates(user_with_combined(combined), "r", candidates);
        Vec scaled = combined;
        scale_inplace(scaled, lambda(rng));
        const RankedList after = rank_candidates(user_with_combined(scaled), "r", candidates);

        REQUIRE(base.items.size() == after.items.size());
        for (std::size_t i = 0; i < base.items.size(); ++i) {
            CHECK(base.items[i].poi_id == after.items[i].poi_id);
            CHECK(after.items[i].score == doctest::Approx(base.items[i].score).epsilon(1e-12));
        }
    }
}

TEST_CASE("candidate order never affects the ranking") {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 100; ++trial) {
        auto candidates = random_candidates(rng, 10, 4);
        Vec combined(4);
        std::uniform_real_distribution<double> value(-3.0, 3.0);
        for (double& x : combined) x = value(rng);
        const UserModel user = user_with_combined(combined);

        const RankedList base = rank_candidates(user, "r", candidates);
        std::shuffle(candidates.begin(), candidates.end(), rng);
        const RankedList shuffled = rank_candidates(user, "r", candidates);

        REQUIRE(base.items.size() == shuffled.items.size());
        for (std::size_t i = 0; i < base.items.size(); ++i) {
            CHECK(base.items[i].poi_id == shuffled.items[i].poi_id);
            CHECK(base.items[i].score == shuffled.items[i].score);
        }
    }
}

TEST_CASE("a zero profile vector scores everything 0 and orders by poi id") {
    std::mt19937_64 rng(43);
    const auto candidates = random_candidates(rng, 6, 3);
    const RankedList ranked = rank_candidates(user_with_combined({0.0, 0.0, 0.0}), "r", candidates);
    for (std::size_t i = 0; i < ranked.items.size(); ++i) {
        CHECK(ranked.items[i].score == 0.0);
        if (i > 0) CHECK(ranked.items[i - 1].poi_id < ranked.items[i].poi_id);
    }
}

TEST_CASE("emit_run writes positional ranks") {
    CHECK(emit_run({}, "tag").empty());

    RankedList list;
    list.request_id = "r1";
    list.items = {{"a", 0.9}, {"b", 0.5}, {"c", 0.1}};
    const std::vector<RankedList> lists = {list};
    const RunFile run = emit_run(lists, "mytag");
    REQUIRE(run.size() == 3);
    for (int i = 0; i < 3; ++i) {
        CHECK(run[i].rank == i + 1);
        CHECK(run[i].request_id == "r1");
        CHECK(run[i].run_tag == "mytag");
    }
    CHECK(run[0].poi_id == "a");
    CHECK(run[2].poi_id == "c");
}
