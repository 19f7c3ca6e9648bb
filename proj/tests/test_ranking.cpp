#include <catch2/catch_amalgamated.hpp>

#include "choicelab/ranking.hpp"
#include "choicelab/rng.hpp"

using namespace choicelab;

namespace {
PairwiseOutcome win(std::size_t a, std::size_t b) {
    return {a, b, PairVerdict::first_stronger};
}
PairwiseOutcome tie(std::size_t a, std::size_t b) {
    return {a, b, PairVerdict::tie};
}
}  // namespace

TEST_CASE("win counting over a total order") {
    auto r = aggregate_pairwise({win(0, 1), win(0, 2), win(1, 2)}, 3);
    CHECK(r.value == std::vector<double>{2.0, 1.0, 0.0});
    CHECK(r.rank == std::vector<double>{1.0, 2.0, 3.0});
}

TEST_CASE("all ties share one midrank") {
    auto r = aggregate_pairwise({tie(0, 1), tie(0, 2), tie(1, 2)}, 3);
    CHECK(r.value == std::vector<double>{1.0, 1.0, 1.0});
    CHECK(r.rank == std::vector<double>{2.0, 2.0, 2.0});
}

TEST_CASE("a cycle collapses to equal win scores") {
    // Enumerated by hand: each item wins once and loses once.
    auto r = aggregate_pairwise({win(0, 1), win(1, 2), win(2, 0)}, 3);
    CHECK(r.value == std::vector<double>{1.0, 1.0, 1.0});
}

TEST_CASE("pairwise validation") {
    CHECK_THROWS(aggregate_pairwise({win(0, 1), win(1, 0)}, 3));  // duplicate
    CHECK_THROWS(aggregate_pairwise({win(0, 3)}, 3));             // unknown id
    CHECK_THROWS(aggregate_pairwise({win(1, 1)}, 3));             // self pair
    CHECK_THROWS(aggregate_pairwise({}, 1));
}

TEST_CASE("total score conservation over random tournaments") {
    Rng rng(21);
    for (int rep = 0; rep < 30; ++rep) {
        const std::size_t n = 4 + rng.below(8);
        std::vector<PairwiseOutcome> outcomes;
        std::size_t pairs = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) {
                if (rng.bernoulli(0.2)) continue;  // some pairs unjudged
                PairVerdict v = rng.bernoulli(0.2) ? PairVerdict::tie
                                : rng.bernoulli(0.5)
                                    ? PairVerdict::first_stronger
                                    : PairVerdict::second_stronger;
                outcomes.push_back({i, j, v});
                ++pairs;
            }
        auto r = aggregate_pairwise(outcomes, n);
        double total = 0.0;
        for (double s : r.value) total += s;
        CHECK(total == Catch::Approx(static_cast<double>(pairs)));
    }
}

TEST_CASE("full tournaments sum to n(n-1)/2") {
    const std::size_t n = 7;
    std::vector<PairwiseOutcome> outcomes;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) outcomes.push_back(win(i, j));
    auto r = aggregate_pairwise(outcomes, n);
    double total = 0.0;
    for (double s : r.value) total += s;
    CHECK(total == Catch::Approx(n * (n - 1) / 2.0));
}

TEST_CASE("score ranking applies the tie tolerance") {
    auto r = ranking_from_scores({0.5, 0.5 + 1e-12, 0.4}, 1e-9);
    CHECK(r.rank[0] == 1.5);
    CHECK(r.rank[1] == 1.5);
    CHECK(r.rank[2] == 3.0);
    auto strict = ranking_from_scores({0.5, 0.5 + 1e-12, 0.4}, 0.0);
    CHECK(strict.rank[1] == 1.0);
    CHECK(strict.rank[0] == 2.0);
}
