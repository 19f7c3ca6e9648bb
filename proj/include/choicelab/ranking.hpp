#pragma once

// Win-count aggregation of pairwise judgements into a ranking, and
// score-based rankings with midrank ties.

#include <cstddef>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "choicelab/stats.hpp"

namespace choicelab {

enum class PairVerdict { first_stronger, second_stronger, tie };

struct PairwiseOutcome {
    std::size_t first = 0;   // decision index
    std::size_t second = 0;  // decision index, != first
    PairVerdict verdict = PairVerdict::tie;
};

struct Ranking {
    // Raw per-item evidence: win scores for pairwise aggregation, preference
    // scores for score-based rankings.
    std::vector<double> value;
    // 1 = strongest; ties share their midrank.
    std::vector<double> rank;
};

// Descending-by-value midranks. `tie_tol` groups values whose gap is within
// the tolerance; score vectors computed on a grid carry float fuzz between
// structurally identical decisions that must rank as ties.
inline std::vector<double> ranks_descending(const std::vector<double>& value,
                                            double tie_tol = 0.0) {
    std::vector<double> keyed = value;
    if (tie_tol > 0.0 && keyed.size() > 1) {
        std::vector<std::size_t> order(keyed.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return keyed[a] < keyed[b];
        });
        // Collapse chains of near-equal values onto a single representative.
        for (std::size_t i = 1; i < order.size(); ++i)
            if (keyed[order[i]] - keyed[order[i - 1]] <= tie_tol)
                keyed[order[i]] = keyed[order[i - 1]];
    }
    for (double& v : keyed) v = -v;
    return midranks(keyed);
}

inline Ranking ranking_from_scores(const std::vector<double>& scores,
                                   double tie_tol = 0.0) {
    Ranking r;
    r.value = scores;
    r.rank = ranks_descending(scores, tie_tol);
    return r;
}

// Win score = #wins + 0.5 * #ties per item. Each unordered pair may appear
// at most once; cycles are not detected (win counting tolerates them).
inline Ranking aggregate_pairwise(const std::vector<PairwiseOutcome>& outcomes,
                                  std::size_t n_items) {
    if (n_items < 2)
        throw std::invalid_argument("aggregate_pairwise: need at least 2 items");
    std::set<std::pair<std::size_t, std::size_t>> seen;
    std::vector<double> score(n_items, 0.0);
    for (const auto& o : outcomes) {
        if (o.first >= n_items || o.second >= n_items)
            throw std::invalid_argument("aggregate_pairwise: unknown item index " +
                                        std::to_string(std::max(o.first, o.second)));
        if (o.first == o.second)
            throw std::invalid_argument("aggregate_pairwise: self-pair");
        auto key = std::minmax(o.first, o.second);
        if (!seen.insert(key).second)
            throw std::invalid_argument(
                "aggregate_pairwise: duplicate pair (" + std::to_string(key.first) +
                ", " + std::to_string(key.second) + ")");
        switch (o.verdict) {
            case PairVerdict::first_stronger: score[o.first] += 1.0; break;
            case PairVerdict::second_stronger: score[o.second] += 1.0; break;
            case PairVerdict::tie:
                score[o.first] += 0.5;
                score[o.second] += 0.5;
                break;
        }
    }
    return ranking_from_scores(score);
}

}  // namespace choicelab
