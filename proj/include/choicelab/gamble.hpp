#pragma once

// Risky-choice data model: a gamble is a list of (payoff, probability)
// outcomes; a choice problem is a pair of gambles plus the dataset flags
// used by the experiment filter.

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace choicelab {

class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Gamble {
    std::vector<double> payoffs;  // dollars, signed
    std::vector<double> probs;    // same length, sums to 1
};

// Probabilities must sum to 1 within this tolerance once a gamble is built.
inline constexpr double kProbSumTol = 1e-9;

inline void validate_gamble(const Gamble& g) {
    if (g.payoffs.empty()) throw ValidationError("gamble has no outcomes");
    if (g.payoffs.size() != g.probs.size())
        throw ValidationError("payoff/probability length mismatch");
    double sum = 0.0;
    for (std::size_t i = 0; i < g.payoffs.size(); ++i) {
        if (!std::isfinite(g.payoffs[i]))
            throw ValidationError("non-finite payoff");
        const double p = g.probs[i];
        if (!std::isfinite(p) || p < 0.0 || p > 1.0 + kProbSumTol)
            throw ValidationError("probability outside [0, 1]");
    }
    for (double p : g.probs) sum += p;
    if (std::fabs(sum - 1.0) > kProbSumTol)
        throw ValidationError("probabilities sum to " + std::to_string(sum) +
                              ", expected 1");
}

inline double expected_value(const Gamble& g) {
    validate_gamble(g);
    double ev = 0.0;
    for (std::size_t i = 0; i < g.payoffs.size(); ++i)
        ev += g.probs[i] * g.payoffs[i];
    return ev;
}

struct ChoiceProblem {
    std::string id;
    Gamble gamble_a;
    Gamble gamble_b;
    bool ambiguous = false;  // probabilities of B hidden from participants
    bool feedback = true;    // outcome feedback shown between repetitions
};

struct ChoiceObservation {
    std::string problem_id;
    double prop_a = 0.0;  // fraction of answers choosing gamble A
    int n_participants = 0;
};

// Rational baseline: 1 if EV(A) wins, 0 if EV(B) wins, 0.5 on an exact tie
// (keeps the baseline vector well-defined for correlations).
inline double max_ev_prediction(const ChoiceProblem& p) {
    const double ev_a = expected_value(p.gamble_a);
    const double ev_b = expected_value(p.gamble_b);
    if (ev_a > ev_b) return 1.0;
    if (ev_a < ev_b) return 0.0;
    return 0.5;
}

}  // namespace choicelab
