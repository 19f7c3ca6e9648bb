#pragma once

// Observed-decision data model for preference inference: a decision is an
// ordered list of 1-5 options (sets of items drawn from {A, B, C, D, X})
// with one chosen option. X is the inference target. The forward model is
// the Luce rule over summed item utilities.

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "choicelab/gamble.hpp"  // ValidationError
#include "choicelab/rng.hpp"

namespace choicelab {

enum class Item : std::uint8_t { A = 0, B = 1, C = 2, D = 3, X = 4 };
inline constexpr std::size_t kItemCount = 5;

inline char item_letter(Item it) {
    return "abcdx"[static_cast<std::size_t>(it)];
}

inline Item item_from_letter(char c) {
    switch (c) {
        case 'a': case 'A': return Item::A;
        case 'b': case 'B': return Item::B;
        case 'c': case 'C': return Item::C;
        case 'd': case 'D': return Item::D;
        case 'x': case 'X': return Item::X;
    }
    throw ValidationError(std::string("unknown item letter '") + c + "'");
}

// Utilities indexed by item.
using UtilityVector = std::array<double, kItemCount>;

struct DecisionStructure {
    std::vector<std::vector<Item>> options;
    std::size_t chosen = 0;
};

inline void validate_decision(const DecisionStructure& d) {
    if (d.options.empty() || d.options.size() > kItemCount)
        throw ValidationError("decision must offer between 1 and 5 options");
    if (d.chosen >= d.options.size())
        throw ValidationError("chosen option index out of range");
    for (const auto& opt : d.options) {
        if (opt.empty()) throw ValidationError("empty option");
        std::array<bool, kItemCount> seen{};
        for (Item it : opt) {
            auto idx = static_cast<std::size_t>(it);
            if (seen[idx])
                throw ValidationError("item repeated within an option");
            seen[idx] = true;
        }
    }
}

// Convenience constructor from letter strings, e.g. {"ax", "b"} chooses
// index `chosen`.
inline DecisionStructure decision_from_letters(
    const std::vector<std::string>& options, std::size_t chosen = 0) {
    DecisionStructure d;
    d.chosen = chosen;
    for (const auto& s : options) {
        std::vector<Item> opt;
        for (char c : s) opt.push_back(item_from_letter(c));
        d.options.push_back(std::move(opt));
    }
    validate_decision(d);
    return d;
}

inline double option_utility(const UtilityVector& u,
                             const std::vector<Item>& option) {
    double s = 0.0;
    for (Item it : option) s += u[static_cast<std::size_t>(it)];
    return s;
}

// Luce rule: p(chosen) = exp(beta * U_chosen) / sum_k exp(beta * U_k), with
// U_j the sum of item utilities in option j. beta = 1 is the standard model;
// the exponentials are max-shifted for stability.
inline double luce_choice_prob(const UtilityVector& u,
                               const DecisionStructure& d, double beta = 1.0) {
    validate_decision(d);
    if (!(beta > 0.0)) throw ValidationError("luce_choice_prob: beta must be > 0");
    double max_u = -HUGE_VAL;
    std::array<double, kItemCount> su{};
    for (std::size_t j = 0; j < d.options.size(); ++j) {
        su[j] = beta * option_utility(u, d.options[j]);
        if (su[j] > max_u) max_u = su[j];
    }
    double denom = 0.0;
    for (std::size_t j = 0; j < d.options.size(); ++j)
        denom += std::exp(su[j] - max_u);
    return std::exp(su[d.chosen] - max_u) / denom;
}

enum class Context { positive, negative };

inline const char* context_name(Context c) {
    return c == Context::positive ? "positive" : "negative";
}

// Per-item iid uniform prior: (0, 1] for positive contexts (candies),
// [-1, 0) for negative ones (shocks).
struct PriorSpec {
    Context context = Context::positive;

    double lo() const { return context == Context::positive ? 0.0 : -1.0; }
    double hi() const { return context == Context::positive ? 1.0 : 0.0; }

    UtilityVector sample(Rng& rng) const {
        UtilityVector u{};
        for (auto& v : u) {
            double t = 1.0 - rng.uniform();  // (0, 1]
            v = context == Context::positive ? t : -t;
        }
        return u;
    }
};

}  // namespace choicelab
