#pragma once

// Prompt rendering for the forward (gambling machine) and inverse (observed
// decision) tasks. Rendering is a pure function of (input, spec, seed):
// identical inputs produce byte-identical text. Option order, item-label
// assignment and within-option order are shuffled from the seed to blunt
// positional bias; every presentation records its permutations so parsed
// verdicts can be mapped back.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "choicelab/decisions.hpp"
#include "choicelab/gamble.hpp"
#include "choicelab/rng.hpp"

namespace choicelab {

enum class Task {
    predict_individual,
    predict_proportion,
    act_as_participant,
    inverse_pairwise,
};

enum class Style { zero_shot, chain_of_thought };

inline const char* task_name(Task t) {
    switch (t) {
        case Task::predict_individual: return "predict-individual";
        case Task::predict_proportion: return "predict-proportion";
        case Task::act_as_participant: return "act-as-participant";
        case Task::inverse_pairwise: return "inverse-pairwise";
    }
    return "?";
}

inline Task task_from_name(const std::string& s) {
    if (s == "predict-individual") return Task::predict_individual;
    if (s == "predict-proportion") return Task::predict_proportion;
    if (s == "act-as-participant") return Task::act_as_participant;
    if (s == "inverse-pairwise") return Task::inverse_pairwise;
    throw ValidationError("unknown task '" + s + "'");
}

inline const char* style_name(Style s) {
    return s == Style::zero_shot ? "zero-shot" : "chain-of-thought";
}

inline Style style_from_name(const std::string& s) {
    if (s == "zero-shot") return Style::zero_shot;
    if (s == "chain-of-thought" || s == "cot") return Style::chain_of_thought;
    throw ValidationError("unknown prompt style '" + s + "'");
}

struct PromptSpec {
    Task task = Task::predict_individual;
    Style style = Style::zero_shot;
    std::optional<std::string> persona;  // noun phrase, e.g. "woman aged 18-35"
    std::optional<Context> context;      // required iff task == inverse_pairwise
    std::uint64_t seed = 0;
    int n_people = 0;  // participant count shown by the proportion task
};

inline void validate_prompt_spec(const PromptSpec& spec) {
    if ((spec.task == Task::inverse_pairwise) != spec.context.has_value())
        throw ValidationError(
            "context must be set exactly for the inverse-pairwise task");
}

namespace detail {

inline std::string trim_number(double v, int max_decimals) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", max_decimals, v);
    std::string s(buf);
    if (s.find('.') != std::string::npos) {
        while (s.back() == '0') s.pop_back();
        if (s.back() == '.') s.pop_back();
    }
    if (s == "-0") s = "0";
    return s;
}

inline std::string money(double v) {
    if (v < 0.0) return "-$" + trim_number(-v, 2);
    return "$" + trim_number(v, 2);
}

}  // namespace detail

// "$10 with probability 0.5, $0 with probability 0.5."
inline std::string describe_gamble(const Gamble& g) {
    validate_gamble(g);
    std::string s;
    for (std::size_t i = 0; i < g.payoffs.size(); ++i) {
        if (i) s += ", ";
        s += detail::money(g.payoffs[i]) + " with probability " +
             detail::trim_number(g.probs[i], 4);
    }
    s += ".";
    return s;
}

struct ForwardPresentation {
    std::string text;
    // Machine A/B as shown after shuffling.
    Gamble machine_a;
    Gamble machine_b;
    bool swapped = false;  // true when machine A is the problem's gamble B
};

inline ForwardPresentation render_forward_prompt(const ChoiceProblem& p,
                                                 const PromptSpec& spec) {
    validate_prompt_spec(spec);
    if (spec.task == Task::inverse_pairwise)
        throw ValidationError("render_forward_prompt: inverse task passed");
    validate_gamble(p.gamble_a);
    validate_gamble(p.gamble_b);

    Rng rng(derive_seed(spec.seed, fnv1a(p.id.data(), p.id.size())));
    ForwardPresentation out;
    out.swapped = rng.bernoulli(0.5);
    out.machine_a = out.swapped ? p.gamble_b : p.gamble_a;
    out.machine_b = out.swapped ? p.gamble_a : p.gamble_b;

    const std::string subject = spec.persona.value_or("person");
    const std::string machines = "Machine A: " + describe_gamble(out.machine_a) +
                                 "\nMachine B: " +
                                 describe_gamble(out.machine_b) + "\n";
    const bool cot = spec.style == Style::chain_of_thought;
    std::string text;
    switch (spec.task) {
        case Task::predict_individual:
            text = "A " + subject +
                   " is presented with two gambling machines, and makes a "
                   "choice between the machines with the goal of maximizing "
                   "the amount of dollars received.\n\nThe " + subject +
                   " will get one reward from the machine they choose. A "
                   "fixed proportion of 10% of this value will be paid to the "
                   "participant as a performance bonus.\nIf the reward is "
                   "negative, their bonus is set to $0.\n\n" + machines +
                   "\nWhich machine does the " + subject + " choose?\n" +
                   (cot ? "Let's think step by step before answering with A or B:"
                        : "Do not provide any explanation, only answer with A "
                          "or B:");
            break;
        case Task::predict_proportion:
            text = std::to_string(spec.n_people) + " people are presented " +
                   "with two gambling machines, and each " + subject +
                   " makes a choice between the machines with the goal of "
                   "maximizing the amount of dollars received.\nEach " +
                   subject + " will get one reward from the machine they "
                   "choose. A fixed proportion of 10% of this value will be "
                   "paid to the participant as a performance bonus.\nIf the "
                   "reward is negative, their bonus is set to $0.\n\n" +
                   machines +
                   "\nHow many people choose Machine A?\nHow many people "
                   "choose Machine B?\n\n" +
                   (cot ? "Let's think step by step before providing the final "
                          "output.\nPlease provide the percentage of people "
                          "who choose Machine A and Machine B in the json "
                          "format."
                        : "Please only provide the percentage of people who "
                          "choose Machine A and Machine B in the json format.");
            break;
        case Task::act_as_participant: {
            const std::string persona_prefix =
                spec.persona ? "You are a " + *spec.persona + ".\n" : "";
            text = persona_prefix +
                   "There are two gambling machines, A and B. You need to "
                   "make a choice between the machines with the goal of "
                   "maximizing the amount of dollars received.\nYou will get "
                   "one reward from the machine that you choose. A fixed "
                   "proportion of 10% of this value will be paid to you as a "
                   "performance bonus.\nIf the reward is negative, your bonus "
                   "is set to $0.\n\n" + machines +
                   "\nWhich machine do you choose?\n" +
                   (cot ? "Let's think step by step before answering with A or B:"
                        : "Do not provide any explanation, only answer with A "
                          "or B:");
            break;
        }
        case Task::inverse_pairwise:
            break;  // rejected above
    }
    out.text = std::move(text);
    return out;
}

// Item descriptors per context: candy colors and shock numbers.
inline const std::array<const char*, kItemCount>& candy_colors() {
    static const std::array<const char*, kItemCount> colors = {
        "red", "brown", "yellow", "blue", "black"};
    return colors;
}

struct InversePresentation {
    std::string text;
    // Decisions as shown (after option/item shuffling), in shown order.
    DecisionStructure shown_first;
    DecisionStructure shown_second;
    bool pair_swapped = false;  // true when Choice 1 is the pair's second member
    // Catalog indices of the shown decisions; set by the caller when known.
    int shown_first_index = -1;
    int shown_second_index = -1;
    // descriptor[i] = surface description of item i under the relabeling.
    std::array<std::string, kItemCount> descriptor;
    std::string target_descriptor;  // descriptor of item X
};

inline InversePresentation render_inverse_prompt(const DecisionStructure& first,
                                                 const DecisionStructure& second,
                                                 const PromptSpec& spec) {
    validate_prompt_spec(spec);
    if (spec.task != Task::inverse_pairwise)
        throw ValidationError("render_inverse_prompt: not an inverse task");
    validate_decision(first);
    validate_decision(second);

    Rng rng(spec.seed);
    InversePresentation out;
    const bool positive = *spec.context == Context::positive;

    // Item-label assignment: a random permutation of surface descriptors.
    std::vector<std::size_t> perm(kItemCount);
    for (std::size_t i = 0; i < kItemCount; ++i) perm[i] = i;
    rng.shuffle(perm);
    for (std::size_t i = 0; i < kItemCount; ++i) {
        out.descriptor[i] = positive
                                ? candy_colors()[perm[i]]
                                : "shock " + std::to_string(perm[i] + 1);
    }
    out.target_descriptor = out.descriptor[static_cast<std::size_t>(Item::X)];

    out.pair_swapped = rng.bernoulli(0.5);
    out.shown_first = out.pair_swapped ? second : first;
    out.shown_second = out.pair_swapped ? first : second;

    // Shuffle option order (tracking the chosen option) and the item order
    // within each option.
    auto shuffle_decision = [&](DecisionStructure d) {
        std::vector<std::size_t> order(d.options.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        rng.shuffle(order);
        DecisionStructure shuffled;
        for (std::size_t i = 0; i < order.size(); ++i) {
            if (order[i] == d.chosen) shuffled.chosen = i;
            auto opt = d.options[order[i]];
            rng.shuffle(opt);
            shuffled.options.push_back(std::move(opt));
        }
        return shuffled;
    };
    out.shown_first = shuffle_decision(out.shown_first);
    out.shown_second = shuffle_decision(out.shown_second);

    const std::string container = positive ? "Bag" : "Set";
    auto render_choice = [&](const DecisionStructure& d, int number) {
        std::string s = "Choice " + std::to_string(number) +
                        " was made between the following " +
                        (positive ? "bags" : "sets") + ":\n";
        for (std::size_t j = 0; j < d.options.size(); ++j) {
            s += container + " " + std::to_string(j + 1) + ": ";
            for (std::size_t i = 0; i < d.options[j].size(); ++i) {
                if (i) s += ", ";
                s += out.descriptor[static_cast<std::size_t>(d.options[j][i])];
            }
            s += ".\n";
        }
        s += "\nThe person making the choice chose " + container + " " +
             std::to_string(d.chosen + 1) + ".\n";
        return s;
    };

    std::string text;
    text += positive ? "The following are two choices that people have made "
                       "between different bags of candy. Each candy is a "
                       "different color.\n"
                     : "The following are two choices that people have made "
                       "between different sets of electric shocks. Each shock "
                       "is labeled with a different number.\n";
    text += render_choice(out.shown_first, 1);
    text += "\n";
    text += render_choice(out.shown_second, 2);
    text += "\n";
    text += positive ? "People were required to choose among the bags "
                       "available, and were not allowed to reject all the "
                       "bags.\nFor example, when there is only one bag, the "
                       "person has no choice but to choose it.\n"
                     : "People were required to choose among the sets "
                       "available, and were not allowed to reject all the "
                       "sets.\nFor example, when there is only one set, the "
                       "person has no choice but to choose it.\n";
    text += "Which choice (1 or 2) more strongly suggests that the person "
            "making the choice " +
            std::string(positive ? "likes " + out.target_descriptor + " candies"
                                 : "prefers " + out.target_descriptor) +
            "?\n";
    text += spec.style == Style::chain_of_thought
                ? "Let's think step by step."
                : "Please respond with either \"Choice 1\" or \"Choice 2\". Do "
                  "not include anything else in your answer.";
    out.text = std::move(text);
    return out;
}

}  // namespace choicelab
