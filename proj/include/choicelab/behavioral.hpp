#pragma once

// Eighteen behavioral choice models under a common predict-probability
// interface, organized in three groups: heuristic rules, counterfactual
// (disappointment / regret) models, and subjective expected-utility models.
//
// Value-based families map a value difference through a logistic link
// sigma(phi * (V_A - V_B)); heuristic rules emit {0, 0.5, 1} and pass
// through a lapse mixture eps * 0.5 + (1 - eps) * verdict.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "choicelab/gamble.hpp"

namespace choicelab {

enum class ModelFamily {
    better_than_average = 0,
    equiprobable,
    low_payoff_elimination,
    low_expected_payoff_elimination,
    probable,
    minimax,
    maximax,
    priority_heuristic,
    disappointment_ev,
    disappointment_eu,
    disappointment_no_rescale,
    regret_ev,
    regret_eu,
    expected_value,
    expected_utility,
    prospect_theory,
    transfer_of_attention_exchange,
    mixture_of_theories,
};

inline constexpr int kFamilyCount = 18;

inline std::vector<ModelFamily> all_families() {
    std::vector<ModelFamily> v(kFamilyCount);
    for (int i = 0; i < kFamilyCount; ++i) v[i] = static_cast<ModelFamily>(i);
    return v;
}

enum class FamilyGroup { heuristic, counterfactual, subjective_eu };

inline FamilyGroup family_group(ModelFamily f) {
    const int i = static_cast<int>(f);
    if (i <= static_cast<int>(ModelFamily::priority_heuristic))
        return FamilyGroup::heuristic;
    if (i <= static_cast<int>(ModelFamily::regret_eu))
        return FamilyGroup::counterfactual;
    return FamilyGroup::subjective_eu;
}

inline const char* family_id(ModelFamily f) {
    switch (f) {
        case ModelFamily::better_than_average: return "better-than-average";
        case ModelFamily::equiprobable: return "equiprobable";
        case ModelFamily::low_payoff_elimination: return "low-payoff-elimination";
        case ModelFamily::low_expected_payoff_elimination:
            return "low-expected-payoff-elimination";
        case ModelFamily::probable: return "probable";
        case ModelFamily::minimax: return "minimax";
        case ModelFamily::maximax: return "maximax";
        case ModelFamily::priority_heuristic: return "priority-heuristic";
        case ModelFamily::disappointment_ev: return "disappointment-ev";
        case ModelFamily::disappointment_eu: return "disappointment-eu";
        case ModelFamily::disappointment_no_rescale:
            return "disappointment-no-rescale";
        case ModelFamily::regret_ev: return "regret-ev";
        case ModelFamily::regret_eu: return "regret-eu";
        case ModelFamily::expected_value: return "expected-value";
        case ModelFamily::expected_utility: return "expected-utility";
        case ModelFamily::prospect_theory: return "prospect-theory";
        case ModelFamily::transfer_of_attention_exchange:
            return "transfer-of-attention-exchange";
        case ModelFamily::mixture_of_theories: return "mixture-of-theories";
    }
    throw ValidationError("unknown model family");
}

inline const char* family_label(ModelFamily f) {
    switch (f) {
        case ModelFamily::better_than_average: return "Better Than Average";
        case ModelFamily::equiprobable: return "Equiprobable";
        case ModelFamily::low_payoff_elimination: return "Low Payoff Elimination";
        case ModelFamily::low_expected_payoff_elimination:
            return "Low Expected Payoff Elimination";
        case ModelFamily::probable: return "Probable";
        case ModelFamily::minimax: return "Minimax";
        case ModelFamily::maximax: return "Maximax";
        case ModelFamily::priority_heuristic: return "Priority Heuristic";
        case ModelFamily::disappointment_ev: return "Disappointment Theory with EV";
        case ModelFamily::disappointment_eu: return "Disappointment Theory with EU";
        case ModelFamily::disappointment_no_rescale:
            return "Disappointment Theory Without Rescaling";
        case ModelFamily::regret_ev: return "Regret Theory with EV";
        case ModelFamily::regret_eu: return "Regret Theory with EU";
        case ModelFamily::expected_value: return "Expected Value";
        case ModelFamily::expected_utility: return "Expected Utility";
        case ModelFamily::prospect_theory: return "Prospect Theory";
        case ModelFamily::transfer_of_attention_exchange:
            return "Transfer of Attention Exchange";
        case ModelFamily::mixture_of_theories: return "Mixture of Theories";
    }
    throw ValidationError("unknown model family");
}

inline ModelFamily family_from_id(const std::string& id) {
    for (int i = 0; i < kFamilyCount; ++i)
        if (id == family_id(static_cast<ModelFamily>(i)))
            return static_cast<ModelFamily>(i);
    throw ValidationError("unknown model family '" + id + "'");
}

struct ModelParams {
    double alpha = 1.0;       // utility curvature (> 0)
    double lambda = 1.0;      // loss aversion (> 0)
    double gamma = 1.0;       // probability-weighting curvature
    double weight = 0.5;      // MOT mixture weight in [0, 1]
    double phi = 1.0;         // choice sensitivity (> 0)
    double lapse = 0.0;       // heuristic lapse rate in [0, 1]
    double alpha2 = 1.0;      // MOT second-component curvature
    double gamma2 = 1.0;      // MOT second-component weighting curvature
    double wdelta = 1.0;      // MOT component-1 weighting elevation
    double wdelta2 = 1.0;     // MOT component-2 weighting elevation
    double tax_delta = 0.0;   // TAX attention transfer in [-1, 1]
    double threshold = 0.0;   // elimination-family cutoff
    double elation = 0.0;     // disappointment: above-reference coefficient
    double disappoint = 0.0;  // disappointment: below-reference coefficient
    double regret = 0.0;      // regret curvature coefficient
};

// Power utility: x^alpha on gains, -lambda * (-x)^alpha on losses.
inline double power_utility(double x, double alpha, double lambda) {
    if (x >= 0.0) return std::pow(x, alpha);
    return -lambda * std::pow(-x, alpha);
}

// Inverse-S weighting, q^g / (q^g + (1-q)^g)^(1/g). Identity at g = 1.
inline double tk_weight(double q, double gamma) {
    if (q <= 0.0) return 0.0;
    if (q >= 1.0) return 1.0;
    const double a = std::pow(q, gamma);
    const double b = std::pow(1.0 - q, gamma);
    return a / std::pow(a + b, 1.0 / gamma);
}

// Linear-in-log-odds weighting, d*q^g / (d*q^g + (1-q)^g). Identity at
// g = d = 1; gamma = 0 gives the flat line d/(d+1) that ignores
// probabilities entirely.
inline double ge_weight(double q, double gamma, double delta) {
    if (gamma == 0.0) return delta / (delta + 1.0);
    if (q <= 0.0) return 0.0;
    if (q >= 1.0) return 1.0;
    const double a = delta * std::pow(q, gamma);
    const double b = std::pow(1.0 - q, gamma);
    return a / (a + b);
}

inline double logistic(double t) { return 1.0 / (1.0 + std::exp(-t)); }

// Cached per-gamble aggregates; outcomes sorted ascending by payoff.
struct GambleStats {
    std::vector<double> payoffs;
    std::vector<double> probs;
    double ev = 0.0;
    double min_payoff = 0.0;
    double max_payoff = 0.0;
    double mean_payoff = 0.0;       // unweighted
    double p_min = 0.0;             // total probability of the minimum payoff
    double probable_mean = 0.0;     // mean over outcomes with q >= 1/n
};

inline GambleStats make_stats(const Gamble& g) {
    validate_gamble(g);
    GambleStats s;
    std::vector<std::size_t> order(g.payoffs.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return g.payoffs[a] < g.payoffs[b];
    });
    for (std::size_t i : order) {
        s.payoffs.push_back(g.payoffs[i]);
        s.probs.push_back(g.probs[i]);
    }
    const std::size_t n = s.payoffs.size();
    s.min_payoff = s.payoffs.front();
    s.max_payoff = s.payoffs.back();
    double probable_sum = 0.0;
    std::size_t probable_n = 0;
    const double cutoff = 1.0 / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
        s.ev += s.probs[i] * s.payoffs[i];
        s.mean_payoff += s.payoffs[i];
        if (s.payoffs[i] == s.min_payoff) s.p_min += s.probs[i];
        if (s.probs[i] >= cutoff - 1e-12) {
            probable_sum += s.payoffs[i];
            ++probable_n;
        }
    }
    s.mean_payoff /= static_cast<double>(n);
    s.probable_mean = probable_sum / static_cast<double>(probable_n);
    return s;
}

struct ProblemView {
    GambleStats a, b;
    double grand_mean = 0.0;  // unweighted mean over all outcomes, both gambles
};

inline ProblemView make_view(const ChoiceProblem& p) {
    ProblemView v;
    v.a = make_stats(p.gamble_a);
    v.b = make_stats(p.gamble_b);
    double sum = 0.0;
    for (double x : v.a.payoffs) sum += x;
    for (double x : v.b.payoffs) sum += x;
    v.grand_mean = sum / static_cast<double>(v.a.payoffs.size() + v.b.payoffs.size());
    return v;
}

namespace detail {

inline double value_eu(const GambleStats& g, double alpha, double lambda) {
    double v = 0.0;
    for (std::size_t i = 0; i < g.payoffs.size(); ++i)
        v += g.probs[i] * power_utility(g.payoffs[i], alpha, lambda);
    return v;
}

inline double value_pt(const GambleStats& g, double alpha, double lambda,
                       double gamma) {
    double v = 0.0;
    for (std::size_t i = 0; i < g.payoffs.size(); ++i)
        v += tk_weight(g.probs[i], gamma) *
             power_utility(g.payoffs[i], alpha, lambda);
    return v;
}

// Special TAX: attention weights t(q) = q^gamma; each lower/higher outcome
// pair transfers delta * t(source) / (n + 1) toward the lower outcome when
// delta >= 0 (toward the higher when delta < 0).
inline double value_tax(const GambleStats& g, const ModelParams& mp) {
    const std::size_t n = g.payoffs.size();
    std::vector<double> t(n), w(n);
    double t_sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        t[i] = std::pow(g.probs[i], mp.gamma);
        w[i] = t[i];
        t_sum += t[i];
    }
    const double scale = 1.0 / static_cast<double>(n + 1);
    for (std::size_t lo = 0; lo < n; ++lo)
        for (std::size_t hi = lo + 1; hi < n; ++hi) {
            const double amt = (mp.tax_delta >= 0.0 ? mp.tax_delta * t[hi]
                                                    : mp.tax_delta * t[lo]) *
                               scale;
            w[lo] += amt;
            w[hi] -= amt;
        }
    double v = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        v += w[i] * power_utility(g.payoffs[i], mp.alpha, mp.lambda);
    return v / t_sum;
}

inline double value_mot(const GambleStats& g, const ModelParams& mp) {
    double c1 = 0.0, c2 = 0.0;
    for (std::size_t i = 0; i < g.payoffs.size(); ++i) {
        c1 += ge_weight(g.probs[i], mp.gamma, mp.wdelta) *
              power_utility(g.payoffs[i], mp.alpha, mp.lambda);
        c2 += ge_weight(g.probs[i], mp.gamma2, mp.wdelta2) *
              power_utility(g.payoffs[i], mp.alpha2, mp.lambda);
    }
    return mp.weight * c1 + (1.0 - mp.weight) * c2;
}

// Outcomes compared against the gamble's own reference point; elation and
// disappointment scale the deviation. Rescaled variants divide by
// (1 + elation + disappointment) to stay on the utility scale.
inline double value_disappointment(const GambleStats& g, const ModelParams& mp,
                                   bool eu_utility, bool rescale) {
    std::vector<double> v(g.payoffs.size());
    double ref = 0.0;
    for (std::size_t i = 0; i < g.payoffs.size(); ++i) {
        v[i] = eu_utility ? power_utility(g.payoffs[i], mp.alpha, mp.lambda)
                          : g.payoffs[i];
        ref += g.probs[i] * v[i];
    }
    double total = 0.0;
    for (std::size_t i = 0; i < g.payoffs.size(); ++i) {
        const double dev = v[i] - ref;
        const double coef = dev >= 0.0 ? mp.elation : mp.disappoint;
        total += g.probs[i] * (v[i] + coef * dev);
    }
    if (rescale) total /= 1.0 + mp.elation + mp.disappoint;
    return total;
}

// Net advantage of A over B under an independent joint: the regret function
// Q(z) = z * (1 + r|z|) is odd, so the comparison is antisymmetric.
inline double regret_net_advantage(const ProblemView& v, const ModelParams& mp,
                                   bool eu_utility) {
    auto util = [&](double x) {
        return eu_utility ? power_utility(x, mp.alpha, mp.lambda) : x;
    };
    double net = 0.0;
    for (std::size_t i = 0; i < v.a.payoffs.size(); ++i)
        for (std::size_t j = 0; j < v.b.payoffs.size(); ++j) {
            const double z = util(v.a.payoffs[i]) - util(v.b.payoffs[j]);
            net += v.a.probs[i] * v.b.probs[j] * z * (1.0 + mp.regret * std::fabs(z));
        }
    return net;
}

inline double verdict_from_cmp(double va, double vb) {
    if (va > vb) return 1.0;
    if (va < vb) return 0.0;
    return 0.5;
}

inline double verdict_priority_heuristic(const ProblemView& v) {
    const double aspiration =
        0.1 * std::max(v.a.max_payoff, v.b.max_payoff);
    if (std::fabs(v.a.min_payoff - v.b.min_payoff) >= aspiration &&
        v.a.min_payoff != v.b.min_payoff)
        return verdict_from_cmp(v.a.min_payoff, v.b.min_payoff);
    if (std::fabs(v.a.p_min - v.b.p_min) >= 0.1)
        return verdict_from_cmp(v.b.p_min, v.a.p_min);  // smaller p(min) wins
    return verdict_from_cmp(v.a.max_payoff, v.b.max_payoff);
}

inline double verdict_elimination(const ProblemView& v, double threshold,
                                  bool expected) {
    const double qa = expected ? v.a.ev : v.a.min_payoff;
    const double qb = expected ? v.b.ev : v.b.min_payoff;
    const bool elim_a = qa < threshold;
    const bool elim_b = qb < threshold;
    if (elim_a != elim_b) return elim_a ? 0.0 : 1.0;
    return verdict_from_cmp(v.a.ev, v.b.ev);
}

inline double verdict_better_than_average(const ProblemView& v) {
    auto count_above = [&](const GambleStats& g) {
        int c = 0;
        for (double x : g.payoffs)
            if (x > v.grand_mean) ++c;
        return c;
    };
    return verdict_from_cmp(count_above(v.a), count_above(v.b));
}

// Deterministic heuristic verdict: P(A) in {0, 0.5, 1} before the lapse mix.
inline double heuristic_verdict(ModelFamily f, const ModelParams& mp,
                                const ProblemView& v) {
    switch (f) {
        case ModelFamily::better_than_average:
            return verdict_better_than_average(v);
        case ModelFamily::equiprobable:
            return verdict_from_cmp(v.a.mean_payoff, v.b.mean_payoff);
        case ModelFamily::low_payoff_elimination:
            return verdict_elimination(v, mp.threshold, false);
        case ModelFamily::low_expected_payoff_elimination:
            return verdict_elimination(v, mp.threshold, true);
        case ModelFamily::probable:
            return verdict_from_cmp(v.a.probable_mean, v.b.probable_mean);
        case ModelFamily::minimax:
            return verdict_from_cmp(v.a.min_payoff, v.b.min_payoff);
        case ModelFamily::maximax:
            return verdict_from_cmp(v.a.max_payoff, v.b.max_payoff);
        case ModelFamily::priority_heuristic:
            return verdict_priority_heuristic(v);
        default:
            throw ValidationError("not a heuristic family");
    }
}

inline double stats_value(ModelFamily f, const ModelParams& mp,
                          const GambleStats& g) {
    switch (f) {
        case ModelFamily::expected_value:
            return g.ev;
        case ModelFamily::expected_utility:
            return value_eu(g, mp.alpha, mp.lambda);
        case ModelFamily::prospect_theory:
            return value_pt(g, mp.alpha, mp.lambda, mp.gamma);
        case ModelFamily::transfer_of_attention_exchange:
            return value_tax(g, mp);
        case ModelFamily::mixture_of_theories:
            return value_mot(g, mp);
        case ModelFamily::disappointment_ev:
            return value_disappointment(g, mp, false, true);
        case ModelFamily::disappointment_eu:
            return value_disappointment(g, mp, true, true);
        case ModelFamily::disappointment_no_rescale:
            return value_disappointment(g, mp, false, false);
        // Regret is a pairwise construct; the per-gamble scalar is the
        // marginal (regret-free) expected utility.
        case ModelFamily::regret_ev:
            return g.ev;
        case ModelFamily::regret_eu:
            return value_eu(g, mp.alpha, mp.lambda);
        // Heuristic rules: the scalar their first comparison stage uses.
        case ModelFamily::better_than_average:
        case ModelFamily::equiprobable:
            return g.mean_payoff;
        case ModelFamily::low_payoff_elimination:
        case ModelFamily::minimax:
        case ModelFamily::priority_heuristic:
            return g.min_payoff;
        case ModelFamily::low_expected_payoff_elimination:
            return g.ev;
        case ModelFamily::probable:
            return g.probable_mean;
        case ModelFamily::maximax:
            return g.max_payoff;
    }
    throw ValidationError("unknown model family");
}

}  // namespace detail

// Subjective value a model assigns to one gamble.
inline double model_value(ModelFamily f, const ModelParams& mp, const Gamble& g) {
    if (f == ModelFamily::expected_value || f == ModelFamily::regret_ev)
        return expected_value(g);
    return detail::stats_value(f, mp, make_stats(g));
}

// Hot path: probability of choosing gamble A given cached problem stats.
inline double predict_from_view(ModelFamily f, const ModelParams& mp,
                                const ProblemView& v) {
    switch (family_group(f)) {
        case FamilyGroup::heuristic: {
            const double verdict = detail::heuristic_verdict(f, mp, v);
            return mp.lapse * 0.5 + (1.0 - mp.lapse) * verdict;
        }
        case FamilyGroup::counterfactual:
            if (f == ModelFamily::regret_ev || f == ModelFamily::regret_eu)
                return logistic(
                    mp.phi * detail::regret_net_advantage(
                                 v, mp, f == ModelFamily::regret_eu));
            [[fallthrough]];
        case FamilyGroup::subjective_eu: {
            const double va = detail::stats_value(f, mp, v.a);
            const double vb = detail::stats_value(f, mp, v.b);
            return logistic(mp.phi * (va - vb));
        }
    }
    throw ValidationError("unknown model family");
}

inline double predict_choice_prob(ModelFamily f, const ModelParams& mp,
                                  const ChoiceProblem& p) {
    return predict_from_view(f, mp, make_view(p));
}

}  // namespace choicelab
