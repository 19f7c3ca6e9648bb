#pragma once

// Preference-evidence scores for an observed decision, computed by inverting
// the Luce forward model against the iid uniform prior:
//
//   absolute   E[u_x | c, A]              posterior mean of the target utility
//   relative   p(forall i: u_x > u_i | c, A)
//   likelihood E[p(c | u, A) | u_x maximal]
//   marginal   1 / E_prior[p(c | u, A)]   rarer choices carry more evidence
//
// Two routes are provided: a dense tensor-grid quadrature (the reference)
// and a self-normalized Monte Carlo estimator with jackknife standard
// errors. They are implemented independently and cross-checked in tests.

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "choicelab/decisions.hpp"
#include "choicelab/ranking.hpp"
#include "choicelab/rng.hpp"

namespace choicelab {

enum class ScoreKind { absolute = 0, relative = 1, likelihood = 2, marginal = 3 };

inline const char* score_kind_name(ScoreKind k) {
    switch (k) {
        case ScoreKind::absolute: return "absolute";
        case ScoreKind::relative: return "relative";
        case ScoreKind::likelihood: return "likelihood";
        case ScoreKind::marginal: return "marginal";
    }
    return "?";
}

inline ScoreKind score_kind_from_name(const std::string& s) {
    if (s == "absolute") return ScoreKind::absolute;
    if (s == "relative") return ScoreKind::relative;
    if (s == "likelihood") return ScoreKind::likelihood;
    if (s == "marginal") return ScoreKind::marginal;
    throw ValidationError("unknown score kind '" + s + "'");
}

struct PreferenceScore {
    int decision_id = -1;
    ScoreKind kind = ScoreKind::absolute;
    double value = 0.0;
    double std_error = 0.0;  // jackknife; 0 for grid scores
};

using ScoreSet = std::array<double, 4>;  // indexed by ScoreKind

namespace detail {

struct CompiledDecision {
    // Per option: product set of non-target items, and whether x is a member.
    std::vector<std::vector<std::size_t>> non_x_items;
    std::vector<bool> has_x;
    std::size_t chosen;
};

inline CompiledDecision compile(const DecisionStructure& d) {
    validate_decision(d);
    CompiledDecision c;
    c.chosen = d.chosen;
    for (const auto& opt : d.options) {
        std::vector<std::size_t> rest;
        bool has_x = false;
        for (Item it : opt) {
            if (it == Item::X)
                has_x = true;
            else
                rest.push_back(static_cast<std::size_t>(it));
        }
        c.non_x_items.push_back(std::move(rest));
        c.has_x.push_back(has_x);
    }
    return c;
}

}  // namespace detail

// Riemann summation over a 5-d midpoint tensor grid. The likelihood weight
// is evaluated at cell centers; the strict "u_x maximal" event is integrated
// exactly within each cell (a cell whose non-target indices are all <= the
// target's contributes 1/(t+1), t = #coordinates sharing the target's index),
// so the single-option closed forms (0.5 / 0.2 / 1.0) hold exactly.
inline ScoreSet score_grid_all(const DecisionStructure& d, const PriorSpec& prior,
                               int grid_points_per_dim, double beta = 1.0) {
    const int n = grid_points_per_dim;
    if (n < 3) throw ValidationError("score_grid: need at least 3 points per dim");
    if (n > 64) throw ValidationError("score_grid: grid too fine (max 64 per dim)");
    if (!(beta > 0.0)) throw ValidationError("score_grid: beta must be > 0");
    const auto cd = detail::compile(d);
    const std::size_t n_opts = cd.has_x.size();

    // Grid values increase with the index in both contexts, so index order
    // equals utility order.
    std::vector<double> u(n), eu(n);
    for (int k = 0; k < n; ++k) {
        const double t = (k + 0.5) / n;
        u[k] = prior.context == Context::positive ? t : t - 1.0;
        eu[k] = std::exp(beta * u[k]);
    }
    std::vector<double> inv_tie(kItemCount + 1);
    for (std::size_t t = 0; t <= kItemCount; ++t)
        inv_tie[t] = 1.0 / static_cast<double>(t + 1);

    double sum_w = 0.0, sum_wu = 0.0, sum_wm = 0.0, sum_m = 0.0;
    std::array<int, 4> k{};  // indices for items a, b, c, d
    std::array<double, kItemCount> part{};
    for (k[0] = 0; k[0] < n; ++k[0])
        for (k[1] = 0; k[1] < n; ++k[1])
            for (k[2] = 0; k[2] < n; ++k[2])
                for (k[3] = 0; k[3] < n; ++k[3]) {
                    int max_other = k[0];
                    for (int i = 1; i < 4; ++i)
                        if (k[i] > max_other) max_other = k[i];
                    int ties_at_max = 0;
                    for (int i = 0; i < 4; ++i)
                        if (k[i] == max_other) ++ties_at_max;

                    // Non-target factors of exp(U_j) and the x-free /
                    // x-bearing split of the denominator.
                    double denom_fixed = 0.0, denom_x = 0.0;
                    for (std::size_t j = 0; j < n_opts; ++j) {
                        double p = 1.0;
                        for (std::size_t item : cd.non_x_items[j])
                            p *= eu[static_cast<std::size_t>(k[item])];
                        part[j] = p;
                        if (cd.has_x[j])
                            denom_x += p;
                        else
                            denom_fixed += p;
                    }
                    const double part_c = part[cd.chosen];
                    const bool chosen_has_x = cd.has_x[cd.chosen];

                    for (int kx = 0; kx < n; ++kx) {
                        const double ex = eu[kx];
                        const double num = chosen_has_x ? part_c * ex : part_c;
                        const double w = num / (denom_fixed + denom_x * ex);
                        sum_w += w;
                        sum_wu += w * u[kx];
                        if (kx >= max_other) {
                            const double m =
                                kx > max_other ? 1.0 : inv_tie[ties_at_max];
                            sum_wm += w * m;
                            sum_m += m;
                        }
                    }
                }

    if (!(sum_w > 0.0))
        throw std::logic_error("score_grid: zero total likelihood weight");
    const double n_pts = std::pow(static_cast<double>(n), 5.0);
    ScoreSet s{};
    s[static_cast<std::size_t>(ScoreKind::absolute)] = sum_wu / sum_w;
    s[static_cast<std::size_t>(ScoreKind::relative)] = sum_wm / sum_w;
    s[static_cast<std::size_t>(ScoreKind::likelihood)] = sum_wm / sum_m;
    s[static_cast<std::size_t>(ScoreKind::marginal)] = n_pts / sum_w;
    return s;
}

inline PreferenceScore score_grid(const DecisionStructure& d, const PriorSpec& prior,
                                  ScoreKind kind, int grid_points_per_dim,
                                  double beta = 1.0) {
    PreferenceScore s;
    s.kind = kind;
    s.value = score_grid_all(d, prior, grid_points_per_dim,
                             beta)[static_cast<std::size_t>(kind)];
    return s;
}

namespace detail {

// Jackknife standard error of a ratio estimator sum(a) / sum(b) from
// per-sample contributions.
inline double jackknife_se_ratio(const std::vector<double>& a,
                                 const std::vector<double>& b, double sum_a,
                                 double sum_b) {
    const std::size_t n = a.size();
    if (n < 2) return 0.0;
    std::vector<double> loo(n);
    double mean = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        loo[i] = (sum_a - a[i]) / (sum_b - b[i]);
        mean += loo[i];
    }
    mean /= static_cast<double>(n);
    double ss = 0.0;
    for (double v : loo) {
        const double d = v - mean;
        ss += d * d;
    }
    return std::sqrt(ss * static_cast<double>(n - 1) / static_cast<double>(n));
}

}  // namespace detail

// Self-normalized importance estimator: draw u from the prior, weight each
// sample by the Luce likelihood of the observed choice. Deterministic given
// the seed.
inline std::array<PreferenceScore, 4> score_mc_all(const DecisionStructure& d,
                                                   const PriorSpec& prior,
                                                   std::size_t n_samples,
                                                   std::uint64_t seed,
                                                   double beta = 1.0) {
    if (n_samples < 1000)
        throw ValidationError("score_mc: need at least 1000 samples");
    if (!(beta > 0.0)) throw ValidationError("score_mc: beta must be > 0");
    const auto cd = detail::compile(d);
    const std::size_t n_opts = cd.has_x.size();
    constexpr std::size_t x_idx = static_cast<std::size_t>(Item::X);

    Rng rng(seed);
    std::vector<double> w(n_samples), ux(n_samples);
    std::vector<double> ind(n_samples);  // strict "u_x maximal" indicator
    double sum_w = 0.0, sum_wu = 0.0, sum_wind = 0.0, sum_ind = 0.0;
    for (std::size_t s = 0; s < n_samples; ++s) {
        const UtilityVector u = prior.sample(rng);
        double max_su = -HUGE_VAL;
        std::array<double, kItemCount> su{};
        for (std::size_t j = 0; j < n_opts; ++j) {
            double t = cd.has_x[j] ? u[x_idx] : 0.0;
            for (std::size_t item : cd.non_x_items[j]) t += u[item];
            su[j] = beta * t;
            if (su[j] > max_su) max_su = su[j];
        }
        double denom = 0.0;
        for (std::size_t j = 0; j < n_opts; ++j) denom += std::exp(su[j] - max_su);
        w[s] = std::exp(su[cd.chosen] - max_su) / denom;

        bool strictly_max = true;
        for (std::size_t i = 0; i < kItemCount; ++i)
            if (i != x_idx && u[i] >= u[x_idx]) {
                strictly_max = false;
                break;
            }
        ind[s] = strictly_max ? 1.0 : 0.0;
        ux[s] = u[x_idx];

        sum_w += w[s];
        sum_wu += w[s] * ux[s];
        sum_wind += w[s] * ind[s];
        sum_ind += ind[s];
    }

    const auto n = static_cast<double>(n_samples);
    std::array<PreferenceScore, 4> out;
    for (std::size_t i = 0; i < 4; ++i) out[i].kind = static_cast<ScoreKind>(i);

    {
        std::vector<double> a(n_samples);
        for (std::size_t i = 0; i < n_samples; ++i) a[i] = w[i] * ux[i];
        auto& s = out[static_cast<std::size_t>(ScoreKind::absolute)];
        s.value = sum_wu / sum_w;
        s.std_error = detail::jackknife_se_ratio(a, w, sum_wu, sum_w);
    }
    {
        std::vector<double> a(n_samples);
        for (std::size_t i = 0; i < n_samples; ++i) a[i] = w[i] * ind[i];
        auto& s = out[static_cast<std::size_t>(ScoreKind::relative)];
        s.value = sum_wind / sum_w;
        s.std_error = detail::jackknife_se_ratio(a, w, sum_wind, sum_w);

        auto& l = out[static_cast<std::size_t>(ScoreKind::likelihood)];
        l.value = sum_wind / sum_ind;
        l.std_error = detail::jackknife_se_ratio(a, ind, sum_wind, sum_ind);
    }
    {
        // marginal = n / sum(w): jackknife over 1/mean(w).
        auto& s = out[static_cast<std::size_t>(ScoreKind::marginal)];
        s.value = n / sum_w;
        std::vector<double> loo(n_samples);
        double mean = 0.0;
        for (std::size_t i = 0; i < n_samples; ++i) {
            loo[i] = (n - 1.0) / (sum_w - w[i]);
            mean += loo[i];
        }
        mean /= n;
        double ss = 0.0;
        for (double v : loo) ss += (v - mean) * (v - mean);
        s.std_error = std::sqrt(ss * (n - 1.0) / n);
    }
    return out;
}

inline PreferenceScore score_mc(const DecisionStructure& d, const PriorSpec& prior,
                                ScoreKind kind, std::size_t n_samples,
                                std::uint64_t seed, double beta = 1.0) {
    return score_mc_all(d, prior, n_samples, seed,
                        beta)[static_cast<std::size_t>(kind)];
}

// Descending-by-value ranking over one score kind, midranks on ties.
inline Ranking rank_decisions(const std::vector<PreferenceScore>& scores,
                              double tie_tol = 1e-9) {
    if (scores.empty()) throw ValidationError("rank_decisions: no scores");
    for (const auto& s : scores)
        if (s.kind != scores.front().kind)
            throw ValidationError("rank_decisions: mixed score kinds");
    std::vector<double> values;
    values.reserve(scores.size());
    for (const auto& s : scores) values.push_back(s.value);
    return ranking_from_scores(values, tie_tol);
}

// Grid scores for a whole decision list, one ScoreSet per decision.
inline std::vector<ScoreSet> score_grid_catalog(
    const std::vector<DecisionStructure>& decisions, const PriorSpec& prior,
    int grid_points_per_dim, double beta = 1.0) {
    std::vector<ScoreSet> out;
    out.reserve(decisions.size());
    for (const auto& d : decisions)
        out.push_back(score_grid_all(d, prior, grid_points_per_dim, beta));
    return out;
}

// MC scores for a decision list; per-decision seeds are derived from the
// decision index so results do not depend on evaluation order.
inline std::vector<std::array<PreferenceScore, 4>> score_mc_catalog(
    const std::vector<DecisionStructure>& decisions, const PriorSpec& prior,
    std::size_t n_samples, std::uint64_t base_seed, double beta = 1.0) {
    std::vector<std::array<PreferenceScore, 4>> out;
    out.reserve(decisions.size());
    for (std::size_t i = 0; i < decisions.size(); ++i) {
        auto scores = score_mc_all(
            decisions[i], prior, n_samples,
            derive_seed(base_seed, i + 1,
                        prior.context == Context::positive ? 1 : 2),
            beta);
        for (auto& s : scores) s.decision_id = static_cast<int>(i + 1);
        out.push_back(scores);
    }
    return out;
}

}  // namespace choicelab
