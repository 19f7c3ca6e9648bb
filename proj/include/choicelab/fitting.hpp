#pragma once

// Parameter fitting for the behavioral model zoo: minimize the mean squared
// error between predicted and target choice probabilities by Nelder-Mead
// from several random starts inside a per-family bound box. The optimizer
// works in an unconstrained space mapped into the box by a logistic
// transform, so returned parameters always respect their bounds.

#include <cmath>
#include <iomanip>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "choicelab/behavioral.hpp"
#include "choicelab/nelder_mead.hpp"
#include "choicelab/rng.hpp"

namespace choicelab {

struct ParamSpec {
    const char* name;
    double ModelParams::* field;
    double lo;
    double hi;
};

struct FitOptions {
    int restarts = 20;
    int max_iters = 500;
    double diameter_tol = 1e-6;
    std::uint64_t seed = 7;
    // Elimination-threshold bounds; NaN means derive from the data range.
    double threshold_lo = std::nan("");
    double threshold_hi = std::nan("");
};

inline std::vector<ParamSpec> param_specs(ModelFamily f, double thr_lo = -25.0,
                                          double thr_hi = 25.0) {
    using MP = ModelParams;
    const ParamSpec alpha{"alpha", &MP::alpha, 0.2, 2.0};
    const ParamSpec alpha2{"alpha2", &MP::alpha2, 0.2, 2.0};
    const ParamSpec lambda{"lambda", &MP::lambda, 0.2, 5.0};
    const ParamSpec gamma_tk{"gamma", &MP::gamma, 0.3, 2.0};
    const ParamSpec gamma_ge{"gamma", &MP::gamma, 0.0, 2.0};
    const ParamSpec gamma2_ge{"gamma2", &MP::gamma2, 0.0, 2.0};
    const ParamSpec wdelta{"wdelta", &MP::wdelta, 0.1, 5.0};
    const ParamSpec wdelta2{"wdelta2", &MP::wdelta2, 0.1, 5.0};
    const ParamSpec weight{"weight", &MP::weight, 0.0, 1.0};
    const ParamSpec phi{"phi", &MP::phi, 0.01, 10.0};
    const ParamSpec lapse{"lapse", &MP::lapse, 0.0, 1.0};
    const ParamSpec tax_delta{"tax_delta", &MP::tax_delta, -1.0, 1.0};
    const ParamSpec threshold{"threshold", &MP::threshold, thr_lo, thr_hi};
    const ParamSpec elation{"elation", &MP::elation, 0.0, 3.0};
    const ParamSpec disappoint{"disappoint", &MP::disappoint, 0.0, 3.0};
    const ParamSpec regret{"regret", &MP::regret, 0.0, 2.0};

    switch (f) {
        case ModelFamily::expected_value:
            return {phi};
        case ModelFamily::expected_utility:
            return {alpha, lambda, phi};
        case ModelFamily::prospect_theory:
            return {alpha, lambda, gamma_tk, phi};
        case ModelFamily::transfer_of_attention_exchange:
            return {alpha, lambda, gamma_tk, tax_delta, phi};
        case ModelFamily::mixture_of_theories:
            return {weight, alpha,  alpha2,  gamma_ge, gamma2_ge,
                    wdelta, wdelta2, lambda, phi};
        case ModelFamily::disappointment_ev:
        case ModelFamily::disappointment_no_rescale:
            return {elation, disappoint, phi};
        case ModelFamily::disappointment_eu:
            return {alpha, lambda, elation, disappoint, phi};
        case ModelFamily::regret_ev:
            return {regret, phi};
        case ModelFamily::regret_eu:
            return {alpha, lambda, regret, phi};
        case ModelFamily::low_payoff_elimination:
        case ModelFamily::low_expected_payoff_elimination:
            return {threshold, lapse};
        case ModelFamily::better_than_average:
        case ModelFamily::equiprobable:
        case ModelFamily::probable:
        case ModelFamily::minimax:
        case ModelFamily::maximax:
        case ModelFamily::priority_heuristic:
            return {lapse};
    }
    throw ValidationError("unknown model family");
}

struct RestartSummary {
    double start_mse = 0.0;
    double final_mse = 0.0;
    bool converged = false;
};

struct FitResult {
    ModelFamily family = ModelFamily::expected_value;
    ModelParams params;
    double mse = 0.0;
    int restarts_used = 0;
    bool converged = false;
    std::vector<RestartSummary> restart_log;
    std::string error;  // set when the fit could not run
};

namespace detail {

// Box transform: x = lo + (hi - lo) * sigma(t).
inline double to_box(double t, double lo, double hi) {
    return lo + (hi - lo) / (1.0 + std::exp(-t));
}

inline double from_box(double x, double lo, double hi) {
    double f = (x - lo) / (hi - lo);
    f = std::min(std::max(f, 1e-6), 1.0 - 1e-6);
    return std::log(f / (1.0 - f));
}

}  // namespace detail

inline FitResult fit_model(ModelFamily family,
                           const std::vector<ChoiceProblem>& problems,
                           const std::vector<double>& targets,
                           const FitOptions& opt = {}) {
    if (problems.empty()) throw ValidationError("fit_model: empty dataset");
    if (problems.size() != targets.size())
        throw ValidationError("fit_model: problem/target length mismatch");
    for (double t : targets)
        if (!(t >= 0.0 && t <= 1.0))
            throw ValidationError("fit_model: target outside [0, 1]");

    std::vector<ProblemView> views;
    views.reserve(problems.size());
    double pay_lo = 0.0, pay_hi = 0.0;
    for (const auto& p : problems) {
        views.push_back(make_view(p));
        pay_lo = std::min({pay_lo, views.back().a.min_payoff,
                           views.back().b.min_payoff});
        pay_hi = std::max({pay_hi, views.back().a.max_payoff,
                           views.back().b.max_payoff});
    }
    const double thr_lo = std::isnan(opt.threshold_lo) ? pay_lo : opt.threshold_lo;
    const double thr_hi = std::isnan(opt.threshold_hi) ? pay_hi : opt.threshold_hi;
    const auto specs = param_specs(family, thr_lo, thr_hi);
    const std::size_t dim = specs.size();

    auto objective = [&](const std::vector<double>& t) {
        ModelParams mp;
        for (std::size_t i = 0; i < dim; ++i)
            mp.*(specs[i].field) = detail::to_box(t[i], specs[i].lo, specs[i].hi);
        double s = 0.0;
        for (std::size_t i = 0; i < views.size(); ++i) {
            const double d = predict_from_view(family, mp, views[i]) - targets[i];
            s += d * d;
        }
        return s / static_cast<double>(views.size());
    };

    FitResult best;
    best.family = family;
    best.mse = HUGE_VAL;
    Rng rng(derive_seed(opt.seed, static_cast<std::uint64_t>(family)));
    SimplexOptions sopt;
    sopt.max_iters = opt.max_iters;
    sopt.diameter_tol = opt.diameter_tol;

    for (int r = 0; r < opt.restarts; ++r) {
        std::vector<double> t0(dim);
        for (std::size_t i = 0; i < dim; ++i)
            t0[i] = detail::from_box(
                rng.uniform(specs[i].lo, specs[i].hi), specs[i].lo, specs[i].hi);
        RestartSummary summary;
        summary.start_mse = objective(t0);
        const auto res = nelder_mead(objective, t0, sopt);
        summary.final_mse = res.fx;
        summary.converged = res.converged;
        best.restart_log.push_back(summary);
        if (res.fx < best.mse) {
            best.mse = res.fx;
            best.converged = res.converged;
            ModelParams mp;
            for (std::size_t i = 0; i < dim; ++i)
                mp.*(specs[i].field) =
                    detail::to_box(res.x[i], specs[i].lo, specs[i].hi);
            best.params = mp;
        }
    }
    best.restarts_used = opt.restarts;
    if (!(best.mse < HUGE_VAL)) throw std::runtime_error("fit_model: all restarts diverged");
    return best;
}

// One fit per family, in the canonical (group-ordered) family order.
// Per-family failures are recorded in the row, not thrown, so the table is
// always produced.
inline std::vector<FitResult> model_comparison(
    const std::vector<ChoiceProblem>& problems,
    const std::vector<double>& targets, const FitOptions& opt = {}) {
    std::vector<FitResult> rows;
    for (ModelFamily f : all_families()) {
        FitOptions o = opt;
        o.seed = derive_seed(opt.seed, 1000 + static_cast<std::uint64_t>(f));
        try {
            rows.push_back(fit_model(f, problems, targets, o));
        } catch (const std::exception& e) {
            FitResult fail;
            fail.family = f;
            fail.mse = std::nan("");
            fail.error = e.what();
            rows.push_back(fail);
        }
    }
    return rows;
}

inline std::string params_to_string(ModelFamily f, const ModelParams& mp) {
    std::string s;
    for (const auto& spec : param_specs(f)) {
        if (!s.empty()) s += " ";
        char buf[64];
        std::snprintf(buf, sizeof buf, "%s=%.4f", spec.name, mp.*(spec.field));
        s += buf;
    }
    return s;
}

// Human-readable table in the canonical grouping.
inline void write_fit_table(const std::vector<FitResult>& rows, std::ostream& out) {
    FamilyGroup last = FamilyGroup::heuristic;
    out << "Behavioral Model                           MSE\n";
    out << "------------------------------------------------\n";
    bool first = true;
    for (const auto& r : rows) {
        const FamilyGroup g = family_group(r.family);
        if (!first && g != last) out << "------------------------------------------------\n";
        first = false;
        last = g;
        out << std::left << std::setw(40) << family_label(r.family) << " ";
        if (r.error.empty())
            out << std::fixed << std::setprecision(5) << r.mse << "\n";
        else
            out << "failed: " << r.error << "\n";
    }
}

// Machine-readable record file: family, fitted params, MSE.
inline void write_fit_records(const std::vector<FitResult>& rows,
                              std::ostream& out) {
    out << "family\tmse\tconverged\tparams\n";
    for (const auto& r : rows) {
        out << family_id(r.family) << '\t';
        if (r.error.empty())
            out << std::setprecision(10) << r.mse << '\t' << (r.converged ? 1 : 0)
                << '\t' << params_to_string(r.family, r.params) << '\n';
        else
            out << "nan\t0\terror: " << r.error << '\n';
    }
}

}  // namespace choicelab
