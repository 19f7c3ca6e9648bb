#pragma once

// Experiment orchestration: forward runs (per-problem completions aggregated
// to P(A)), inverse runs (all 47-choose-2 pairwise judgements per sample,
// win-count aggregation, cross-sample averaging), raw-first persistence and
// report generation. Raw completion logs carry no timestamps, so replaying a
// config with synthetic agents reproduces them byte for byte.

#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "choicelab/agents.hpp"
#include "choicelab/catalog.hpp"
#include "choicelab/choices13k.hpp"
#include "choicelab/prompts.hpp"
#include "choicelab/ranking.hpp"
#include "choicelab/scoring.hpp"
#include "choicelab/stats.hpp"

namespace choicelab {

class HarnessError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class ExperimentKind {
    forward_task_1,  // predict individual decisions
    forward_task_2,  // predict the proportion
    forward_task_3,  // act as a participant
    inverse_positive,
    inverse_negative,
    fit,
    ablation,
};

inline const char* experiment_kind_name(ExperimentKind k) {
    switch (k) {
        case ExperimentKind::forward_task_1: return "forward-task-1";
        case ExperimentKind::forward_task_2: return "forward-task-2";
        case ExperimentKind::forward_task_3: return "forward-task-3";
        case ExperimentKind::inverse_positive: return "inverse-positive";
        case ExperimentKind::inverse_negative: return "inverse-negative";
        case ExperimentKind::fit: return "fit";
        case ExperimentKind::ablation: return "ablation";
    }
    return "?";
}

inline ExperimentKind experiment_kind_from_name(const std::string& s) {
    for (int i = 0; i <= static_cast<int>(ExperimentKind::ablation); ++i)
        if (s == experiment_kind_name(static_cast<ExperimentKind>(i)))
            return static_cast<ExperimentKind>(i);
    throw ValidationError("unknown experiment kind '" + s + "'");
}

inline Task task_for(ExperimentKind k) {
    switch (k) {
        case ExperimentKind::forward_task_1: return Task::predict_individual;
        case ExperimentKind::forward_task_2: return Task::predict_proportion;
        case ExperimentKind::forward_task_3: return Task::act_as_participant;
        case ExperimentKind::inverse_positive:
        case ExperimentKind::inverse_negative: return Task::inverse_pairwise;
        default:
            throw ValidationError("experiment kind has no prompt task");
    }
}

// One agent entry of an experiment config.
struct AgentSetup {
    std::string name;
    std::string type = "synthetic";  // synthetic | http | oracle
    SyntheticAgentSpec synthetic;
    AgentConfig http;
    ScoreKind oracle_kind = ScoreKind::absolute;  // grid oracle agents
    int oracle_grid = 21;
    Style style = Style::zero_shot;
    std::optional<std::string> persona;
};

struct ExperimentConfig {
    ExperimentKind kind = ExperimentKind::forward_task_1;
    std::vector<AgentSetup> agents;
    std::string dataset_path;
    int samples_positive = 43;
    int samples_negative = 42;
    std::uint64_t seed = 1;
    std::string out_dir = "out";
    int max_problems = 0;          // 0 = whole dataset
    int completions_override = 0;  // 0 = dataset participant count
    double failure_abort_fraction = 0.10;
    int grid_points = 21;
};

inline void validate_config(const ExperimentConfig& cfg) {
    if (cfg.agents.empty()) throw ValidationError("config lists no agents");
    if (cfg.samples_positive < 1 || cfg.samples_negative < 1)
        throw ValidationError("sample sizes must be at least 1");
}

inline nlohmann::json agent_setup_to_json(const AgentSetup& a) {
    nlohmann::json j;
    j["name"] = a.name;
    j["type"] = a.type;
    j["style"] = style_name(a.style);
    if (a.persona) j["persona"] = *a.persona;
    if (a.type == "synthetic") {
        j["kind"] = synthetic_kind_name(a.synthetic.kind);
        j["beta"] = a.synthetic.beta;
        j["agent_seed"] = a.synthetic.seed;
    } else if (a.type == "http") {
        j["base_url"] = a.http.base_url;
        j["path"] = a.http.path;
        j["model"] = a.http.model;
        j["temperature"] = a.http.temperature;
        j["completions"] = a.http.completions;
        j["timeout_s"] = a.http.timeout_s;
        j["retries"] = a.http.retries;
        j["auth_env"] = a.http.auth_env;
    } else if (a.type == "oracle") {
        j["score_kind"] = score_kind_name(a.oracle_kind);
        j["grid_points"] = a.oracle_grid;
    }
    return j;
}

inline AgentSetup agent_setup_from_json(const nlohmann::json& j) {
    AgentSetup a;
    a.name = j.value("name", "");
    a.type = j.value("type", "synthetic");
    a.style = style_from_name(j.value("style", "zero-shot"));
    if (j.contains("persona")) a.persona = j.at("persona").get<std::string>();
    if (a.type == "synthetic") {
        a.synthetic.kind = synthetic_kind_from_name(j.value("kind", "max-ev"));
        a.synthetic.beta = j.value("beta", 1.0);
        a.synthetic.seed = j.value("agent_seed", std::uint64_t{0});
        if (a.name.empty()) a.name = synthetic_kind_name(a.synthetic.kind);
    } else if (a.type == "http") {
        a.http.name = a.name;
        a.http.base_url = j.value("base_url", "");
        a.http.path = j.value("path", "/v1/chat/completions");
        a.http.model = j.value("model", "");
        a.http.temperature = j.value("temperature", 0.7);
        a.http.completions = j.value("completions", 1);
        a.http.timeout_s = j.value("timeout_s", 30.0);
        a.http.retries = j.value("retries", 2);
        a.http.auth_env = j.value("auth_env", "");
        if (a.name.empty()) a.name = a.http.model;
    } else if (a.type == "oracle") {
        a.oracle_kind = score_kind_from_name(j.value("score_kind", "absolute"));
        a.oracle_grid = j.value("grid_points", 21);
        if (a.name.empty())
            a.name = std::string("grid-") + score_kind_name(a.oracle_kind);
    } else {
        throw ValidationError("unknown agent type '" + a.type + "'");
    }
    return a;
}

inline nlohmann::json config_to_json(const ExperimentConfig& cfg) {
    nlohmann::json j;
    j["kind"] = experiment_kind_name(cfg.kind);
    j["agents"] = nlohmann::json::array();
    for (const auto& a : cfg.agents) j["agents"].push_back(agent_setup_to_json(a));
    j["dataset"] = cfg.dataset_path;
    j["samples"] = {{"positive", cfg.samples_positive},
                    {"negative", cfg.samples_negative}};
    j["seed"] = cfg.seed;
    j["out"] = cfg.out_dir;
    j["max_problems"] = cfg.max_problems;
    j["completions_override"] = cfg.completions_override;
    j["failure_abort_fraction"] = cfg.failure_abort_fraction;
    j["grid_points"] = cfg.grid_points;
    return j;
}

inline ExperimentConfig config_from_json(const nlohmann::json& j) {
    ExperimentConfig cfg;
    cfg.kind = experiment_kind_from_name(j.value("kind", "forward-task-1"));
    for (const auto& a : j.value("agents", nlohmann::json::array()))
        cfg.agents.push_back(agent_setup_from_json(a));
    cfg.dataset_path = j.value("dataset", "");
    if (j.contains("samples")) {
        cfg.samples_positive = j["samples"].value("positive", 43);
        cfg.samples_negative = j["samples"].value("negative", 42);
    }
    cfg.seed = j.value("seed", std::uint64_t{1});
    cfg.out_dir = j.value("out", "out");
    cfg.max_problems = j.value("max_problems", 0);
    cfg.completions_override = j.value("completions_override", 0);
    cfg.failure_abort_fraction = j.value("failure_abort_fraction", 0.10);
    cfg.grid_points = j.value("grid_points", 21);
    return cfg;
}

inline ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw HarnessError("cannot open config file: " + path);
    nlohmann::json j;
    in >> j;
    return config_from_json(j);
}

// Instantiate a runnable agent. Oracle agents carry grid scores over the
// 47-decision catalog for the given context.
inline std::unique_ptr<Agent> make_agent(const AgentSetup& setup,
                                         std::optional<Context> context) {
    if (setup.type == "synthetic") return make_synthetic_agent(setup.synthetic);
    if (setup.type == "http") {
        AgentConfig cfg = setup.http;
        cfg.name = setup.name;
        return make_http_agent(cfg);
    }
    if (setup.type == "oracle") {
        if (!context)
            throw ValidationError("oracle agents only run inverse experiments");
        PriorSpec prior{*context};
        auto grid = score_grid_catalog(catalog_47(), prior, setup.oracle_grid);
        std::vector<double> scores;
        scores.reserve(grid.size());
        for (const auto& s : grid)
            scores.push_back(s[static_cast<std::size_t>(setup.oracle_kind)]);
        return std::make_unique<ScoreOracleAgent>(setup.name, std::move(scores));
    }
    throw ValidationError("unknown agent type '" + setup.type + "'");
}

// Exclusive per-output-directory lock; one experiment at a time.
class DirLock {
public:
    explicit DirLock(const std::string& dir) : path_(dir + "/.lock") {
        std::filesystem::create_directories(dir);
        if (std::filesystem::exists(path_))
            throw HarnessError("output directory is locked by another run: " +
                               path_);
        std::ofstream lock(path_);
        lock << "locked\n";
    }
    ~DirLock() { std::filesystem::remove(path_); }
    DirLock(const DirLock&) = delete;
    DirLock& operator=(const DirLock&) = delete;

private:
    std::string path_;
};

struct ForwardItemResult {
    std::string problem_id;
    int n_queries = 0;
    int n_parsed = 0;
    int n_failed = 0;
    double p_a = std::nan("");  // derived P(choosing the problem's gamble A)
};

struct RunRecord {
    nlohmann::json config_snapshot;
    std::string agent_name;
    std::string kind;
    bool aborted = false;
    int queries_total = 0;
    int failures_total = 0;
    long long started_unix = 0;
    long long finished_unix = 0;
    // Forward experiments:
    std::vector<ForwardItemResult> items;
    // Inverse experiments:
    std::vector<std::vector<double>> sample_win_scores;
    std::vector<double> mean_win_scores;
    std::vector<double> final_rank;

    std::vector<double> derived_p_a() const {
        std::vector<double> v;
        v.reserve(items.size());
        for (const auto& it : items) v.push_back(it.p_a);
        return v;
    }
};

inline nlohmann::json record_to_json(const RunRecord& r) {
    nlohmann::json j;
    j["agent"] = r.agent_name;
    j["kind"] = r.kind;
    j["config"] = r.config_snapshot;
    j["aborted"] = r.aborted;
    j["queries_total"] = r.queries_total;
    j["failures_total"] = r.failures_total;
    j["started_unix"] = r.started_unix;
    j["finished_unix"] = r.finished_unix;
    if (!r.items.empty()) {
        j["items"] = nlohmann::json::array();
        for (const auto& it : r.items) {
            nlohmann::json ji;
            ji["id"] = it.problem_id;
            ji["n_queries"] = it.n_queries;
            ji["n_parsed"] = it.n_parsed;
            ji["n_failed"] = it.n_failed;
            if (std::isfinite(it.p_a)) ji["p_a"] = it.p_a;
            j["items"].push_back(ji);
        }
    }
    if (!r.mean_win_scores.empty()) {
        j["sample_win_scores"] = r.sample_win_scores;
        j["mean_win_scores"] = r.mean_win_scores;
        j["final_rank"] = r.final_rank;
    }
    return j;
}

inline RunRecord record_from_json(const nlohmann::json& j) {
    RunRecord r;
    r.agent_name = j.value("agent", "");
    r.kind = j.value("kind", "");
    r.config_snapshot = j.value("config", nlohmann::json::object());
    r.aborted = j.value("aborted", false);
    r.queries_total = j.value("queries_total", 0);
    r.failures_total = j.value("failures_total", 0);
    r.started_unix = j.value("started_unix", 0LL);
    r.finished_unix = j.value("finished_unix", 0LL);
    for (const auto& ji : j.value("items", nlohmann::json::array())) {
        ForwardItemResult it;
        it.problem_id = ji.value("id", "");
        it.n_queries = ji.value("n_queries", 0);
        it.n_parsed = ji.value("n_parsed", 0);
        it.n_failed = ji.value("n_failed", 0);
        it.p_a = ji.value("p_a", std::nan(""));
        r.items.push_back(it);
    }
    if (j.contains("mean_win_scores")) {
        r.sample_win_scores =
            j.value("sample_win_scores", std::vector<std::vector<double>>{});
        r.mean_win_scores = j["mean_win_scores"].get<std::vector<double>>();
        r.final_rank = j.value("final_rank", std::vector<double>{});
    }
    return r;
}

inline RunRecord load_record(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw HarnessError("cannot open run record: " + path);
    nlohmann::json j;
    in >> j;
    return record_from_json(j);
}

inline void save_record(const RunRecord& r, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw HarnessError("cannot write run record: " + path);
    out << record_to_json(r).dump(2) << "\n";
}

namespace detail {

inline std::string hash_hex(const std::string& s) {
    char buf[24];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(fnv1a(s.data(), s.size())));
    return buf;
}

class RawLog {
public:
    RawLog() = default;
    explicit RawLog(const std::string& path) {
        if (!path.empty()) {
            out_.open(path);
            if (!out_) throw HarnessError("cannot open raw log: " + path);
        }
    }
    void write(const nlohmann::json& j) {
        if (out_.is_open()) out_ << j.dump() << "\n";
    }

private:
    std::ofstream out_;
};

}  // namespace detail

// Forward experiment for one agent: per problem, issue n completions (n =
// recorded participant count for tasks 1/3, one completion for task 2),
// parse, map verdicts back through the presentation shuffle, and aggregate
// to P(A). Aborts with a partial record saved when more than the configured
// fraction of queries fail.
inline RunRecord run_forward(const ExperimentConfig& cfg, const AgentSetup& setup,
                             const Dataset& dataset,
                             const std::string& raw_log_path = "") {
    validate_config(cfg);
    const Task task = task_for(cfg.kind);
    auto agent = make_agent(setup, std::nullopt);
    detail::RawLog log(raw_log_path);

    RunRecord rec;
    rec.agent_name = setup.name.empty() ? agent->name() : setup.name;
    rec.kind = experiment_kind_name(cfg.kind);
    rec.config_snapshot = config_to_json(cfg);
    rec.started_unix = static_cast<long long>(std::time(nullptr));

    std::size_t limit = dataset.records.size();
    if (cfg.max_problems > 0)
        limit = std::min(limit, static_cast<std::size_t>(cfg.max_problems));

    for (std::size_t idx = 0; idx < limit; ++idx) {
        const auto& drec = dataset.records[idx];
        PromptSpec spec;
        spec.task = task;
        spec.style = setup.style;
        spec.persona = setup.persona;
        spec.seed = derive_seed(cfg.seed,
                                fnv1a(drec.problem.id.data(),
                                      drec.problem.id.size()));
        spec.n_people = drec.observation.n_participants;

        int n = task == Task::predict_proportion ? 1
                : cfg.completions_override > 0
                    ? cfg.completions_override
                    : std::max(1, drec.observation.n_participants);

        const auto pres = render_forward_prompt(drec.problem, spec);
        const std::string prompt_hash = detail::hash_hex(pres.text);
        auto qr = agent->answer_forward(pres, spec, n);

        ForwardItemResult item;
        item.problem_id = drec.problem.id;
        if (!qr.ok()) {
            item.n_queries = n;
            item.n_failed = n;
            nlohmann::json j;
            j["problem"] = drec.problem.id;
            j["prompt_hash"] = prompt_hash;
            j["swapped"] = pres.swapped;
            j["error"] = query_error_name(qr.error);
            j["detail"] = qr.detail;
            log.write(j);
        } else if (task == Task::predict_proportion) {
            item.n_queries = 1;
            const auto p_shown = parse_proportion(qr.texts.front());
            nlohmann::json j;
            j["problem"] = drec.problem.id;
            j["prompt_hash"] = prompt_hash;
            j["swapped"] = pres.swapped;
            j["completion"] = 0;
            j["raw"] = qr.texts.front();
            if (p_shown) {
                item.n_parsed = 1;
                item.p_a = pres.swapped ? 1.0 - *p_shown : *p_shown;
                j["status"] = "parsed";
                j["p_a"] = item.p_a;
            } else {
                item.n_failed = 1;
                j["status"] = "failed";
            }
            log.write(j);
        } else {
            item.n_queries = static_cast<int>(qr.texts.size());
            const auto parsed = parse_forward_batch(qr.texts);
            int count_a = 0;
            for (std::size_t k = 0; k < parsed.size(); ++k) {
                const auto& resp = parsed[k];
                const bool ok = resp.status == ParseStatus::parsed;
                std::string verdict_orig;
                if (ok) {
                    ++item.n_parsed;
                    const bool shown_a = resp.verdict == "A";
                    const bool orig_a = pres.swapped ? !shown_a : shown_a;
                    if (orig_a) ++count_a;
                    verdict_orig = orig_a ? "A" : "B";
                } else {
                    ++item.n_failed;
                }
                nlohmann::json j;
                j["problem"] = drec.problem.id;
                j["prompt_hash"] = prompt_hash;
                j["swapped"] = pres.swapped;
                j["completion"] = k;
                j["raw"] = resp.raw;
                j["status"] = parse_status_name(resp.status);
                if (ok) j["verdict"] = verdict_orig;
                log.write(j);
            }
            if (item.n_parsed > 0)
                item.p_a = static_cast<double>(count_a) / item.n_parsed;
        }
        rec.items.push_back(item);
        rec.queries_total += item.n_queries;
        rec.failures_total += item.n_failed;

        if (rec.queries_total >= 50 &&
            rec.failures_total >
                cfg.failure_abort_fraction * rec.queries_total) {
            rec.aborted = true;
            break;
        }
    }
    rec.finished_unix = static_cast<long long>(std::time(nullptr));
    return rec;
}

// Inverse experiment for one agent: for each sample, judge all unordered
// catalog pairs, aggregate to a win-count ranking, then average win scores
// across samples and re-rank.
inline RunRecord run_inverse(const ExperimentConfig& cfg, const AgentSetup& setup,
                             const std::string& raw_log_path = "") {
    validate_config(cfg);
    const Context context = cfg.kind == ExperimentKind::inverse_negative
                                ? Context::negative
                                : Context::positive;
    const int samples = context == Context::positive ? cfg.samples_positive
                                                     : cfg.samples_negative;
    auto agent = make_agent(setup, context);
    detail::RawLog log(raw_log_path);
    const auto& cat = catalog_47();
    const std::size_t n_dec = cat.size();

    RunRecord rec;
    rec.agent_name = setup.name.empty() ? agent->name() : setup.name;
    rec.kind = experiment_kind_name(cfg.kind);
    rec.config_snapshot = config_to_json(cfg);
    rec.started_unix = static_cast<long long>(std::time(nullptr));

    for (int s = 0; s < samples && !rec.aborted; ++s) {
        std::vector<PairwiseOutcome> outcomes;
        outcomes.reserve(n_dec * (n_dec - 1) / 2);
        for (std::size_t i = 0; i < n_dec && !rec.aborted; ++i) {
            for (std::size_t j = i + 1; j < n_dec; ++j) {
                PromptSpec spec;
                spec.task = Task::inverse_pairwise;
                spec.style = setup.style;
                spec.persona = setup.persona;
                spec.context = context;
                spec.seed = derive_seed(cfg.seed, s + 1, i + 1, j + 1);

                auto pres = render_inverse_prompt(cat[i], cat[j], spec);
                pres.shown_first_index =
                    static_cast<int>(pres.pair_swapped ? j : i);
                pres.shown_second_index =
                    static_cast<int>(pres.pair_swapped ? i : j);
                const std::string prompt_hash = detail::hash_hex(pres.text);

                ++rec.queries_total;
                auto qr = agent->answer_inverse(pres, spec, 1);
                nlohmann::json lj;
                lj["sample"] = s;
                lj["pair"] = {i, j};
                lj["prompt_hash"] = prompt_hash;
                lj["pair_swapped"] = pres.pair_swapped;
                if (!qr.ok()) {
                    ++rec.failures_total;
                    lj["error"] = query_error_name(qr.error);
                    lj["detail"] = qr.detail;
                    log.write(lj);
                } else {
                    auto parsed =
                        parse_inverse_batch(*agent, pres.text, qr.texts);
                    const auto& resp = parsed.front();
                    lj["raw"] = resp.raw;
                    lj["status"] = parse_status_name(resp.status);
                    if (resp.status == ParseStatus::failed) {
                        ++rec.failures_total;
                        log.write(lj);
                    } else {
                        // Map the shown-order verdict back to (i, j) order.
                        PairVerdict v;
                        if (resp.verdict == "tie")
                            v = PairVerdict::tie;
                        else if ((resp.verdict == "first") != pres.pair_swapped)
                            v = PairVerdict::first_stronger;
                        else
                            v = PairVerdict::second_stronger;
                        outcomes.push_back({i, j, v});
                        lj["verdict"] = resp.verdict;
                        lj["verdict_original_order"] =
                            v == PairVerdict::tie ? "tie"
                            : v == PairVerdict::first_stronger ? "first"
                                                               : "second";
                        log.write(lj);
                    }
                }
                if (rec.queries_total >= 50 &&
                    rec.failures_total >
                        cfg.failure_abort_fraction * rec.queries_total) {
                    rec.aborted = true;
                    break;
                }
            }
        }
        if (!rec.aborted)
            rec.sample_win_scores.push_back(
                aggregate_pairwise(outcomes, n_dec).value);
    }

    if (!rec.sample_win_scores.empty()) {
        rec.mean_win_scores.assign(n_dec, 0.0);
        for (const auto& ws : rec.sample_win_scores)
            for (std::size_t i = 0; i < n_dec; ++i)
                rec.mean_win_scores[i] += ws[i];
        for (auto& v : rec.mean_win_scores)
            v /= static_cast<double>(rec.sample_win_scores.size());
        rec.final_rank = ranks_descending(rec.mean_win_scores, 1e-9);
    }
    rec.finished_unix = static_cast<long long>(std::time(nullptr));
    return rec;
}

// ----- reports ------------------------------------------------------------

struct StatsRow {
    std::string name;  // column label (agent)
    CorrelationReport vs;
};

namespace detail {

inline std::string fmt4(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

inline void write_stats_block(std::ostream& out, const std::string& title,
                              const std::vector<StatsRow>& rows) {
    out << title << "\n";
    out << std::left << std::setw(22) << "";
    for (const auto& r : rows) out << std::setw(16) << r.name;
    out << "\n";
    out << std::left << std::setw(22) << "Spearman correlation";
    for (const auto& r : rows) out << std::setw(16) << fmt4(r.vs.spearman_rho);
    out << "\n";
    out << std::left << std::setw(22) << "Pearson correlation";
    for (const auto& r : rows) out << std::setw(16) << fmt4(r.vs.pearson_r);
    out << "\n";
    out << std::left << std::setw(22) << "MSE";
    for (const auto& r : rows) out << std::setw(16) << fmt4(r.vs.mse_value);
    out << "\n\n";
}

}  // namespace detail

// Align a forward record's derived vector with observations from the
// dataset; items without a derived value are dropped from both sides.
inline void aligned_vectors(const RunRecord& rec, const Dataset& ds,
                            std::vector<double>& agent_v,
                            std::vector<double>& human_v,
                            std::vector<double>& maxev_v) {
    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < ds.records.size(); ++i)
        index[ds.records[i].problem.id] = i;
    agent_v.clear();
    human_v.clear();
    maxev_v.clear();
    for (const auto& item : rec.items) {
        if (!std::isfinite(item.p_a)) continue;
        auto it = index.find(item.problem_id);
        if (it == index.end()) continue;
        const auto& drec = ds.records[it->second];
        agent_v.push_back(item.p_a);
        human_v.push_back(drec.observation.prop_a);
        maxev_v.push_back(max_ev_prediction(drec.problem));
    }
}

// Forward report: per-agent correlation blocks against human proportions and
// against the max-EV baseline (with a Humans reference column), plus the
// cross-agent correlation matrix.
inline void write_forward_report(const std::vector<RunRecord>& records,
                                 const Dataset& ds, std::ostream& out) {
    std::vector<StatsRow> vs_human, vs_maxev;
    std::vector<std::string> names;
    std::vector<std::vector<double>> agent_vectors;

    for (const auto& rec : records) {
        std::vector<double> a, h, m;
        aligned_vectors(rec, ds, a, h, m);
        if (a.size() < 3) continue;
        vs_human.push_back({rec.agent_name, compare_vectors(a, h)});
        vs_maxev.push_back({rec.agent_name, compare_vectors(a, m)});
        names.push_back(rec.agent_name);
        agent_vectors.push_back(a);
    }
    // Humans column of the baseline table: human proportions vs max-EV.
    {
        std::vector<double> h, m;
        h.reserve(ds.records.size());
        for (const auto& drec : ds.records) {
            h.push_back(drec.observation.prop_a);
            m.push_back(max_ev_prediction(drec.problem));
        }
        if (h.size() >= 3)
            vs_maxev.push_back({"Humans", compare_vectors(h, m)});
    }

    detail::write_stats_block(out, "# Agents vs human choice proportions",
                              vs_human);
    detail::write_stats_block(out, "# Agents vs the max-EV baseline", vs_maxev);

    if (names.size() >= 2) {
        bool aligned = true;
        for (const auto& v : agent_vectors)
            if (v.size() != agent_vectors.front().size()) aligned = false;
        if (aligned) {
            auto m = correlation_matrix(names, agent_vectors);
            out << "# Cross-agent Spearman matrix\n";
            out << std::left << std::setw(22) << "";
            for (const auto& n : m.names) out << std::setw(16) << n;
            out << "\n";
            for (std::size_t i = 0; i < m.names.size(); ++i) {
                out << std::left << std::setw(22) << m.names[i];
                for (std::size_t j = 0; j < m.names.size(); ++j)
                    out << std::setw(16) << detail::fmt4(m.rho[i][j]);
                out << "\n";
            }
            out << "\n";
        }
    }
}

// Inverse report: Spearman of each agent's ranking against the four
// rational-score rankings (grid) and, when available, a human ranking.
inline void write_inverse_report(
    const std::vector<RunRecord>& records, Context context, int grid_points,
    const std::optional<std::vector<double>>& human_ranks, std::ostream& out) {
    PriorSpec prior{context};
    const auto grid = score_grid_catalog(catalog_47(), prior, grid_points);

    out << "# Inverse rankings, " << context_name(context) << " context\n";
    out << std::left << std::setw(22) << "compared with";
    for (const auto& r : records) out << std::setw(18) << r.agent_name;
    out << "\n";

    auto emit_row = [&](const std::string& label,
                        const std::vector<double>& baseline_rank) {
        out << std::left << std::setw(22) << label;
        for (const auto& rec : records) {
            if (rec.final_rank.size() != baseline_rank.size()) {
                out << std::setw(18) << "-";
                continue;
            }
            out << std::setw(18)
                << detail::fmt4(spearman(rec.final_rank, baseline_rank));
        }
        out << "\n";
    };

    if (human_ranks) emit_row("humans", *human_ranks);
    for (ScoreKind kind : {ScoreKind::absolute, ScoreKind::relative,
                           ScoreKind::likelihood, ScoreKind::marginal}) {
        std::vector<double> values;
        values.reserve(grid.size());
        for (const auto& s : grid)
            values.push_back(s[static_cast<std::size_t>(kind)]);
        // Ranks: 1 = most evidence for the target preference.
        emit_row(score_kind_name(kind), ranks_descending(values, 1e-9));
    }
    out << "Correlation coefficients with absolute value >= .3 are "
           "statistically significant at alpha = .05, and >= .47 at alpha = "
           ".001.\n\n";
}

// Jern-style human ranking file: one line per catalog decision, either
// "rank" or "id,rank" with 1 = strongest preference evidence.
inline std::vector<double> load_human_ranks(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw HarnessError("cannot open human ranking file: " + path);
    std::vector<double> ranks(catalog_47().size(), 0.0);
    std::string line;
    std::size_t seen = 0;
    while (std::getline(in, line)) {
        std::string s = line;
        if (s.empty() || s[0] == '#') continue;
        std::size_t comma = s.find(',');
        try {
            if (comma == std::string::npos) {
                if (seen >= ranks.size())
                    throw HarnessError("too many rows in " + path);
                ranks[seen++] = std::stod(s);
            } else {
                const std::size_t id = std::stoul(s.substr(0, comma));
                if (id < 1 || id > ranks.size())
                    throw HarnessError("decision id out of range in " + path);
                ranks[id - 1] = std::stod(s.substr(comma + 1));
                ++seen;
            }
        } catch (const std::invalid_argument&) {
            throw HarnessError("malformed human ranking row: " + line);
        }
    }
    if (seen != ranks.size())
        throw HarnessError("human ranking file must cover all 47 decisions");
    return ranks;
}

}  // namespace choicelab
