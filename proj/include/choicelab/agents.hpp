#pragma once

// Uniform agent abstraction: remote chat-completion endpoints and synthetic
// reference agents answer the same presentations and flow through the same
// parsers, so the whole harness can run offline.

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <httplib.h>
#include <json.hpp>

#include "choicelab/gamble.hpp"
#include "choicelab/parsing.hpp"
#include "choicelab/prompts.hpp"
#include "choicelab/rng.hpp"

namespace choicelab {

struct AgentConfig {
    std::string name = "llm";
    std::string base_url;  // e.g. http://localhost:8080
    std::string path = "/v1/chat/completions";
    std::string model;
    double temperature = 0.7;
    int completions = 1;
    double timeout_s = 30.0;
    int retries = 2;
    std::string auth_env;  // name of the env var holding the bearer token
};

enum class QueryErrorKind {
    none,
    timeout,
    auth,
    http_status,
    malformed_reply,
    transport,
};

inline const char* query_error_name(QueryErrorKind k) {
    switch (k) {
        case QueryErrorKind::none: return "none";
        case QueryErrorKind::timeout: return "timeout";
        case QueryErrorKind::auth: return "auth";
        case QueryErrorKind::http_status: return "http-status";
        case QueryErrorKind::malformed_reply: return "malformed-reply";
        case QueryErrorKind::transport: return "transport";
    }
    return "?";
}

struct QueryResult {
    std::vector<std::string> texts;
    QueryErrorKind error = QueryErrorKind::none;
    std::string detail;
    int attempts = 0;

    bool ok() const { return error == QueryErrorKind::none; }
};

using ChatMessage = std::pair<std::string, std::string>;  // role, content

// POST a chat-completion request; retries transient failures (connection
// errors, 5xx) up to the budget. Auth and malformed replies are terminal and
// reported distinctly.
inline QueryResult http_chat_completions(const AgentConfig& cfg,
                                         const std::vector<ChatMessage>& messages,
                                         int n, double temperature) {
    QueryResult out;
    nlohmann::json body;
    body["model"] = cfg.model;
    body["temperature"] = temperature;
    body["n"] = n;
    body["messages"] = nlohmann::json::array();
    for (const auto& [role, content] : messages)
        body["messages"].push_back({{"role", role}, {"content", content}});
    const std::string payload = body.dump();

    std::string token;
    if (!cfg.auth_env.empty()) {
        const char* v = std::getenv(cfg.auth_env.c_str());
        if (v) token = v;
    }

    for (int attempt = 0; attempt <= cfg.retries; ++attempt) {
        out.attempts = attempt + 1;
        httplib::Client client(cfg.base_url);
        client.set_connection_timeout(std::chrono::milliseconds(
            static_cast<int>(cfg.timeout_s * 1000)));
        client.set_read_timeout(
            std::chrono::milliseconds(static_cast<int>(cfg.timeout_s * 1000)));
        httplib::Headers headers;
        if (!token.empty()) headers.emplace("Authorization", "Bearer " + token);

        auto res = client.Post(cfg.path, headers, payload, "application/json");
        if (!res) {
            const auto err = res.error();
            out.error = (err == httplib::Error::ConnectionTimeout ||
                         err == httplib::Error::Read)
                            ? QueryErrorKind::timeout
                            : QueryErrorKind::transport;
            out.detail = httplib::to_string(err);
            continue;  // transient: retry
        }
        if (res->status == 401 || res->status == 403) {
            out.error = QueryErrorKind::auth;
            out.detail = "HTTP " + std::to_string(res->status);
            return out;
        }
        if (res->status >= 500) {
            out.error = QueryErrorKind::http_status;
            out.detail = "HTTP " + std::to_string(res->status);
            continue;  // transient: retry
        }
        if (res->status != 200) {
            out.error = QueryErrorKind::http_status;
            out.detail = "HTTP " + std::to_string(res->status);
            return out;
        }
        try {
            auto j = nlohmann::json::parse(res->body);
            out.texts.clear();
            for (const auto& choice : j.at("choices"))
                out.texts.push_back(
                    choice.at("message").at("content").get<std::string>());
            if (out.texts.empty()) throw std::runtime_error("no choices");
            out.error = QueryErrorKind::none;
            out.detail.clear();
            return out;
        } catch (const std::exception& e) {
            out.error = QueryErrorKind::malformed_reply;
            out.detail = e.what();
            return out;
        }
    }
    return out;
}

enum class SyntheticKind { max_ev, luce_noisy, uniform_random, fixed_first };

inline const char* synthetic_kind_name(SyntheticKind k) {
    switch (k) {
        case SyntheticKind::max_ev: return "max-ev";
        case SyntheticKind::luce_noisy: return "luce-noisy";
        case SyntheticKind::uniform_random: return "uniform-random";
        case SyntheticKind::fixed_first: return "fixed-first";
    }
    return "?";
}

inline SyntheticKind synthetic_kind_from_name(const std::string& s) {
    if (s == "max-ev") return SyntheticKind::max_ev;
    if (s == "luce-noisy") return SyntheticKind::luce_noisy;
    if (s == "uniform-random") return SyntheticKind::uniform_random;
    if (s == "fixed-first") return SyntheticKind::fixed_first;
    throw ValidationError("unknown synthetic agent kind '" + s + "'");
}

struct SyntheticAgentSpec {
    SyntheticKind kind = SyntheticKind::max_ev;
    double beta = 1.0;  // luce-noisy sensitivity; beta = 0 is uniform
    std::uint64_t seed = 0;
};

// Agents answer already-rendered presentations; remote agents see only the
// text, synthetic agents read the structured (post-shuffle) view and emit
// text for the same parsers.
class Agent {
public:
    virtual ~Agent() = default;
    virtual std::string name() const = 0;
    virtual QueryResult answer_forward(const ForwardPresentation& pres,
                                       const PromptSpec& spec, int n) = 0;
    virtual QueryResult answer_inverse(const InversePresentation& pres,
                                       const PromptSpec& spec, int n) = 0;
    // One-shot clarification for unparseable inverse output.
    virtual QueryResult classify_previous(const std::string& prompt,
                                          const std::string& previous_raw) {
        (void)prompt;
        (void)previous_raw;
        QueryResult r;
        r.error = QueryErrorKind::transport;
        r.detail = "agent does not support re-prompting";
        return r;
    }
};

class HttpAgent final : public Agent {
public:
    explicit HttpAgent(AgentConfig cfg) : cfg_(std::move(cfg)) {}

    std::string name() const override { return cfg_.name; }

    QueryResult answer_forward(const ForwardPresentation& pres,
                               const PromptSpec& spec, int n) override {
        return query(pres.text, spec, n);
    }

    QueryResult answer_inverse(const InversePresentation& pres,
                               const PromptSpec& spec, int n) override {
        return query(pres.text, spec, n);
    }

    QueryResult classify_previous(const std::string& prompt,
                                  const std::string& previous_raw) override {
        return http_chat_completions(cfg_,
                                     {{"user", prompt},
                                      {"assistant", previous_raw},
                                      {"user", reprompt_text()}},
                                     1, cfg_.temperature);
    }

    const AgentConfig& config() const { return cfg_; }

private:
    QueryResult query(const std::string& prompt, const PromptSpec& spec, int n) {
        // Deterministic chain-of-thought runs need only one completion.
        if (spec.style == Style::chain_of_thought && cfg_.temperature == 0.0)
            n = 1;
        QueryResult merged;
        while (static_cast<int>(merged.texts.size()) < n) {
            const int want = std::min(
                n - static_cast<int>(merged.texts.size()), cfg_.completions);
            auto r = http_chat_completions(cfg_, {{"user", prompt}},
                                           std::max(want, 1), cfg_.temperature);
            merged.attempts += r.attempts;
            if (!r.ok()) {
                merged.error = r.error;
                merged.detail = r.detail;
                return merged;
            }
            for (auto& t : r.texts) merged.texts.push_back(std::move(t));
        }
        if (static_cast<int>(merged.texts.size()) > n) merged.texts.resize(n);
        return merged;
    }

    AgentConfig cfg_;
};

class SyntheticAgentImpl final : public Agent {
public:
    explicit SyntheticAgentImpl(SyntheticAgentSpec spec) : spec_(spec) {}

    std::string name() const override {
        std::string n = synthetic_kind_name(spec_.kind);
        if (spec_.kind == SyntheticKind::luce_noisy)
            n += "(beta=" + std::to_string(spec_.beta) + ")";
        return n;
    }

    QueryResult answer_forward(const ForwardPresentation& pres,
                               const PromptSpec& spec, int n) override {
        // Content-addressed stream: identical presentations replay exactly.
        Rng rng(derive_seed(spec_.seed, fnv1a(pres.text.data(), pres.text.size())));
        QueryResult out;
        out.attempts = 1;
        const double ev_a = expected_value(pres.machine_a);
        const double ev_b = expected_value(pres.machine_b);
        const double p_shown_a = choice_prob(ev_a, ev_b, rng);
        if (spec.task == Task::predict_proportion) {
            out.texts.push_back(proportion_text(p_shown_a));
            return out;
        }
        for (int i = 0; i < n; ++i) {
            const bool a = spec_.kind == SyntheticKind::max_ev
                               ? deterministic_or_coin(ev_a, ev_b, rng)
                               : rng.bernoulli(p_shown_a);
            out.texts.push_back(a ? "A" : "B");
        }
        return out;
    }

    QueryResult answer_inverse(const InversePresentation& pres, const PromptSpec&,
                               int n) override {
        QueryResult out;
        out.attempts = 1;
        switch (spec_.kind) {
            case SyntheticKind::fixed_first:
                for (int i = 0; i < n; ++i) out.texts.push_back("Choice 1");
                return out;
            case SyntheticKind::uniform_random: {
                Rng rng(derive_seed(spec_.seed,
                                    fnv1a(pres.text.data(), pres.text.size())));
                for (int i = 0; i < n; ++i)
                    out.texts.push_back(rng.bernoulli(0.5) ? "Choice 1"
                                                           : "Choice 2");
                return out;
            }
            default:
                out.error = QueryErrorKind::transport;
                out.detail = std::string(synthetic_kind_name(spec_.kind)) +
                             " answers forward tasks only";
                return out;
        }
    }

private:
    double choice_prob(double ev_a, double ev_b, Rng&) const {
        switch (spec_.kind) {
            case SyntheticKind::max_ev:
                return ev_a > ev_b ? 1.0 : (ev_a < ev_b ? 0.0 : 0.5);
            case SyntheticKind::luce_noisy:
                return 1.0 / (1.0 + std::exp(-spec_.beta * (ev_a - ev_b)));
            case SyntheticKind::uniform_random:
                return 0.5;
            case SyntheticKind::fixed_first:
                return 1.0;
        }
        return 0.5;
    }

    bool deterministic_or_coin(double ev_a, double ev_b, Rng& rng) const {
        if (ev_a > ev_b) return true;
        if (ev_a < ev_b) return false;
        return rng.bernoulli(0.5);
    }

    static std::string proportion_text(double p_shown_a) {
        if (p_shown_a == 0.5) return "50/50";
        char buf[96];
        std::snprintf(buf, sizeof buf,
                      "{\"Machine A\": %.6f, \"Machine B\": %.6f}",
                      100.0 * p_shown_a, 100.0 * (1.0 - p_shown_a));
        return buf;
    }

    SyntheticAgentSpec spec_;
};

// Answers inverse pairs by comparing precomputed per-decision scores;
// forward tasks are unsupported. Scores are indexed by catalog position.
class ScoreOracleAgent final : public Agent {
public:
    ScoreOracleAgent(std::string name, std::vector<double> scores,
                     double tie_tol = 1e-12)
        : name_(std::move(name)), scores_(std::move(scores)), tie_tol_(tie_tol) {}

    std::string name() const override { return name_; }

    QueryResult answer_forward(const ForwardPresentation&, const PromptSpec&,
                               int) override {
        QueryResult r;
        r.error = QueryErrorKind::transport;
        r.detail = "score oracle answers inverse pairs only";
        return r;
    }

    QueryResult answer_inverse(const InversePresentation& pres,
                               const PromptSpec&, int n) override {
        QueryResult out;
        out.attempts = 1;
        if (pres.shown_first_index < 0 ||
            pres.shown_first_index >= static_cast<int>(scores_.size()) ||
            pres.shown_second_index < 0 ||
            pres.shown_second_index >= static_cast<int>(scores_.size())) {
            out.error = QueryErrorKind::transport;
            out.detail = "presentation lacks decision indices";
            return out;
        }
        const double s1 = scores_[pres.shown_first_index];
        const double s2 = scores_[pres.shown_second_index];
        std::string answer;
        if (std::fabs(s1 - s2) <= tie_tol_)
            answer = "They are equally informative (tie).";
        else
            answer = s1 > s2 ? "Choice 1" : "Choice 2";
        for (int i = 0; i < n; ++i) out.texts.push_back(answer);
        return out;
    }

private:
    std::string name_;
    std::vector<double> scores_;
    double tie_tol_;
};

enum class ParseStatus { parsed, reprompted, failed };

inline const char* parse_status_name(ParseStatus s) {
    switch (s) {
        case ParseStatus::parsed: return "parsed";
        case ParseStatus::reprompted: return "reprompted";
        case ParseStatus::failed: return "failed";
    }
    return "?";
}

struct AgentResponse {
    std::string raw;
    ParseStatus status = ParseStatus::failed;
    std::string verdict;  // "A"/"B", "first"/"second"/"tie", or a proportion
};

// Parse a batch of forward completions.
inline std::vector<AgentResponse> parse_forward_batch(
    const std::vector<std::string>& texts) {
    std::vector<AgentResponse> out;
    out.reserve(texts.size());
    for (const auto& t : texts) {
        AgentResponse r;
        r.raw = t;
        switch (parse_forward(t)) {
            case ForwardVerdict::a:
                r.status = ParseStatus::parsed;
                r.verdict = "A";
                break;
            case ForwardVerdict::b:
                r.status = ParseStatus::parsed;
                r.verdict = "B";
                break;
            case ForwardVerdict::failed:
                r.status = ParseStatus::failed;
                break;
        }
        out.push_back(std::move(r));
    }
    return out;
}

// Parse inverse completions with at most one re-prompt per response.
inline std::vector<AgentResponse> parse_inverse_batch(
    Agent& agent, const std::string& prompt,
    const std::vector<std::string>& texts) {
    std::vector<AgentResponse> out;
    out.reserve(texts.size());
    for (const auto& t : texts) {
        AgentResponse r;
        r.raw = t;
        InverseVerdict v = parse_inverse(t);
        if (v == InverseVerdict::needs_reprompt) {
            auto follow = agent.classify_previous(prompt, t);
            if (follow.ok() && !follow.texts.empty()) {
                r.raw += "\n[reprompt] " + follow.texts.front();
                v = parse_inverse(follow.texts.front());
            }
            if (v == InverseVerdict::needs_reprompt) {
                r.status = ParseStatus::failed;
                out.push_back(std::move(r));
                continue;
            }
            r.status = ParseStatus::reprompted;
        } else {
            r.status = ParseStatus::parsed;
        }
        r.verdict = v == InverseVerdict::first    ? "first"
                    : v == InverseVerdict::second ? "second"
                                                  : "tie";
        out.push_back(std::move(r));
    }
    return out;
}

inline std::unique_ptr<Agent> make_synthetic_agent(const SyntheticAgentSpec& s) {
    return std::make_unique<SyntheticAgentImpl>(s);
}

inline std::unique_ptr<Agent> make_http_agent(const AgentConfig& cfg) {
    return std::make_unique<HttpAgent>(cfg);
}

}  // namespace choicelab
