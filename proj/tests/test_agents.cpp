#include <catch2/catch_amalgamated.hpp>

#include <atomic>
#include <cmath>
#include <thread>

#include "choicelab/agents.hpp"
#include "choicelab/gamble.hpp"

using namespace choicelab;

namespace {

ChoiceProblem problem(Gamble a, Gamble b) {
    ChoiceProblem p;
    p.id = "t";
    p.gamble_a = std::move(a);
    p.gamble_b = std::move(b);
    return p;
}

ForwardPresentation present(const ChoiceProblem& p, std::uint64_t seed = 1) {
    PromptSpec spec;
    spec.task = Task::predict_individual;
    spec.seed = seed;
    return render_forward_prompt(p, spec);
}

// Minimal chat-completions endpoint for transport tests.
class FixtureServer {
public:
    explicit FixtureServer(bool fail_once = false, bool check_auth = false)
        : fail_once_(fail_once), check_auth_(check_auth) {
        server_.Post("/v1/chat/completions", [this](const httplib::Request& req,
                                                    httplib::Response& res) {
            ++hits_;
            if (check_auth_) {
                auto auth = req.get_header_value("Authorization");
                if (auth != "Bearer sesame") {
                    res.status = 401;
                    return;
                }
            }
            if (fail_once_ && hits_ == 1) {
                res.status = 503;
                return;
            }
            auto body = nlohmann::json::parse(req.body);
            const int n = body.value("n", 1);
            nlohmann::json reply;
            reply["choices"] = nlohmann::json::array();
            for (int i = 0; i < n; ++i)
                reply["choices"].push_back(
                    {{"message", {{"role", "assistant"}, {"content", "A"}}}});
            res.set_content(reply.dump(), "application/json");
        });
        server_.Post("/garbage", [](const httplib::Request&, httplib::Response& res) {
            res.set_content("not json at all", "application/json");
        });
        port_ = server_.bind_to_any_port("127.0.0.1");
        thread_ = std::thread([this] { server_.listen_after_bind(); });
        server_.wait_until_ready();
    }
    ~FixtureServer() {
        server_.stop();
        thread_.join();
    }
    int port() const { return port_; }
    int hits() const { return hits_; }

private:
    httplib::Server server_;
    std::thread thread_;
    int port_ = 0;
    std::atomic<int> hits_{0};
    bool fail_once_;
    bool check_auth_;
};

}  // namespace

TEST_CASE("max-EV agent answers deterministically on non-tied problems") {
    auto agent = make_synthetic_agent({SyntheticKind::max_ev, 1.0, 7});
    const auto p = problem({{6}, {1}}, {{10, 0}, {0.5, 0.5}});
    PromptSpec spec;
    spec.task = Task::predict_individual;
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        auto pres = present(p, seed);
        auto qr = agent->answer_forward(pres, spec, 20);
        REQUIRE(qr.ok());
        REQUIRE(qr.texts.size() == 20);
        // The agent answers in presentation space: A when the higher-EV
        // gamble is shown as machine A.
        const char* want = pres.swapped ? "B" : "A";
        for (const auto& t : qr.texts) CHECK(t == want);
    }
}

TEST_CASE("luce-noisy at beta 0 is a fair coin") {
    auto agent = make_synthetic_agent({SyntheticKind::luce_noisy, 0.0, 11});
    const auto p = problem({{6}, {1}}, {{10, 0}, {0.5, 0.5}});
    PromptSpec spec;
    spec.task = Task::predict_individual;
    auto qr = agent->answer_forward(present(p), spec, 10000);
    REQUIRE(qr.ok());
    int a = 0;
    for (const auto& t : qr.texts) a += t == "A";
    const double rate = a / 10000.0;
    CHECK(std::fabs(rate - 0.5) < 0.015);  // 3 sigma = 0.015
}

TEST_CASE("luce-noisy at large beta matches the max-EV agent") {
    auto noisy = make_synthetic_agent({SyntheticKind::luce_noisy, 50.0, 3});
    Rng rng(77);
    PromptSpec spec;
    spec.task = Task::predict_individual;
    int compared = 0;
    for (int i = 0; i < 100; ++i) {
        const double ev_a = rng.uniform(-5.0, 5.0);
        const double ev_b = rng.uniform(-5.0, 5.0);
        if (std::fabs(ev_a - ev_b) < 0.3) continue;
        auto p = problem({{ev_a}, {1}}, {{ev_b}, {1}});
        p.id = "fx" + std::to_string(i);
        auto pres = present(p, i);
        auto qr = noisy->answer_forward(pres, spec, 1);
        REQUIRE(qr.ok());
        const bool shown_a = qr.texts[0] == "A";
        const bool orig_a = pres.swapped ? !shown_a : shown_a;
        CHECK((orig_a ? 1.0 : 0.0) == max_ev_prediction(p));
        ++compared;
    }
    CHECK(compared > 50);
}

TEST_CASE("synthetic agents are deterministic given seed and presentation") {
    auto agent = make_synthetic_agent({SyntheticKind::uniform_random, 1.0, 5});
    const auto p = problem({{4}, {1}}, {{10, 0}, {0.5, 0.5}});
    PromptSpec spec;
    spec.task = Task::predict_individual;
    auto q1 = agent->answer_forward(present(p), spec, 50);
    auto agent2 = make_synthetic_agent({SyntheticKind::uniform_random, 1.0, 5});
    auto q2 = agent2->answer_forward(present(p), spec, 50);
    CHECK(q1.texts == q2.texts);
    auto agent3 = make_synthetic_agent({SyntheticKind::uniform_random, 1.0, 6});
    auto q3 = agent3->answer_forward(present(p), spec, 50);
    CHECK(q1.texts != q3.texts);
}

TEST_CASE("fixed-first always answers the first presented option") {
    auto agent = make_synthetic_agent({SyntheticKind::fixed_first, 1.0, 5});
    const auto p = problem({{4}, {1}}, {{10, 0}, {0.5, 0.5}});
    PromptSpec spec;
    spec.task = Task::predict_individual;
    auto qr = agent->answer_forward(present(p), spec, 5);
    for (const auto& t : qr.texts) CHECK(t == "A");

    PromptSpec ispec;
    ispec.task = Task::inverse_pairwise;
    ispec.context = Context::positive;
    ispec.seed = 8;
    auto pres = render_inverse_prompt(decision_from_letters({"x"}),
                                      decision_from_letters({"x", "a"}), ispec);
    auto qi = agent->answer_inverse(pres, ispec, 3);
    REQUIRE(qi.ok());
    for (const auto& t : qi.texts) CHECK(t == "Choice 1");
}

TEST_CASE("proportion task answers") {
    PromptSpec spec;
    spec.task = Task::predict_proportion;
    spec.n_people = 20;
    const auto tie = problem({{5}, {1}}, {{10, 0}, {0.5, 0.5}});
    auto uniform = make_synthetic_agent({SyntheticKind::uniform_random, 1.0, 5});
    auto qr = uniform->answer_forward(present(tie), spec, 1);
    REQUIRE(qr.ok());
    CHECK(qr.texts[0] == "50/50");

    auto maxev = make_synthetic_agent({SyntheticKind::max_ev, 1.0, 5});
    const auto p = problem({{6}, {1}}, {{10, 0}, {0.5, 0.5}});
    auto pres = present(p);
    auto q2 = maxev->answer_forward(pres, spec, 1);
    auto parsed = parse_proportion(q2.texts[0]);
    REQUIRE(parsed.has_value());
    CHECK(*parsed == Catch::Approx(pres.swapped ? 0.0 : 1.0));
}

TEST_CASE("score oracle compares shown decisions") {
    ScoreOracleAgent oracle("oracle", {0.1, 0.9, 0.5});
    PromptSpec spec;
    spec.task = Task::inverse_pairwise;
    spec.context = Context::positive;
    spec.seed = 4;
    auto pres = render_inverse_prompt(decision_from_letters({"x"}),
                                      decision_from_letters({"x", "a"}), spec);
    pres.shown_first_index = 1;
    pres.shown_second_index = 0;
    auto qr = oracle.answer_inverse(pres, spec, 1);
    REQUIRE(qr.ok());
    CHECK(qr.texts[0] == "Choice 1");  // 0.9 > 0.1

    pres.shown_first_index = 0;
    pres.shown_second_index = 1;
    CHECK(oracle.answer_inverse(pres, spec, 1).texts[0] == "Choice 2");

    pres.shown_first_index = 2;
    pres.shown_second_index = 2;
    auto tie = oracle.answer_inverse(pres, spec, 1);
    CHECK(parse_inverse(tie.texts[0]) == InverseVerdict::tie);

    pres.shown_first_index = -1;
    CHECK_FALSE(oracle.answer_inverse(pres, spec, 1).ok());
}

TEST_CASE("round trip: synthetic answers always parse") {
    PromptSpec spec;
    spec.task = Task::predict_individual;
    Rng rng(13);
    for (SyntheticKind kind :
         {SyntheticKind::max_ev, SyntheticKind::luce_noisy,
          SyntheticKind::uniform_random, SyntheticKind::fixed_first}) {
        auto agent = make_synthetic_agent({kind, 2.0, 9});
        for (int i = 0; i < 20; ++i) {
            auto p = problem({{rng.uniform(-5, 5)}, {1}},
                             {{rng.uniform(-5, 5), 0}, {0.5, 0.5}});
            p.id = "rt" + std::to_string(i);
            auto qr = agent->answer_forward(present(p, i), spec, 3);
            REQUIRE(qr.ok());
            for (const auto& r : parse_forward_batch(qr.texts))
                CHECK(r.status == ParseStatus::parsed);
        }
    }
}

TEST_CASE("http agent round trip against a local endpoint") {
    FixtureServer server;
    AgentConfig cfg;
    cfg.base_url = "http://127.0.0.1:" + std::to_string(server.port());
    cfg.model = "fixture";
    cfg.completions = 8;
    cfg.timeout_s = 5;
    HttpAgent agent(cfg);
    PromptSpec spec;
    spec.task = Task::predict_individual;
    const auto p = problem({{6}, {1}}, {{10, 0}, {0.5, 0.5}});
    auto qr = agent.answer_forward(present(p), spec, 8);
    REQUIRE(qr.ok());
    REQUIRE(qr.texts.size() == 8);
    CHECK(qr.texts[0] == "A");
}

TEST_CASE("http agent retries transient failures") {
    FixtureServer server(/*fail_once=*/true);
    AgentConfig cfg;
    cfg.base_url = "http://127.0.0.1:" + std::to_string(server.port());
    cfg.retries = 2;
    cfg.timeout_s = 5;
    HttpAgent agent(cfg);
    PromptSpec spec;
    auto qr = agent.answer_forward(present(problem({{6}, {1}}, {{1}, {1}})),
                                   spec, 1);
    REQUIRE(qr.ok());
    CHECK(server.hits() == 2);
}

TEST_CASE("auth failures are terminal and distinct") {
    FixtureServer server(false, /*check_auth=*/true);
    AgentConfig cfg;
    cfg.base_url = "http://127.0.0.1:" + std::to_string(server.port());
    cfg.timeout_s = 5;
    cfg.retries = 3;
    HttpAgent agent(cfg);
    PromptSpec spec;
    auto qr =
        agent.answer_forward(present(problem({{6}, {1}}, {{1}, {1}})), spec, 1);
    CHECK_FALSE(qr.ok());
    CHECK(qr.error == QueryErrorKind::auth);
    CHECK(server.hits() == 1);  // no retry on auth

    // With the right token in the environment it succeeds.
    setenv("CHOICELAB_TEST_KEY", "sesame", 1);
    cfg.auth_env = "CHOICELAB_TEST_KEY";
    HttpAgent authed(cfg);
    CHECK(authed.answer_forward(present(problem({{6}, {1}}, {{1}, {1}})), spec, 1)
              .ok());
}

TEST_CASE("malformed endpoint replies are reported distinctly") {
    FixtureServer server;
    AgentConfig cfg;
    cfg.base_url = "http://127.0.0.1:" + std::to_string(server.port());
    cfg.path = "/garbage";
    cfg.timeout_s = 5;
    HttpAgent agent(cfg);
    PromptSpec spec;
    auto qr =
        agent.answer_forward(present(problem({{6}, {1}}, {{1}, {1}})), spec, 1);
    CHECK_FALSE(qr.ok());
    CHECK(qr.error == QueryErrorKind::malformed_reply);
}

TEST_CASE("unreachable endpoints surface transport errors") {
    AgentConfig cfg;
    cfg.base_url = "http://127.0.0.1:1";  // nothing listens here
    cfg.timeout_s = 1;
    cfg.retries = 1;
    HttpAgent agent(cfg);
    PromptSpec spec;
    auto qr =
        agent.answer_forward(present(problem({{6}, {1}}, {{1}, {1}})), spec, 1);
    CHECK_FALSE(qr.ok());
    CHECK((qr.error == QueryErrorKind::transport ||
           qr.error == QueryErrorKind::timeout));
    CHECK(qr.attempts == 2);
}

TEST_CASE("chain-of-thought at temperature zero collapses to one completion") {
    FixtureServer server;
    AgentConfig cfg;
    cfg.base_url = "http://127.0.0.1:" + std::to_string(server.port());
    cfg.temperature = 0.0;
    cfg.completions = 10;
    cfg.timeout_s = 5;
    HttpAgent agent(cfg);
    PromptSpec spec;
    spec.style = Style::chain_of_thought;
    auto qr = agent.answer_forward(present(problem({{6}, {1}}, {{1}, {1}})),
                                   spec, 10);
    REQUIRE(qr.ok());
    CHECK(qr.texts.size() == 1);
}

TEST_CASE("inverse reprompting is bounded at one round") {
    // An agent whose first answer never parses and whose clarification does.
    class WafflingAgent final : public Agent {
    public:
        std::string name() const override { return "waffler"; }
        QueryResult answer_forward(const ForwardPresentation&, const PromptSpec&,
                                   int) override {
            return {};
        }
        QueryResult answer_inverse(const InversePresentation&, const PromptSpec&,
                                   int n) override {
            QueryResult r;
            r.attempts = 1;
            for (int i = 0; i < n; ++i)
                r.texts.push_back("Well, this is a hard comparison...");
            return r;
        }
        QueryResult classify_previous(const std::string&,
                                      const std::string&) override {
            ++classify_calls;
            QueryResult r;
            r.attempts = 1;
            r.texts.push_back(stubborn ? "Still thinking..." : "Choice 2");
            return r;
        }
        int classify_calls = 0;
        bool stubborn = false;
    };

    WafflingAgent agent;
    auto responses =
        parse_inverse_batch(agent, "prompt", {"hmm...", "hmm again..."});
    REQUIRE(responses.size() == 2);
    CHECK(agent.classify_calls == 2);
    for (const auto& r : responses) {
        CHECK(r.status == ParseStatus::reprompted);
        CHECK(r.verdict == "second");
    }

    agent.stubborn = true;
    agent.classify_calls = 0;
    auto failed = parse_inverse_batch(agent, "prompt", {"hmm..."});
    CHECK(agent.classify_calls == 1);  // exactly one re-prompt, then failed
    CHECK(failed[0].status == ParseStatus::failed);
}
