#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "choicelab/behavioral.hpp"
#include "choicelab/rng.hpp"

using namespace choicelab;

namespace {

Gamble g(std::vector<double> payoffs, std::vector<double> probs) {
    return Gamble{std::move(payoffs), std::move(probs)};
}

ChoiceProblem problem(Gamble a, Gamble b) {
    ChoiceProblem p;
    p.id = "t";
    p.gamble_a = std::move(a);
    p.gamble_b = std::move(b);
    return p;
}

Gamble random_gamble(Rng& rng, double scale = 20.0) {
    const std::size_t n = 1 + rng.below(3);
    Gamble out;
    std::vector<double> raw(n);
    double sum = 0.0;
    for (auto& p : raw) {
        p = rng.uniform() + 0.05;
        sum += p;
    }
    for (std::size_t i = 0; i < n; ++i) {
        out.payoffs.push_back(rng.uniform(-scale, scale));
        out.probs.push_back(raw[i] / sum);
    }
    return out;
}

}  // namespace

TEST_CASE("family grouping follows the canonical table order") {
    CHECK(kFamilyCount == 18);
    CHECK(all_families().size() == 18);
    CHECK(family_group(ModelFamily::better_than_average) == FamilyGroup::heuristic);
    CHECK(family_group(ModelFamily::priority_heuristic) == FamilyGroup::heuristic);
    CHECK(family_group(ModelFamily::disappointment_ev) ==
          FamilyGroup::counterfactual);
    CHECK(family_group(ModelFamily::regret_eu) == FamilyGroup::counterfactual);
    CHECK(family_group(ModelFamily::expected_value) == FamilyGroup::subjective_eu);
    CHECK(family_group(ModelFamily::mixture_of_theories) ==
          FamilyGroup::subjective_eu);
    for (ModelFamily f : all_families())
        CHECK(family_from_id(family_id(f)) == f);
    CHECK_THROWS_AS(family_from_id("nonsense"), ValidationError);
}

TEST_CASE("expected-value family reduces to EV") {
    ModelParams mp;
    CHECK(model_value(ModelFamily::expected_value, mp, g({10, 0}, {0.5, 0.5})) ==
          5.0);
    Rng rng(41);
    for (int i = 0; i < 100; ++i) {
        Gamble gr = random_gamble(rng);
        CHECK(model_value(ModelFamily::expected_value, mp, gr) ==
              expected_value(gr));
    }
}

TEST_CASE("power utility example") {
    ModelParams mp;
    mp.alpha = 0.5;
    CHECK(model_value(ModelFamily::expected_utility, mp, g({100}, {1})) ==
          Catch::Approx(10.0));
}

TEST_CASE("prospect theory with identity parameters collapses to EV") {
    ModelParams mp;  // alpha = lambda = gamma = 1
    Rng rng(42);
    for (int i = 0; i < 200; ++i) {
        Gamble gr = random_gamble(rng);
        CHECK(model_value(ModelFamily::prospect_theory, mp, gr) ==
              Catch::Approx(expected_value(gr)).margin(1e-12));
    }
}

TEST_CASE("TAX with no transfer, unit curvature equals EV") {
    ModelParams mp;  // tax_delta = 0, gamma = 1, alpha = 1
    Rng rng(43);
    for (int i = 0; i < 100; ++i) {
        Gamble gr = random_gamble(rng);
        CHECK(model_value(ModelFamily::transfer_of_attention_exchange, mp, gr) ==
              Catch::Approx(expected_value(gr)).margin(1e-9));
    }
}

TEST_CASE("TAX transfers attention toward worse outcomes for positive delta") {
    ModelParams mp;
    mp.tax_delta = 1.0;
    const Gamble fifty = g({100, 0}, {0.5, 0.5});
    CHECK(model_value(ModelFamily::transfer_of_attention_exchange, mp, fifty) <
          expected_value(fifty));
}

TEST_CASE("MOT degenerates to a single component at weight 0 or 1") {
    Rng rng(44);
    for (int i = 0; i < 50; ++i) {
        Gamble gr = random_gamble(rng);
        ModelParams mp;
        mp.alpha = 0.7;
        mp.gamma = 0.8;
        mp.wdelta = 1.3;
        mp.alpha2 = 1.4;
        mp.gamma2 = 0.3;
        mp.wdelta2 = 0.6;
        ModelParams c1 = mp;
        c1.weight = 1.0;
        // Component 1 alone: a PT-style value with GE weighting.
        double expect = 0.0;
        for (std::size_t k = 0; k < gr.payoffs.size(); ++k)
            expect += ge_weight(gr.probs[k], mp.gamma, mp.wdelta) *
                      power_utility(gr.payoffs[k], mp.alpha, mp.lambda);
        CHECK(model_value(ModelFamily::mixture_of_theories, c1, gr) ==
              Catch::Approx(expect).margin(1e-12));
        ModelParams c2 = mp;
        c2.weight = 0.0;
        double expect2 = 0.0;
        for (std::size_t k = 0; k < gr.payoffs.size(); ++k)
            expect2 += ge_weight(gr.probs[k], mp.gamma2, mp.wdelta2) *
                       power_utility(gr.payoffs[k], mp.alpha2, mp.lambda);
        CHECK(model_value(ModelFamily::mixture_of_theories, c2, gr) ==
              Catch::Approx(expect2).margin(1e-12));
    }
}

TEST_CASE("a flat weighting component ignores probabilities") {
    ModelParams mp;
    mp.weight = 1.0;
    mp.gamma = 0.0;  // component 1 weighting is the constant d/(d+1)
    mp.wdelta = 2.0;
    const Gamble even = g({10, 2}, {0.5, 0.5});
    const Gamble skew = g({10, 2}, {0.95, 0.05});
    CHECK(model_value(ModelFamily::mixture_of_theories, mp, even) ==
          Catch::Approx(
              model_value(ModelFamily::mixture_of_theories, mp, skew)));
}

TEST_CASE("equal values give an indifferent prediction") {
    ModelParams mp;
    const ChoiceProblem tie = problem(g({5}, {1}), g({10, 0}, {0.5, 0.5}));
    for (ModelFamily f :
         {ModelFamily::expected_value, ModelFamily::expected_utility,
          ModelFamily::prospect_theory, ModelFamily::regret_ev})
        CHECK(predict_choice_prob(f, mp, tie) == Catch::Approx(0.5));
}

TEST_CASE("minimax and maximax verdicts") {
    ModelParams mp;
    mp.lapse = 0.0;
    const ChoiceProblem p = problem(g({5}, {1}), g({10, 0}, {0.5, 0.5}));
    // Enumerated minima: 5 vs 0; maxima: 5 vs 10.
    CHECK(predict_choice_prob(ModelFamily::minimax, mp, p) == 1.0);
    CHECK(predict_choice_prob(ModelFamily::maximax, mp, p) == 0.0);
    mp.lapse = 0.4;
    CHECK(predict_choice_prob(ModelFamily::minimax, mp, p) == Catch::Approx(0.8));
    CHECK(predict_choice_prob(ModelFamily::maximax, mp, p) == Catch::Approx(0.2));
}

TEST_CASE("heuristic rule verdicts on a hand-checked fixture") {
    ModelParams mp;
    // A: 8 or 0 at even odds; B: sure 3.
    const ChoiceProblem p = problem(g({8, 0}, {0.5, 0.5}), g({3}, {1}));
    // Grand mean (8+0+3)/3 = 3.667: A has one outcome above, B none.
    CHECK(predict_choice_prob(ModelFamily::better_than_average, mp, p) == 1.0);
    // Unweighted means 4 vs 3.
    CHECK(predict_choice_prob(ModelFamily::equiprobable, mp, p) == 1.0);
    // Probable outcomes (q >= 1/n): both of A's, B's single: means 4 vs 3.
    CHECK(predict_choice_prob(ModelFamily::probable, mp, p) == 1.0);
    // Minima 0 vs 3.
    CHECK(predict_choice_prob(ModelFamily::minimax, mp, p) == 0.0);

    // Low payoff elimination at threshold 1: A's min 0 < 1 eliminates A.
    mp.threshold = 1.0;
    CHECK(predict_choice_prob(ModelFamily::low_payoff_elimination, mp, p) == 0.0);
    // Threshold -1 eliminates nothing; EVs 4 vs 3 decide.
    mp.threshold = -1.0;
    CHECK(predict_choice_prob(ModelFamily::low_payoff_elimination, mp, p) == 1.0);
    // Expected-payoff elimination at 3.5: EV(B) = 3 < 3.5.
    mp.threshold = 3.5;
    CHECK(predict_choice_prob(ModelFamily::low_expected_payoff_elimination, mp,
                              p) == 1.0);
}

TEST_CASE("priority heuristic walks its lexicographic stages") {
    ModelParams mp;
    // Stage 1: minimum gains 0 vs 3 differ by 3 >= 0.1 * max gain 8 = 0.8.
    const ChoiceProblem p1 = problem(g({8, 0}, {0.5, 0.5}), g({3}, {1}));
    CHECK(predict_choice_prob(ModelFamily::priority_heuristic, mp, p1) == 0.0);

    // Stage 2: minima equal; p(min) 0.5 vs 0.1 differ by >= 0.1; smaller
    // minimum-probability wins.
    const ChoiceProblem p2 =
        problem(g({10, 0}, {0.5, 0.5}), g({4, 0}, {0.9, 0.1}));
    CHECK(predict_choice_prob(ModelFamily::priority_heuristic, mp, p2) == 0.0);

    // Stage 3: minima equal, p(min) equal; maxima 10 vs 4 decide.
    const ChoiceProblem p3 =
        problem(g({10, 0}, {0.5, 0.5}), g({4, 0}, {0.5, 0.5}));
    CHECK(predict_choice_prob(ModelFamily::priority_heuristic, mp, p3) == 1.0);
}

TEST_CASE("disappointment value responds to spread, not just mean") {
    ModelParams mp;
    mp.elation = 0.2;
    mp.disappoint = 1.0;
    const Gamble risky = g({10, 0}, {0.5, 0.5});
    const Gamble safe = g({5}, {1});
    // Equal EV, but the risky gamble disappoints more than it elates.
    const double vr =
        model_value(ModelFamily::disappointment_ev, mp, risky);
    const double vs = model_value(ModelFamily::disappointment_ev, mp, safe);
    CHECK(vs > vr);
    // Without rescaling the same ordering holds but on a different scale.
    const double vr2 =
        model_value(ModelFamily::disappointment_no_rescale, mp, risky);
    CHECK(model_value(ModelFamily::disappointment_no_rescale, mp, safe) > vr2);
    // Degenerate gambles have nothing to be disappointed about.
    CHECK(model_value(ModelFamily::disappointment_ev, mp, safe) ==
          Catch::Approx(5.0 / (1.0 + mp.elation + mp.disappoint)));
    CHECK(model_value(ModelFamily::disappointment_no_rescale, mp, safe) == 5.0);
}

TEST_CASE("regret prediction is antisymmetric and sharpens with the coefficient") {
    ModelParams mp;
    mp.regret = 1.0;
    const ChoiceProblem p = problem(g({10, 0}, {0.5, 0.5}), g({4}, {1}));
    const double pa = predict_choice_prob(ModelFamily::regret_ev, mp, p);
    const ChoiceProblem swapped = problem(p.gamble_b, p.gamble_a);
    CHECK(pa + predict_choice_prob(ModelFamily::regret_ev, mp, swapped) ==
          Catch::Approx(1.0).margin(1e-12));
}

TEST_CASE("link antisymmetry holds for every family") {
    Rng rng(45);
    for (int i = 0; i < 40; ++i) {
        ChoiceProblem p = problem(random_gamble(rng), random_gamble(rng));
        ChoiceProblem swapped = problem(p.gamble_b, p.gamble_a);
        ModelParams mp;
        mp.alpha = rng.uniform(0.4, 1.4);
        mp.lambda = rng.uniform(0.5, 3.0);
        mp.gamma = rng.uniform(0.4, 1.2);
        mp.phi = rng.uniform(0.05, 2.0);
        mp.lapse = rng.uniform(0.0, 1.0);
        mp.threshold = rng.uniform(-10.0, 10.0);
        mp.elation = rng.uniform(0.0, 1.0);
        mp.disappoint = rng.uniform(0.0, 1.0);
        mp.regret = rng.uniform(0.0, 1.0);
        mp.weight = rng.uniform(0.0, 1.0);
        mp.gamma2 = rng.uniform(0.0, 1.5);
        mp.alpha2 = rng.uniform(0.4, 1.4);
        for (ModelFamily f : all_families()) {
            const double fwd = predict_choice_prob(f, mp, p);
            const double rev = predict_choice_prob(f, mp, swapped);
            CHECK(fwd + rev == Catch::Approx(1.0).margin(1e-9));
        }
    }
}
