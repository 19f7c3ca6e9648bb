#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "choicelab/rng.hpp"
#include "choicelab/stats.hpp"

using namespace choicelab;

TEST_CASE("spearman on permutations") {
    CHECK(spearman({1, 2, 3, 4}, {1, 2, 3, 4}) == Catch::Approx(1.0));
    CHECK(spearman({1, 2, 3, 4}, {4, 3, 2, 1}) == Catch::Approx(-1.0));
    // Hand-derived: ranks equal the values, Pearson of (1,2,3,4) vs
    // (1,3,2,4) is 4/5.
    CHECK(spearman({1, 2, 3, 4}, {1, 3, 2, 4}) == Catch::Approx(0.8));
}

TEST_CASE("spearman is invariant under strictly monotone transforms") {
    Rng rng(3);
    for (int rep = 0; rep < 50; ++rep) {
        std::vector<double> x(30), y(30);
        for (std::size_t i = 0; i < x.size(); ++i) {
            x[i] = rng.uniform(-5.0, 5.0);
            y[i] = rng.uniform(-5.0, 5.0);
        }
        const double base = spearman(x, y);
        std::vector<double> tx = x;
        for (double& v : tx) v = std::exp(0.3 * v) + 2.0;
        CHECK(spearman(tx, y) == Catch::Approx(base).margin(1e-12));
    }
}

TEST_CASE("pearson examples and affine invariance") {
    std::vector<double> x{0, 1}, y{1, 0};
    CHECK(pearson(x, y) == Catch::Approx(-1.0));
    CHECK(mse(x, y) == Catch::Approx(1.0));

    Rng rng(4);
    std::vector<double> a(40), b(40);
    for (std::size_t i = 0; i < a.size(); ++i) {
        a[i] = rng.uniform(-2.0, 2.0);
        b[i] = rng.uniform(-2.0, 2.0);
    }
    const double base = pearson(a, b);
    std::vector<double> ta = a;
    for (double& v : ta) v = 3.5 * v - 11.0;
    CHECK(pearson(ta, b) == Catch::Approx(base).margin(1e-12));
}

TEST_CASE("identical vectors: r = 1, mse = 0") {
    std::vector<double> x{0.3, 0.9, 0.1, 0.5};
    CHECK(pearson(x, x) == Catch::Approx(1.0));
    CHECK(spearman(x, x) == Catch::Approx(1.0));
    CHECK(mse(x, x) == 0.0);
}

TEST_CASE("mse is zero iff vectors are equal") {
    Rng rng(5);
    std::vector<double> x(20);
    for (double& v : x) v = rng.uniform();
    CHECK(mse(x, x) == 0.0);
    std::vector<double> y = x;
    y[7] += 1e-6;
    CHECK(mse(x, y) > 0.0);
}

TEST_CASE("binary vectors: spearman equals pearson") {
    Rng rng(6);
    for (int rep = 0; rep < 200; ++rep) {
        std::vector<double> x(50), y(50);
        bool xc = true, yc = true;
        for (std::size_t i = 0; i < x.size(); ++i) {
            x[i] = rng.bernoulli(0.4) ? 1.0 : 0.0;
            y[i] = rng.bernoulli(0.6) ? 1.0 : 0.0;
            if (x[i] != x[0]) xc = false;
            if (y[i] != y[0]) yc = false;
        }
        if (xc || yc) continue;
        CHECK(std::fabs(spearman(x, y) - pearson(x, y)) < 1e-12);
    }
}

TEST_CASE("constant vectors are an explicit error") {
    std::vector<double> c{2, 2, 2, 2}, v{1, 2, 3, 4};
    CHECK_THROWS_AS(pearson(c, v), StatsError);
    CHECK_THROWS_AS(spearman(c, v), StatsError);
    CHECK_THROWS_AS(spearman(v, c), StatsError);
}

TEST_CASE("correlation matrix") {
    std::vector<double> v{1, 2, 3, 4, 5};
    std::vector<double> neg{5, 4, 3, 2, 1};
    auto m = correlation_matrix({"a", "b", "c"}, {v, v, neg});
    CHECK(m.rho[0][0] == 1.0);
    CHECK(m.rho[0][1] == Catch::Approx(1.0));
    CHECK(m.rho[0][2] == Catch::Approx(-1.0));
    CHECK(m.rho[1][2] == m.rho[2][1]);

    Rng rng(7);
    std::vector<std::vector<double>> indep(3, std::vector<double>(1000));
    for (auto& vec : indep)
        for (double& x : vec) x = rng.uniform();
    auto m2 = correlation_matrix({"x", "y", "z"}, indep);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (i != j) CHECK(std::fabs(m2.rho[i][j]) < 0.1);

    CHECK_THROWS_AS(
        correlation_matrix({"a", "b"}, {{1, 2, 3}, {1, 2}}), StatsError);
}

TEST_CASE("midranks average tied blocks") {
    auto r = midranks({10, 20, 20, 30});
    CHECK(r[0] == 1.0);
    CHECK(r[1] == 2.5);
    CHECK(r[2] == 2.5);
    CHECK(r[3] == 4.0);
}
