#pragma once

// Comparison statistics: Pearson/Spearman correlation (midrank ties),
// mean squared error, and pairwise correlation matrices.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace choicelab {

class StatsError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Average ranks (1-based); tied values share the mean of their rank block.
inline std::vector<double> midranks(const std::vector<double>& x) {
    const std::size_t n = x.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
    std::vector<double> rank(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && x[order[j + 1]] == x[order[i]]) ++j;
        const double mean_rank = 0.5 * static_cast<double>(i + j) + 1.0;
        for (std::size_t k = i; k <= j; ++k) rank[order[k]] = mean_rank;
        i = j + 1;
    }
    return rank;
}

inline double pearson(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size()) throw StatsError("pearson: length mismatch");
    const std::size_t n = x.size();
    if (n < 2) throw StatsError("pearson: need at least 2 points");
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0 || syy == 0.0)
        throw StatsError("pearson: correlation undefined for a constant vector");
    return sxy / std::sqrt(sxx * syy);
}

// Pearson correlation of midrank-transformed vectors.
inline double spearman(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size()) throw StatsError("spearman: length mismatch");
    if (x.size() < 3) throw StatsError("spearman: need at least 3 points");
    try {
        return pearson(midranks(x), midranks(y));
    } catch (const StatsError&) {
        throw StatsError("spearman: correlation undefined for a constant vector");
    }
}

inline double mse(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size()) throw StatsError("mse: length mismatch");
    if (x.empty()) throw StatsError("mse: empty input");
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double d = x[i] - y[i];
        s += d * d;
    }
    return s / static_cast<double>(x.size());
}

struct CorrelationReport {
    double spearman_rho = 0.0;
    double pearson_r = 0.0;
    double mse_value = 0.0;
    std::size_t n = 0;
};

inline CorrelationReport compare_vectors(const std::vector<double>& x,
                                         const std::vector<double>& y) {
    CorrelationReport r;
    r.spearman_rho = spearman(x, y);
    r.pearson_r = pearson(x, y);
    r.mse_value = mse(x, y);
    r.n = x.size();
    return r;
}

struct CorrelationMatrix {
    std::vector<std::string> names;
    std::vector<std::vector<double>> rho;  // symmetric, diagonal 1
};

inline CorrelationMatrix correlation_matrix(
    const std::vector<std::string>& names,
    const std::vector<std::vector<double>>& vectors, bool use_pearson = false) {
    if (names.size() != vectors.size())
        throw StatsError("correlation_matrix: name/vector count mismatch");
    const std::size_t m = vectors.size();
    for (const auto& v : vectors)
        if (v.size() != vectors.front().size())
            throw StatsError("correlation_matrix: vector length mismatch");
    CorrelationMatrix out;
    out.names = names;
    out.rho.assign(m, std::vector<double>(m, 1.0));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) {
            const double c = use_pearson ? pearson(vectors[i], vectors[j])
                                         : spearman(vectors[i], vectors[j]);
            out.rho[i][j] = c;
            out.rho[j][i] = c;
        }
    return out;
}

}  // namespace choicelab
