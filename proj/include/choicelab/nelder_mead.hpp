#pragma once

// Derivative-free Nelder-Mead simplex descent. Objectives here are
// non-smooth (heuristic choice rules step at threshold crossings), so no
// gradient method applies.

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

namespace choicelab {

struct SimplexOptions {
    int max_iters = 500;
    double diameter_tol = 1e-6;
    double initial_step = 0.7;
};

struct SimplexResult {
    std::vector<double> x;
    double fx = 0.0;
    int iters = 0;
    bool converged = false;
};

inline SimplexResult nelder_mead(
    const std::function<double(const std::vector<double>&)>& f,
    const std::vector<double>& x0, const SimplexOptions& opt = {}) {
    const std::size_t dim = x0.size();
    const double alpha = 1.0, gamma = 2.0, rho = 0.5, sigma = 0.5;

    std::vector<std::vector<double>> verts(dim + 1, x0);
    for (std::size_t i = 0; i < dim; ++i) verts[i + 1][i] += opt.initial_step;
    std::vector<double> fv(dim + 1);
    for (std::size_t i = 0; i <= dim; ++i) fv[i] = f(verts[i]);

    SimplexResult res;
    auto diameter = [&] {
        double d = 0.0;
        for (std::size_t i = 0; i < dim; ++i) {
            double lo = verts[0][i], hi = verts[0][i];
            for (std::size_t v = 1; v <= dim; ++v) {
                lo = std::min(lo, verts[v][i]);
                hi = std::max(hi, verts[v][i]);
            }
            d = std::max(d, hi - lo);
        }
        return d;
    };

    int iter = 0;
    for (; iter < opt.max_iters; ++iter) {
        std::vector<std::size_t> order(dim + 1);
        for (std::size_t i = 0; i <= dim; ++i) order[i] = i;
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
        {
            std::vector<std::vector<double>> vs(dim + 1);
            std::vector<double> fs(dim + 1);
            for (std::size_t i = 0; i <= dim; ++i) {
                vs[i] = verts[order[i]];
                fs[i] = fv[order[i]];
            }
            verts.swap(vs);
            fv.swap(fs);
        }
        if (diameter() < opt.diameter_tol) {
            res.converged = true;
            break;
        }

        std::vector<double> centroid(dim, 0.0);
        for (std::size_t v = 0; v < dim; ++v)
            for (std::size_t i = 0; i < dim; ++i) centroid[i] += verts[v][i];
        for (double& c : centroid) c /= static_cast<double>(dim);

        auto blend = [&](double t) {
            std::vector<double> p(dim);
            for (std::size_t i = 0; i < dim; ++i)
                p[i] = centroid[i] + t * (verts[dim][i] - centroid[i]);
            return p;
        };

        auto reflected = blend(-alpha);
        const double fr = f(reflected);
        if (fr < fv[0]) {
            auto expanded = blend(-alpha * gamma);
            const double fe = f(expanded);
            if (fe < fr) {
                verts[dim] = std::move(expanded);
                fv[dim] = fe;
            } else {
                verts[dim] = std::move(reflected);
                fv[dim] = fr;
            }
            continue;
        }
        if (fr < fv[dim - 1]) {
            verts[dim] = std::move(reflected);
            fv[dim] = fr;
            continue;
        }
        auto contracted = blend(fr < fv[dim] ? -alpha * rho : rho);
        const double fc = f(contracted);
        if (fc < std::min(fr, fv[dim])) {
            verts[dim] = std::move(contracted);
            fv[dim] = fc;
            continue;
        }
        // Shrink toward the best vertex.
        for (std::size_t v = 1; v <= dim; ++v) {
            for (std::size_t i = 0; i < dim; ++i)
                verts[v][i] = verts[0][i] + sigma * (verts[v][i] - verts[0][i]);
            fv[v] = f(verts[v]);
        }
    }

    std::size_t best = 0;
    for (std::size_t i = 1; i <= dim; ++i)
        if (fv[i] < fv[best]) best = i;
    res.x = verts[best];
    res.fx = fv[best];
    res.iters = iter;
    return res;
}

}  // namespace choicelab
