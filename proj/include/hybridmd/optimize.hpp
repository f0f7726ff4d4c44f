// This code is part of hybridmd.
//
// Licensed under the Apache License, Version 2.0. You may obtain a copy
// of this license at http://www.apache.org/licenses/LICENSE-2.0.

#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "hybridmd/errors.hpp"
#include "hybridmd/rng.hpp"

namespace hybridmd {

using CostFunction = std::function<double(const std::vector<double>&)>;

struct MinimizeResult {
    std::vector<double> point;
    double value = 0.0;
    std::vector<double> trace; // best value seen after each iteration
    int evaluations = 0;
};

/// Derivative-free Nelder-Mead simplex descent with the standard
/// reflection/expansion/contraction/shrink coefficients. Stops when the
/// cost spread across the simplex drops below `tolerance` or the
/// iteration budget runs out.
inline MinimizeResult nelder_mead(const CostFunction& f, std::vector<double> x0,
                                  int max_iterations, double tolerance,
                                  double initial_step = 0.5) {
    if (x0.empty()) throw InvalidOperationError("nelder_mead: empty start point");
    if (max_iterations < 1) throw ConfigError("nelder_mead: iteration budget must be positive");

    const std::size_t n = x0.size();
    MinimizeResult res;

    std::vector<std::vector<double>> simplex(n + 1, x0);
    for (std::size_t i = 0; i < n; ++i) simplex[i + 1][i] += initial_step;
    std::vector<double> fx(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        fx[i] = f(simplex[i]);
        ++res.evaluations;
    }

    auto order = [&] {
        std::vector<std::size_t> idx(n + 1);
        for (std::size_t i = 0; i <= n; ++i) idx[i] = i;
        std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return fx[a] < fx[b]; });
        std::vector<std::vector<double>> s2(n + 1);
        std::vector<double> f2(n + 1);
        for (std::size_t i = 0; i <= n; ++i) {
            s2[i] = simplex[idx[i]];
            f2[i] = fx[idx[i]];
        }
        simplex.swap(s2);
        fx.swap(f2);
    };
    order();

    for (int it = 0; it < max_iterations; ++it) {
        if (fx[n] - fx[0] < tolerance) break;

        std::vector<double> centroid(n, 0.0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) centroid[j] += simplex[i][j] / static_cast<double>(n);

        auto blend = [&](double coeff) {
            std::vector<double> p(n);
            for (std::size_t j = 0; j < n; ++j)
                p[j] = centroid[j] + coeff * (centroid[j] - simplex[n][j]);
            return p;
        };

        const std::vector<double> reflected = blend(1.0);
        const double fr = f(reflected);
        ++res.evaluations;

        if (fr < fx[0]) {
            const std::vector<double> expanded = blend(2.0);
            const double fe = f(expanded);
            ++res.evaluations;
            if (fe < fr) {
                simplex[n] = expanded;
                fx[n] = fe;
            } else {
                simplex[n] = reflected;
                fx[n] = fr;
            }
        } else if (fr < fx[n - 1]) {
            simplex[n] = reflected;
            fx[n] = fr;
        } else {
            const bool outside = fr < fx[n];
            const std::vector<double> contracted = blend(outside ? 0.5 : -0.5);
            const double fc = f(contracted);
            ++res.evaluations;
            if (fc < (outside ? fr : fx[n])) {
                simplex[n] = contracted;
                fx[n] = fc;
            } else {
                for (std::size_t i = 1; i <= n; ++i) {
                    for (std::size_t j = 0; j < n; ++j)
                        simplex[i][j] = simplex[0][j] + 0.5 * (simplex[i][j] - simplex[0][j]);
                    fx[i] = f(simplex[i]);
                    ++res.evaluations;
                }
            }
        }
        order();
        res.trace.push_back(fx[0]);
    }

    res.point = simplex[0];
    res.value = fx[0];
    if (res.trace.empty() || res.trace.back() != res.value) res.trace.push_back(res.value);
    return res;
}

/// Simultaneous-perturbation stochastic approximation with the usual
/// power-law gain schedules. Meant for sampled (noisy) cost functions;
/// tracks and returns the best point evaluated.
inline MinimizeResult spsa(const CostFunction& f, std::vector<double> x0, int max_iterations,
                           Rng& rng, double a = 0.2, double c = 0.1) {
    if (x0.empty()) throw InvalidOperationError("spsa: empty start point");
    if (max_iterations < 1) throw ConfigError("spsa: iteration budget must be positive");

    const std::size_t n = x0.size();
    const double alpha = 0.602;
    const double gamma = 0.101;
    const double big_a = 0.1 * max_iterations;

    MinimizeResult res;
    std::vector<double> theta = std::move(x0);
    res.point = theta;
    res.value = f(theta);
    ++res.evaluations;

    std::vector<double> delta(n), plus(n), minus(n);
    for (int k = 0; k < max_iterations; ++k) {
        const double ck = c / std::pow(k + 1.0, gamma);
        const double ak = a / std::pow(k + 1.0 + big_a, alpha);
        for (std::size_t i = 0; i < n; ++i) {
            delta[i] = rng.rademacher();
            plus[i] = theta[i] + ck * delta[i];
            minus[i] = theta[i] - ck * delta[i];
        }
        const double fp = f(plus);
        const double fm = f(minus);
        res.evaluations += 2;
        const double diff = (fp - fm) / (2.0 * ck);
        for (std::size_t i = 0; i < n; ++i) theta[i] -= ak * diff / delta[i];

        const double ft = f(theta);
        ++res.evaluations;
        if (ft < res.value) {
            res.value = ft;
            res.point = theta;
        }
        res.trace.push_back(res.value);
    }
    if (res.trace.empty()) res.trace.push_back(res.value);
    return res;
}

} // namespace hybridmd
