// This code is part of hybridmd.
//
// Licensed under the Apache License, Version 2.0. You may obtain a copy
// of this license at http://www.apache.org/licenses/LICENSE-2.0.

#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "hybridmd/eigensolve.hpp"
#include "hybridmd/errors.hpp"
#include "hybridmd/parallel.hpp"
#include "hybridmd/pipeline.hpp"
#include "hybridmd/rng.hpp"
#include "hybridmd/swap_test.hpp"
#include "hybridmd/textio.hpp"

namespace hybridmd {

inline constexpr double kDefaultDistanceMseThreshold = 1e-2;

/// Mean squared error with compensated (Neumaier) summation.
inline double mse(const std::vector<double>& observed, const std::vector<double>& expected) {
    if (observed.empty()) throw InvalidOperationError("mse: empty input");
    if (observed.size() != expected.size())
        throw InvalidOperationError("mse: length mismatch (" + std::to_string(observed.size()) +
                                    " vs " + std::to_string(expected.size()) + ")");
    double sum = 0.0, comp = 0.0;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        const double r = observed[i] - expected[i];
        const double term = r * r;
        const double t = sum + term;
        if (std::abs(sum) >= std::abs(term))
            comp += (sum - t) + term;
        else
            comp += (term - t) + sum;
        sum = t;
    }
    return (sum + comp) / static_cast<double>(observed.size());
}

/// Verdict of one quantum-vs-classical comparison.
struct DiffReport {
    std::string task;
    int trials = 0;
    double mse = 0.0;
    double threshold = 0.0;
    bool pass = false; // pass <=> mse <= threshold
    std::vector<double> residuals;
    nlohmann::json config;
};

namespace detail {

inline DiffReport make_report(std::string task, std::vector<double> residuals, double threshold,
                              nlohmann::json config) {
    DiffReport r;
    r.task = std::move(task);
    r.trials = static_cast<int>(residuals.size());
    r.residuals = std::move(residuals);
    r.threshold = threshold;
    r.mse = hybridmd::mse(r.residuals, std::vector<double>(r.residuals.size(), 0.0));
    r.pass = r.mse <= r.threshold;
    r.config = std::move(config);
    return r;
}

inline nlohmann::json swap_config_json(const SwapTestConfig& cfg) {
    nlohmann::json j;
    j["mode"] = cfg.mode == SwapTestMode::exact ? "exact" : "sampled";
    j["shots"] = cfg.shots;
    j["mitigate"] = cfg.mitigate;
    j["noise_p01"] = cfg.noise ? cfg.noise->p01 : 0.0;
    j["noise_p10"] = cfg.noise ? cfg.noise->p10 : 0.0;
    return j;
}

} // namespace detail

inline nlohmann::json to_json(const DiffReport& r) {
    nlohmann::json j;
    j["task"] = r.task;
    j["trials"] = r.trials;
    j["mse"] = r.mse;
    j["threshold"] = r.threshold;
    j["verdict"] = r.pass ? "pass" : "fail";
    j["residuals"] = r.residuals;
    j["config"] = r.config;
    return j;
}

inline DiffReport diff_report_from_json(const nlohmann::json& j) {
    DiffReport r;
    r.task = j.at("task").get<std::string>();
    r.trials = j.at("trials").get<int>();
    r.mse = j.at("mse").get<double>();
    r.threshold = j.at("threshold").get<double>();
    r.pass = j.at("verdict").get<std::string>() == "pass";
    r.residuals = j.at("residuals").get<std::vector<double>>();
    r.config = j.at("config");
    return r;
}

/// Unit test of the distance task: random atom pairs in the unit box,
/// quantum squared distance against the classical oracle. Trial inputs and
/// shot streams derive from (seed, trial) only, so two calls with the same
/// seed but different circuit configurations see identical inputs.
inline DiffReport unit_test_distance(int trials, const SwapTestConfig& cfg,
                                     std::optional<double> threshold, std::uint64_t seed,
                                     int jobs = 1) {
    if (trials < 1) throw ConfigError("unit_test_distance: trials must be >= 1");
    std::vector<double> residuals(static_cast<std::size_t>(trials), 0.0);
    parallel_for(static_cast<std::size_t>(trials), jobs, [&](std::size_t i) {
        Rng in(derive_seed(seed, i, 1));
        std::vector<double> u{in.uniform(), in.uniform(), in.uniform()};
        std::vector<double> v{in.uniform(), in.uniform(), in.uniform()};
        double classical = 0.0;
        for (std::size_t c = 0; c < 3; ++c) classical += (u[c] - v[c]) * (u[c] - v[c]);

        SwapTestConfig trial_cfg = cfg;
        trial_cfg.seed = derive_seed(seed, i, 2);
        residuals[i] = squared_distance(u, v, trial_cfg) - classical;
    });

    nlohmann::json config = detail::swap_config_json(cfg);
    config["seed"] = seed;
    const double th = threshold.value_or(kDefaultDistanceMseThreshold);
    return detail::make_report("distance", std::move(residuals), th, std::move(config));
}

/// Unit test of the eigenvalue task: random 2+2-atom segment pairs, BPM
/// from classical distances, VQE against the Jacobi oracle. The default
/// threshold is (1e-2 * mean classical lev)^2.
inline DiffReport unit_test_eigen(int trials, int ansatz_depth, const OptimizerConfig& optimizer,
                                  std::optional<double> threshold, std::uint64_t seed,
                                  int jobs = 1) {
    if (trials < 1) throw ConfigError("unit_test_eigen: trials must be >= 1");
    std::vector<double> residuals(static_cast<std::size_t>(trials), 0.0);
    std::vector<double> classical(static_cast<std::size_t>(trials), 0.0);
    parallel_for(static_cast<std::size_t>(trials), jobs, [&](std::size_t i) {
        Rng in(derive_seed(seed, i, 1));
        Segment a, b;
        for (int k = 0; k < 2; ++k) {
            a.push_back({in.uniform(), in.uniform(), in.uniform()});
            b.push_back({in.uniform(), in.uniform(), in.uniform()});
        }
        const RealMatrix bpm = extract_bpm(a, b, classical_distance_matrix);
        classical[i] = classical_largest_eigenvalue(bpm);

        OptimizerConfig opt = optimizer;
        opt.seed = derive_seed(seed, i, 2);
        residuals[i] = quantum_largest_eigenvalue(bpm, ansatz_depth, opt).value - classical[i];
    });

    double mean_lev = 0.0;
    for (double c : classical) mean_lev += c;
    mean_lev /= static_cast<double>(trials);
    const double th = threshold.value_or((1e-2 * mean_lev) * (1e-2 * mean_lev));

    nlohmann::json config;
    config["depth"] = ansatz_depth;
    config["optimizer"] = optimizer_kind_name(optimizer.kind);
    config["restarts"] = optimizer.restarts;
    config["max_iterations"] = optimizer.max_iterations;
    config["seed"] = seed;
    config["mean_classical_lev"] = mean_lev;
    return detail::make_report("eigen", std::move(residuals), th, std::move(config));
}

/// End-to-end differential test: the configured pipeline against the
/// all-classical oracle on identical input and seeds.
inline DiffReport end_to_end_diff(const RunConfig& config, std::optional<double> threshold) {
    RunConfig oracle = config;
    oracle.task_variants = {Variant::classical, Variant::classical, Variant::classical,
                            Variant::classical, Variant::classical};
    const CvSeries base = compute_cv_series(oracle);
    const CvSeries variant = compute_cv_series(config);
    if (base.entries.size() != variant.entries.size())
        throw NumericError("end_to_end_diff: series lengths diverged");

    std::vector<double> residuals(base.entries.size(), 0.0);
    double mean_lev = 0.0;
    for (std::size_t i = 0; i < base.entries.size(); ++i) {
        residuals[i] = variant.entries[i].lev - base.entries[i].lev;
        mean_lev += base.entries[i].lev;
    }
    mean_lev /= static_cast<double>(base.entries.size());
    const double th = threshold.value_or((1e-2 * mean_lev) * (1e-2 * mean_lev));

    nlohmann::json cj;
    cj["distance_variant"] = variant_name(config.task_variants[kTaskDistance]);
    cj["eigen_variant"] = variant_name(config.task_variants[kTaskEigenvalue]);
    cj["swap_mode"] = config.swap_mode == SwapTestMode::exact ? "exact" : "sampled";
    cj["shots"] = config.shots;
    cj["frames"] = base.num_frames;
    cj["pairs"] = base.num_pairs;
    cj["seed"] = config.base_seed;
    cj["mean_classical_lev"] = mean_lev;
    return detail::make_report("end_to_end", std::move(residuals), th, std::move(cj));
}

// ---------------------------------------------------------------------------
// Hyperparameter sweep: rerun the unit tests over a configuration grid with
// matched trial seeds and keep the MSE-minimizing cell.
// ---------------------------------------------------------------------------

struct SweepGrid {
    std::string task = "distance"; // "distance" or "eigen"
    std::vector<int> depths{2};
    std::vector<OptimizerKind> optimizers{OptimizerKind::nelder_mead};
    std::vector<int> shots{8192};
    std::vector<bool> mitigate{false};
    std::optional<ReadoutNoiseModel> noise;
    SwapTestMode mode = SwapTestMode::sampled;
    OptimizerConfig optimizer_base;
    int trials = 50;
    std::uint64_t seed = 0;
    std::optional<double> threshold;
    int jobs = 1;
};

struct SweepCell {
    nlohmann::json config;
    DiffReport report;
};

struct SweepResult {
    std::vector<SweepCell> cells;
    int best_index = -1;
    std::vector<int> tied_indices; // cells sharing the minimal MSE
    std::string tie_rule = "fewer shots, then smaller depth, then mitigation off";
};

inline SweepResult sweep(const SweepGrid& grid) {
    if (grid.task != "distance" && grid.task != "eigen")
        throw ConfigError("sweep: unknown task '" + grid.task + "'");
    if (grid.depths.empty() || grid.optimizers.empty() || grid.shots.empty() ||
        grid.mitigate.empty())
        throw ConfigError("sweep: every axis needs at least one value");
    if (grid.trials < 1) throw ConfigError("sweep: trials must be >= 1");

    SweepResult result;
    for (int depth : grid.depths)
        for (OptimizerKind opt : grid.optimizers)
            for (int shots : grid.shots)
                for (bool mit : grid.mitigate) {
                    SweepCell cell;
                    cell.config = {{"depth", depth},
                                   {"optimizer", optimizer_kind_name(opt)},
                                   {"shots", shots},
                                   {"mitigate", mit}};
                    if (grid.task == "distance") {
                        SwapTestConfig cfg;
                        cfg.mode = grid.mode;
                        cfg.shots = shots;
                        cfg.noise = grid.noise;
                        cfg.mitigate = mit;
                        cell.report = unit_test_distance(grid.trials, cfg, grid.threshold,
                                                         grid.seed, grid.jobs);
                    } else {
                        OptimizerConfig cfg = grid.optimizer_base;
                        cfg.kind = opt;
                        cell.report = unit_test_eigen(grid.trials, depth, cfg, grid.threshold,
                                                      grid.seed, grid.jobs);
                    }
                    result.cells.push_back(std::move(cell));
                }

    auto better = [&](int lhs, int rhs) {
        const SweepCell& a = result.cells[static_cast<std::size_t>(lhs)];
        const SweepCell& b = result.cells[static_cast<std::size_t>(rhs)];
        if (a.report.mse != b.report.mse) return a.report.mse < b.report.mse;
        if (a.config["shots"] != b.config["shots"])
            return a.config["shots"].get<int>() < b.config["shots"].get<int>();
        if (a.config["depth"] != b.config["depth"])
            return a.config["depth"].get<int>() < b.config["depth"].get<int>();
        if (a.config["mitigate"] != b.config["mitigate"])
            return !a.config["mitigate"].get<bool>();
        return lhs < rhs;
    };

    int best = 0;
    for (int i = 1; i < static_cast<int>(result.cells.size()); ++i)
        if (better(i, best)) best = i;
    result.best_index = best;
    const double best_mse = result.cells[static_cast<std::size_t>(best)].report.mse;
    for (int i = 0; i < static_cast<int>(result.cells.size()); ++i)
        if (result.cells[static_cast<std::size_t>(i)].report.mse == best_mse)
            result.tied_indices.push_back(i);
    for (const SweepCell& c : result.cells)
        if (c.report.mse < best_mse)
            throw NumericError("sweep: selected cell is not the argmin");
    return result;
}

inline nlohmann::json to_json(const SweepResult& r) {
    nlohmann::json cells = nlohmann::json::array();
    for (const SweepCell& c : r.cells)
        cells.push_back({{"config", c.config}, {"report", to_json(c.report)}});
    return {{"cells", cells},
            {"best_index", r.best_index},
            {"tied_indices", r.tied_indices},
            {"tie_rule", r.tie_rule}};
}

// ---------------------------------------------------------------------------
// Plain-text rendering
// ---------------------------------------------------------------------------

inline void render_report_table(const DiffReport& r, std::ostream& out) {
    char line[160];
    std::snprintf(line, sizeof(line), "%-10s %8s %14s %14s %8s\n", "task", "trials", "mse",
                  "threshold", "verdict");
    out << line;
    std::snprintf(line, sizeof(line), "%-10s %8d %14.6g %14.6g %8s\n", r.task.c_str(), r.trials,
                  r.mse, r.threshold, r.pass ? "pass" : "fail");
    out << line;
}

inline void render_sweep_table(const SweepResult& r, std::ostream& out) {
    char line[200];
    std::snprintf(line, sizeof(line), "%-5s %6s %-12s %7s %9s %14s %8s\n", "cell", "depth",
                  "optimizer", "shots", "mitigate", "mse", "verdict");
    out << line;
    for (std::size_t i = 0; i < r.cells.size(); ++i) {
        const SweepCell& c = r.cells[i];
        std::snprintf(line, sizeof(line), "%-5zu %6d %-12s %7d %9s %14.6g %8s\n", i,
                      c.config["depth"].get<int>(),
                      c.config["optimizer"].get<std::string>().c_str(),
                      c.config["shots"].get<int>(),
                      c.config["mitigate"].get<bool>() ? "on" : "off", c.report.mse,
                      c.report.pass ? "pass" : "fail");
        out << line;
    }
    const SweepCell& best = r.cells[static_cast<std::size_t>(r.best_index)];
    std::snprintf(line, sizeof(line), "best: cell %d (mse %.6g)\n", r.best_index,
                  best.report.mse);
    out << line;
}

} // namespace hybridmd
