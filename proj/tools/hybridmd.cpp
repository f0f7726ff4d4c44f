// This code is part of hybridmd.
//
// Licensed under the Apache License, Version 2.0. You may obtain a copy
// of this license at http://www.apache.org/licenses/LICENSE-2.0.
//
// Command-line entry point. Subcommands:
//   run        execute the five-task pipeline and write the CV-series CSV
//   difftest   differential tests of the quantum variants (distance, eigen, e2e)
//   sweep      MSE-minimizing hyperparameter sweep over a declared grid
//   gen-traj   write a synthetic trajectory file
//   swap-demo  one-pair swap-test diagnostic table
//
// Exit codes: 0 success / verdict pass, 1 verdict fail, 2 usage or
// configuration error, 3 runtime error. Every flag doubles as a config-file
// key (flat key=value, long flag name without the leading dashes); values
// given on the command line override the file.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hybridmd/hybridmd.hpp"

namespace {

using namespace hybridmd;

// ---------------------------------------------------------------------------
// Shared flag groups
// ---------------------------------------------------------------------------

struct NoiseFlags {
    double both = -1.0;
    double p01 = -1.0;
    double p10 = -1.0;

    void add_to(CLI::App* cmd) {
        cmd->add_option("--noise", both, "readout flip probability, applied as p01 = p10")
            ->check(CLI::Range(0.0, 1.0));
        cmd->add_option("--noise-p01", p01, "probability a true 0 reads as 1")
            ->check(CLI::Range(0.0, 1.0));
        cmd->add_option("--noise-p10", p10, "probability a true 1 reads as 0")
            ->check(CLI::Range(0.0, 1.0));
    }

    std::optional<ReadoutNoiseModel> resolve() const {
        if (both < 0.0 && p01 < 0.0 && p10 < 0.0) return std::nullopt;
        ReadoutNoiseModel m;
        if (both >= 0.0) m.p01 = m.p10 = both;
        if (p01 >= 0.0) m.p01 = p01;
        if (p10 >= 0.0) m.p10 = p10;
        try {
            m.validate();
        } catch (const Error& e) {
            // Flag values are user configuration; report them as such.
            throw ConfigError(e.what());
        }
        return m;
    }
};

struct SwapFlags {
    std::string mode = "exact";
    int shots = 8192;
    bool mitigate = false;
    NoiseFlags noise;

    void add_to(CLI::App* cmd, const std::string& default_mode) {
        mode = default_mode;
        cmd->add_option("--swap-mode", mode, "swap-test estimation mode")
            ->check(CLI::IsMember({"exact", "sampled"}))
            ->capture_default_str();
        cmd->add_option("--shots", shots, "shots per circuit in sampled mode")
            ->check(CLI::PositiveNumber)
            ->capture_default_str();
        cmd->add_flag("--mitigate", mitigate, "apply calibration-matrix readout mitigation");
        noise.add_to(cmd);
    }

    SwapTestConfig resolve() const {
        SwapTestConfig cfg;
        cfg.mode = mode == "exact" ? SwapTestMode::exact : SwapTestMode::sampled;
        cfg.shots = shots;
        cfg.noise = noise.resolve();
        cfg.mitigate = mitigate;
        return cfg;
    }
};

struct VqeFlags {
    int depth = 2;
    std::string optimizer = "nelder_mead";
    int max_iters = 500;
    double tol = 1e-6;
    int restarts = 5;

    void add_to(CLI::App* cmd, bool with_depth = true) {
        if (with_depth)
            cmd->add_option("--depth", depth, "ansatz depth (entangling blocks)")
                ->check(CLI::NonNegativeNumber)
                ->capture_default_str();
        cmd->add_option("--optimizer", optimizer, "classical optimizer for VQE")
            ->check(CLI::IsMember({"nelder_mead", "spsa"}))
            ->capture_default_str();
        cmd->add_option("--max-iters", max_iters, "optimizer iteration budget")
            ->check(CLI::PositiveNumber)
            ->capture_default_str();
        cmd->add_option("--tol", tol, "optimizer convergence tolerance on the cost")
            ->capture_default_str();
        cmd->add_option("--restarts", restarts, "independent VQE restarts, best kept")
            ->check(CLI::PositiveNumber)
            ->capture_default_str();
    }

    OptimizerConfig resolve() const {
        OptimizerConfig cfg;
        cfg.kind = parse_optimizer_kind(optimizer);
        cfg.max_iterations = max_iters;
        cfg.tolerance = tol;
        cfg.restarts = restarts;
        return cfg;
    }
};

void add_seed_flag(CLI::App* cmd, std::uint64_t& seed) {
    cmd->add_option("--seed", seed, "base seed for every derived random stream")
        ->envname("HYBRIDMD_SEED")
        ->capture_default_str();
}

void add_config_file(CLI::App* cmd) {
    // The file itself is handled before parsing (see inject_config_tokens);
    // registering the option here keeps it in --help and accepted by the
    // parser.
    static std::string sink;
    cmd->add_option("--config", sink,
                    "flat key=value file of flag defaults; command-line values win");
}

/// Reads a flat key=value config file and turns each entry into a
/// '--key=value' token, skipping keys already given on the command line.
/// Appending the tokens after the user's arguments keeps them inside the
/// active subcommand.
std::vector<std::string> config_file_tokens(const std::string& path,
                                            const std::vector<std::string>& given) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config file not found or unreadable: " + path);

    auto already_given = [&](const std::string& flag, const std::string& alias) {
        for (const std::string& tok : given) {
            if (tok == flag || tok.rfind(flag + "=", 0) == 0) return true;
            if (!alias.empty() && (tok == alias || tok.rfind(alias + "=", 0) == 0)) return true;
        }
        return false;
    };

    std::vector<std::string> tokens;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string_view t = trim(line);
        if (t.empty() || t.front() == '#') continue;
        const std::size_t eq = t.find('=');
        if (eq == std::string_view::npos)
            throw ParseError(path + " line " + std::to_string(line_no) + ": expected key=value");
        const std::string key{trim(t.substr(0, eq))};
        std::string value{trim(t.substr(eq + 1))};
        if (key.empty())
            throw ParseError(path + " line " + std::to_string(line_no) + ": empty key");
        if (value.size() >= 2 && value.front() == '"' && value.back() == '"')
            value = value.substr(1, value.size() - 2);
        if (key == "config") continue;
        if (already_given("--" + key, key == "output" ? "-o" : "")) continue;
        tokens.push_back("--" + key + "=" + value);
    }
    return tokens;
}

/// Expands '--config FILE' into the flag tokens it provides.
std::vector<std::string> inject_config_tokens(std::vector<std::string> args) {
    std::string path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size())
            path = args[i + 1];
        else if (args[i].rfind("--config=", 0) == 0)
            path = args[i].substr(9);
    }
    if (!path.empty())
        for (std::string& tok : config_file_tokens(path, args)) args.push_back(std::move(tok));
    return args;
}

// ---------------------------------------------------------------------------
// List parsing for sweep axes and swap-demo coordinates
// ---------------------------------------------------------------------------

std::vector<int> parse_int_list(const std::string& text, const std::string& flag) {
    std::vector<int> out;
    for (const auto item : split(text, ',')) {
        int v = 0;
        if (!parse_int(trim(item), v) || v < 0)
            throw ConfigError(flag + ": invalid list entry '" + std::string(trim(item)) + "'");
        out.push_back(v);
    }
    if (out.empty()) throw ConfigError(flag + ": empty axis");
    return out;
}

std::vector<bool> parse_switch_list(const std::string& text, const std::string& flag) {
    std::vector<bool> out;
    for (const auto item_raw : split(text, ',')) {
        const auto item = trim(item_raw);
        if (item == "on" || item == "true")
            out.push_back(true);
        else if (item == "off" || item == "false")
            out.push_back(false);
        else
            throw ConfigError(flag + ": expected on/off, got '" + std::string(item) + "'");
    }
    if (out.empty()) throw ConfigError(flag + ": empty axis");
    return out;
}

std::vector<double> parse_coords(const std::string& text, const std::string& flag) {
    std::vector<double> out;
    for (const auto item : split(text, ',')) {
        double v = 0.0;
        if (!parse_double(trim(item), v))
            throw ConfigError(flag + ": invalid coordinate '" + std::string(trim(item)) + "'");
        out.push_back(v);
    }
    if (out.empty()) throw ConfigError(flag + ": no coordinates");
    return out;
}

void write_json_file(const nlohmann::json& j, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open output file: " + path);
    out << j.dump(2) << "\n";
}

// ---------------------------------------------------------------------------
// run
// ---------------------------------------------------------------------------

struct RunOptions {
    std::string traj;
    int gen_frames = 3;
    int gen_atoms = 8;
    std::string segments;
    std::string distance = "classical";
    std::string eigen = "classical";
    SwapFlags swap;
    VqeFlags vqe;
    std::string output = "cv_series.csv";
    std::uint64_t seed = 0;
    int jobs = 1;
    bool timing = false;
};

RunConfig to_run_config(const RunOptions& o) {
    RunConfig cfg;
    cfg.trajectory_path = o.traj;
    cfg.gen_frames = o.gen_frames;
    cfg.gen_atoms = o.gen_atoms;
    cfg.segments = parse_segment_spec(o.segments);
    cfg.task_variants[kTaskDistance] = parse_variant(o.distance);
    cfg.task_variants[kTaskEigenvalue] = parse_variant(o.eigen);
    const SwapTestConfig swap = o.swap.resolve();
    cfg.swap_mode = swap.mode;
    cfg.shots = swap.shots;
    cfg.noise = swap.noise;
    cfg.mitigate = swap.mitigate;
    cfg.ansatz_depth = o.vqe.depth;
    cfg.optimizer = o.vqe.resolve();
    cfg.output_path = o.output;
    cfg.base_seed = o.seed;
    cfg.jobs = o.jobs;
    cfg.timing = o.timing;
    return cfg;
}

void add_run_like_flags(CLI::App* cmd, RunOptions& o, const std::string& default_swap_mode) {
    add_config_file(cmd);
    cmd->add_option("--traj", o.traj, "trajectory file; omit to generate a synthetic one");
    cmd->add_option("--gen-frames", o.gen_frames, "synthetic input: frame count")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--gen-atoms", o.gen_atoms, "synthetic input: atom count")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--segments", o.segments,
                    "atom index groups, e.g. '0-3,5;4,6-7' (ranges inclusive)")
        ->required();
    cmd->add_option("--distance", o.distance, "task-4 variant")
        ->check(CLI::IsMember({"classical", "quantum"}))
        ->capture_default_str();
    cmd->add_option("--eigen", o.eigen, "task-5 variant")
        ->check(CLI::IsMember({"classical", "quantum"}))
        ->capture_default_str();
    o.swap.add_to(cmd, default_swap_mode);
    o.vqe.add_to(cmd);
    add_seed_flag(cmd, o.seed);
    cmd->add_option("--jobs", o.jobs, "worker threads for independent units")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_flag("--timing", o.timing,
                  "record wall-clock seconds per row (off by default: keeps output "
                  "byte-reproducible)");
}

int do_run(const RunOptions& o) {
    const RunConfig cfg = to_run_config(o);
    const TaskPlan task_plan = plan(cfg);

    const auto t0 = std::chrono::steady_clock::now();
    const CvSeries series = compute_cv_series(cfg);
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    std::ofstream out(cfg.output_path);
    if (!out) throw ConfigError("cannot open output file: " + cfg.output_path);
    write_cv_csv(series, out);

    auto join = [](const std::vector<int>& v) {
        std::string s;
        for (std::size_t i = 0; i < v.size(); ++i)
            s += (i ? "," : "") + std::to_string(v[i]);
        return s;
    };
    std::cout << "plan: classic tasks " << join(task_plan.classic_tasks())
              << "; quantum candidates " << join(task_plan.candidates()) << "\n";
    std::cout << "dispatch: distance=" << variant_name(cfg.task_variants[kTaskDistance])
              << " eigen=" << variant_name(cfg.task_variants[kTaskEigenvalue]) << "\n";
    std::cout << "frames=" << series.num_frames << " pairs=" << series.num_pairs
              << " rows=" << series.entries.size() << " wall=" << format_double(wall, 4)
              << "s\n";
    std::cout << "wrote " << cfg.output_path << "\n";
    return 0;
}

// ---------------------------------------------------------------------------
// difftest
// ---------------------------------------------------------------------------

struct DifftestCommon {
    int trials = 100;
    double threshold = -1.0; // negative -> module default
    std::uint64_t seed = 0;
    int jobs = 1;
    std::string output;

    std::optional<double> threshold_opt() const {
        return threshold < 0.0 ? std::nullopt : std::optional<double>(threshold);
    }
};

int finish_difftest(const DiffReport& report, const std::string& output_path) {
    render_report_table(report, std::cout);
    if (!output_path.empty()) write_json_file(to_json(report), output_path);
    return report.pass ? 0 : 1;
}

// ---------------------------------------------------------------------------
// main
// ---------------------------------------------------------------------------

int run_cli(int argc, char** argv) {
    CLI::App app{"hybrid quantum-classical MD collective-variable pipeline"};
    app.require_subcommand(1);
    int exit_code = 0;

    // run ------------------------------------------------------------------
    auto run_opts = std::make_shared<RunOptions>();
    CLI::App* run_cmd = app.add_subcommand("run", "execute the pipeline and write the CV CSV");
    add_run_like_flags(run_cmd, *run_opts, "exact");
    run_cmd->add_option("-o,--output", run_opts->output, "CV-series CSV path")
        ->capture_default_str();
    run_cmd->callback([run_opts, &exit_code] { exit_code = do_run(*run_opts); });

    // difftest ---------------------------------------------------------------
    CLI::App* diff_cmd = app.add_subcommand("difftest",
                                            "differential tests against the classical oracle");
    diff_cmd->require_subcommand(1);

    auto dist_common = std::make_shared<DifftestCommon>();
    auto dist_swap = std::make_shared<SwapFlags>();
    CLI::App* diff_dist = diff_cmd->add_subcommand("distance", "swap-test distance vs classical");
    add_config_file(diff_dist);
    diff_dist->add_option("--trials", dist_common->trials, "random atom pairs")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    dist_swap->add_to(diff_dist, "sampled");
    diff_dist->add_option("--threshold", dist_common->threshold,
                          "MSE pass threshold (default 1e-2)");
    add_seed_flag(diff_dist, dist_common->seed);
    diff_dist->add_option("--jobs", dist_common->jobs, "worker threads")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    diff_dist->add_option("-o,--output", dist_common->output, "write the JSON report here");
    diff_dist->callback([dist_common, dist_swap, &exit_code] {
        const DiffReport report =
            unit_test_distance(dist_common->trials, dist_swap->resolve(),
                               dist_common->threshold_opt(), dist_common->seed,
                               dist_common->jobs);
        exit_code = finish_difftest(report, dist_common->output);
    });

    auto eig_common = std::make_shared<DifftestCommon>();
    auto eig_vqe = std::make_shared<VqeFlags>();
    CLI::App* diff_eig = diff_cmd->add_subcommand("eigen", "VQE eigenvalue vs Jacobi");
    add_config_file(diff_eig);
    eig_common->trials = 10;
    diff_eig->add_option("--trials", eig_common->trials, "random 2+2-atom BPM instances")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    eig_vqe->add_to(diff_eig);
    diff_eig->add_option("--threshold", eig_common->threshold,
                         "MSE pass threshold (default (1e-2 * mean lev)^2)");
    add_seed_flag(diff_eig, eig_common->seed);
    diff_eig->add_option("--jobs", eig_common->jobs, "worker threads")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    diff_eig->add_option("-o,--output", eig_common->output, "write the JSON report here");
    diff_eig->callback([eig_common, eig_vqe, &exit_code] {
        const DiffReport report =
            unit_test_eigen(eig_common->trials, eig_vqe->depth, eig_vqe->resolve(),
                            eig_common->threshold_opt(), eig_common->seed, eig_common->jobs);
        exit_code = finish_difftest(report, eig_common->output);
    });

    auto e2e_opts = std::make_shared<RunOptions>();
    auto e2e_common = std::make_shared<DifftestCommon>();
    CLI::App* diff_e2e =
        diff_cmd->add_subcommand("e2e", "full pipeline vs the all-classical oracle");
    add_run_like_flags(diff_e2e, *e2e_opts, "exact");
    diff_e2e->add_option("--threshold", e2e_common->threshold,
                         "MSE pass threshold (default (1e-2 * mean lev)^2)");
    diff_e2e->add_option("-o,--output", e2e_common->output, "write the JSON report here");
    diff_e2e->callback([e2e_opts, e2e_common, &exit_code] {
        const DiffReport report =
            end_to_end_diff(to_run_config(*e2e_opts), e2e_common->threshold_opt());
        exit_code = finish_difftest(report, e2e_common->output);
    });

    // sweep ------------------------------------------------------------------
    CLI::App* sweep_cmd =
        app.add_subcommand("sweep", "grid sweep, keeps the MSE-minimizing configuration");
    sweep_cmd->require_subcommand(1);

    struct SweepOptions {
        std::string shots = "8192";
        std::string mitigate = "off";
        std::string depths = "2";
        std::string optimizers = "nelder_mead";
        NoiseFlags noise;
        VqeFlags vqe;
        int trials = 50;
        double threshold = -1.0;
        std::uint64_t seed = 0;
        int jobs = 1;
        std::string output;
    };
    auto add_sweep_common = [&](CLI::App* cmd, SweepOptions& o) {
        add_config_file(cmd);
        cmd->add_option("--trials", o.trials, "trials per cell, matched seeds across cells")
            ->check(CLI::PositiveNumber)
            ->capture_default_str();
        cmd->add_option("--threshold", o.threshold, "per-cell MSE verdict threshold");
        add_seed_flag(cmd, o.seed);
        cmd->add_option("--jobs", o.jobs, "worker threads")
            ->check(CLI::PositiveNumber)
            ->capture_default_str();
        cmd->add_option("-o,--output", o.output, "write the JSON sweep result here");
    };

    auto sweep_dist_opts = std::make_shared<SweepOptions>();
    CLI::App* sweep_dist = sweep_cmd->add_subcommand("distance", "sweep shots x mitigation");
    sweep_dist->add_option("--shots", sweep_dist_opts->shots, "comma-separated shot counts")
        ->capture_default_str();
    sweep_dist->add_option("--mitigate", sweep_dist_opts->mitigate,
                           "comma-separated on/off values")
        ->capture_default_str();
    sweep_dist_opts->noise.add_to(sweep_dist);
    add_sweep_common(sweep_dist, *sweep_dist_opts);

    auto sweep_eig_opts = std::make_shared<SweepOptions>();
    CLI::App* sweep_eig = sweep_cmd->add_subcommand("eigen", "sweep ansatz depth x optimizer");
    sweep_eig->add_option("--depths", sweep_eig_opts->depths, "comma-separated ansatz depths")
        ->capture_default_str();
    sweep_eig->add_option("--optimizers", sweep_eig_opts->optimizers,
                          "comma-separated optimizer names")
        ->capture_default_str();
    sweep_eig_opts->vqe.add_to(sweep_eig, /*with_depth=*/false); // the axis is --depths
    add_sweep_common(sweep_eig, *sweep_eig_opts);

    auto finish_sweep = [](const SweepGrid& grid, const std::string& output_path) {
        const SweepResult result = sweep(grid);
        render_sweep_table(result, std::cout);
        if (!output_path.empty()) write_json_file(to_json(result), output_path);
        return 0;
    };
    sweep_dist->callback([sweep_dist_opts, finish_sweep, &exit_code] {
        SweepGrid grid;
        grid.task = "distance";
        grid.shots = parse_int_list(sweep_dist_opts->shots, "--shots");
        grid.mitigate = parse_switch_list(sweep_dist_opts->mitigate, "--mitigate");
        grid.noise = sweep_dist_opts->noise.resolve();
        grid.trials = sweep_dist_opts->trials;
        grid.seed = sweep_dist_opts->seed;
        grid.jobs = sweep_dist_opts->jobs;
        if (sweep_dist_opts->threshold >= 0.0) grid.threshold = sweep_dist_opts->threshold;
        exit_code = finish_sweep(grid, sweep_dist_opts->output);
    });
    sweep_eig->callback([sweep_eig_opts, finish_sweep, &exit_code] {
        SweepGrid grid;
        grid.task = "eigen";
        grid.depths = parse_int_list(sweep_eig_opts->depths, "--depths");
        grid.optimizers.clear();
        for (const auto name : split(sweep_eig_opts->optimizers, ','))
            grid.optimizers.push_back(parse_optimizer_kind(std::string(trim(name))));
        grid.optimizer_base = sweep_eig_opts->vqe.resolve();
        grid.trials = sweep_eig_opts->trials;
        grid.seed = sweep_eig_opts->seed;
        grid.jobs = sweep_eig_opts->jobs;
        if (sweep_eig_opts->threshold >= 0.0) grid.threshold = sweep_eig_opts->threshold;
        exit_code = finish_sweep(grid, sweep_eig_opts->output);
    });

    // gen-traj ---------------------------------------------------------------
    struct GenOptions {
        int frames = 3;
        int atoms = 8;
        std::uint64_t seed = 0;
        std::string output;
    };
    auto gen_opts = std::make_shared<GenOptions>();
    CLI::App* gen_cmd = app.add_subcommand("gen-traj", "write a synthetic trajectory file");
    add_config_file(gen_cmd);
    gen_cmd->add_option("--frames", gen_opts->frames, "frame count")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    gen_cmd->add_option("--atoms", gen_opts->atoms, "atom count")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    add_seed_flag(gen_cmd, gen_opts->seed);
    gen_cmd->add_option("-o,--output", gen_opts->output, "trajectory file path")->required();
    gen_cmd->callback([gen_opts, &exit_code] {
        write_trajectory_file(gen_trajectory(gen_opts->frames, gen_opts->atoms, gen_opts->seed),
                              gen_opts->output);
        std::cout << "wrote " << gen_opts->output << " (" << gen_opts->frames << " frames, "
                  << gen_opts->atoms << " atoms)\n";
        exit_code = 0;
    });

    // swap-demo ---------------------------------------------------------------
    struct DemoOptions {
        std::string u;
        std::string v;
        SwapFlags swap;
        std::uint64_t seed = 0;
    };
    auto demo_opts = std::make_shared<DemoOptions>();
    CLI::App* demo_cmd =
        app.add_subcommand("swap-demo", "swap-test diagnostics for one atom pair");
    add_config_file(demo_cmd);
    demo_cmd->add_option("--u", demo_opts->u, "first atom, comma-separated coordinates")
        ->required();
    demo_cmd->add_option("--v", demo_opts->v, "second atom, comma-separated coordinates")
        ->required();
    demo_opts->swap.mode = "exact";
    demo_cmd->add_option("--mode", demo_opts->swap.mode, "estimation mode")
        ->check(CLI::IsMember({"exact", "sampled"}))
        ->capture_default_str();
    demo_cmd->add_option("--shots", demo_opts->swap.shots, "shots in sampled mode")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    demo_cmd->add_flag("--mitigate", demo_opts->swap.mitigate, "mitigate readout noise");
    demo_opts->swap.noise.add_to(demo_cmd);
    add_seed_flag(demo_cmd, demo_opts->seed);
    demo_cmd->callback([demo_opts, &exit_code] {
        const std::vector<double> u = parse_coords(demo_opts->u, "--u");
        const std::vector<double> v = parse_coords(demo_opts->v, "--v");
        SwapTestConfig cfg = demo_opts->swap.resolve();
        cfg.seed = demo_opts->seed;

        const EncodedPair pair = encode_pair(u, v);
        const Circuit qc = build_swap_test_circuit(pair);
        const double p0 = estimate_p0(qc, cfg);
        double quantum = 2.0 * pair.normalization * (2.0 * p0 - 1.0);
        if (quantum < 0.0) quantum = 0.0;
        double classical = 0.0;
        for (std::size_t i = 0; i < u.size(); ++i) classical += (u[i] - v[i]) * (u[i] - v[i]);

        char line[96];
        std::snprintf(line, sizeof(line), "%-20s %s\n", "quantity", "value");
        std::cout << line;
        const auto row = [&](const char* name, double value) {
            std::snprintf(line, sizeof(line), "%-20s %s\n", name, format_double(value, 12).c_str());
            std::cout << line;
        };
        row("P(0)", p0);
        row("Z", pair.normalization);
        row("qubits", static_cast<double>(qc.num_qubits()));
        row("distance_quantum", quantum);
        row("distance_classical", classical);
        exit_code = 0;
    });

    try {
        std::vector<std::string> args =
            inject_config_tokens(std::vector<std::string>(argv + 1, argv + argc));
        std::reverse(args.begin(), args.end()); // CLI11 consumes args back to front
        app.parse(std::move(args));
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    return exit_code;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run_cli(argc, argv);
    } catch (const hybridmd::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const hybridmd::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const hybridmd::EncodingError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
