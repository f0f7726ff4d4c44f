// This code is part of hybridmd.
//
// Licensed under the Apache License, Version 2.0. You may obtain a copy
// of this license at http://www.apache.org/licenses/LICENSE-2.0.

#pragma once

#include <array>
#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "hybridmd/eigensolve.hpp"
#include "hybridmd/errors.hpp"
#include "hybridmd/parallel.hpp"
#include "hybridmd/swap_test.hpp"
#include "hybridmd/textio.hpp"
#include "hybridmd/trajectory.hpp"

namespace hybridmd {

// ---------------------------------------------------------------------------
// Task plan: five workflow tasks, of which only the distance matrix (task 4)
// and the largest eigenvalue (task 5) have quantum subroutines.
// ---------------------------------------------------------------------------

inline constexpr int kNumTasks = 5;
inline constexpr int kTaskDistance = 3;   // zero-based index of task 4
inline constexpr int kTaskEigenvalue = 4; // zero-based index of task 5

enum class Variant { classical, quantum };
enum class TaskClass { classic, quantum_candidate };

inline const char* variant_name(Variant v) {
    return v == Variant::classical ? "classical" : "quantum";
}

inline Variant parse_variant(const std::string& name) {
    if (name == "classical") return Variant::classical;
    if (name == "quantum") return Variant::quantum;
    throw ConfigError("unknown variant '" + name + "' (expected classical or quantum)");
}

struct TaskPlan {
    std::array<TaskClass, kNumTasks> classification{};
    std::array<Variant, kNumTasks> dispatch{};

    std::vector<int> candidates() const {
        std::vector<int> c;
        for (int t = 0; t < kNumTasks; ++t)
            if (classification[static_cast<std::size_t>(t)] == TaskClass::quantum_candidate)
                c.push_back(t + 1);
        return c;
    }
    std::vector<int> classic_tasks() const {
        std::vector<int> c;
        for (int t = 0; t < kNumTasks; ++t)
            if (classification[static_cast<std::size_t>(t)] == TaskClass::classic)
                c.push_back(t + 1);
        return c;
    }
};

// ---------------------------------------------------------------------------
// Segments
// ---------------------------------------------------------------------------

struct SegmentSpec {
    std::vector<std::vector<int>> index_groups;
};

/// Grammar: groups separated by ';', entries by ',', each entry an atom
/// index or an inclusive 'a-b' range. Example: "0-3,5;4,6-7".
inline SegmentSpec parse_segment_spec(const std::string& text) {
    SegmentSpec spec;
    if (trim(text).empty()) throw ParseError("segment spec is empty");
    for (const std::string_view group_text : split(text, ';')) {
        std::vector<int> group;
        if (trim(group_text).empty()) throw ParseError("segment spec has an empty group");
        for (const std::string_view item_raw : split(group_text, ',')) {
            const std::string_view item = trim(item_raw);
            if (item.empty()) throw ParseError("segment spec has an empty entry");
            const std::size_t dash = item.find('-');
            if (dash == std::string_view::npos) {
                int idx = -1;
                if (!parse_int(item, idx) || idx < 0)
                    throw ParseError("invalid atom index '" + std::string(item) + "'");
                group.push_back(idx);
            } else {
                int lo = -1, hi = -1;
                if (!parse_int(trim(item.substr(0, dash)), lo) ||
                    !parse_int(trim(item.substr(dash + 1)), hi) || lo < 0 || hi < lo)
                    throw ParseError("invalid atom range '" + std::string(item) + "'");
                for (int i = lo; i <= hi; ++i) group.push_back(i);
            }
        }
        spec.index_groups.push_back(std::move(group));
    }
    return spec;
}

inline void validate_segment_spec(const SegmentSpec& spec, int num_atoms) {
    if (spec.index_groups.size() < 2)
        throw ConfigError("segment spec needs at least 2 groups, got " +
                          std::to_string(spec.index_groups.size()));
    std::vector<bool> seen(static_cast<std::size_t>(num_atoms), false);
    for (const auto& group : spec.index_groups) {
        if (group.empty()) throw ConfigError("segment spec has an empty group");
        for (int idx : group) {
            if (idx < 0 || idx >= num_atoms)
                throw ConfigError("segment atom index " + std::to_string(idx) +
                                  " out of range for " + std::to_string(num_atoms) + " atoms");
            if (seen[static_cast<std::size_t>(idx)])
                throw ConfigError("segment groups are not disjoint: atom " + std::to_string(idx) +
                                  " repeats");
            seen[static_cast<std::size_t>(idx)] = true;
        }
    }
}

/// All unordered group pairs (i < j) of one frame, as coordinate segments.
inline std::vector<std::pair<Segment, Segment>>
pair_segments(const std::vector<std::array<double, 3>>& frame, const SegmentSpec& spec) {
    validate_segment_spec(spec, static_cast<int>(frame.size()));
    auto slice = [&](const std::vector<int>& group) {
        Segment seg;
        seg.reserve(group.size());
        for (int idx : group) {
            const auto& a = frame[static_cast<std::size_t>(idx)];
            seg.push_back({a[0], a[1], a[2]});
        }
        return seg;
    };
    std::vector<std::pair<Segment, Segment>> pairs;
    for (std::size_t i = 0; i < spec.index_groups.size(); ++i)
        for (std::size_t j = i + 1; j < spec.index_groups.size(); ++j)
            pairs.emplace_back(slice(spec.index_groups[i]), slice(spec.index_groups[j]));
    return pairs;
}

// ---------------------------------------------------------------------------
// Block distance matrix
// ---------------------------------------------------------------------------

using DistanceFunction = std::function<DistanceMatrix(const Segment&, const Segment&)>;

/// [[0, D], [D^T, 0]] over the two segments; symmetric with zero diagonal
/// blocks, hence trace 0 and lambda_max >= 0.
inline RealMatrix extract_bpm(const Segment& a, const Segment& b, const DistanceFunction& dist) {
    const DistanceMatrix d = dist(a, b);
    const std::size_t n1 = a.size();
    const std::size_t n2 = b.size();
    RealMatrix bpm(n1 + n2, n1 + n2);
    for (std::size_t i = 0; i < n1; ++i)
        for (std::size_t j = 0; j < n2; ++j) {
            bpm(i, n1 + j) = d.entries(i, j);
            bpm(n1 + j, i) = d.entries(i, j);
        }
    return bpm;
}

/// Structural invariants every pipeline BPM must satisfy by construction.
inline void validate_bpm(const RealMatrix& bpm, std::size_t n1, std::size_t n2) {
    if (bpm.rows != n1 + n2 || !bpm.square())
        throw NumericError("bpm invariant violated: wrong shape");
    for (std::size_t i = 0; i < bpm.rows; ++i)
        for (std::size_t j = 0; j < bpm.cols; ++j) {
            const bool in_diag_block = (i < n1) == (j < n1);
            if (in_diag_block && bpm(i, j) != 0.0)
                throw NumericError("bpm invariant violated: nonzero diagonal block entry");
            if (bpm(i, j) != bpm(j, i))
                throw NumericError("bpm invariant violated: asymmetry");
        }
    if (trace(bpm) != 0.0) throw NumericError("bpm invariant violated: nonzero trace");
}

// ---------------------------------------------------------------------------
// Run configuration and the collective-variable series
// ---------------------------------------------------------------------------

struct RunConfig {
    std::string trajectory_path; // empty -> synthetic input
    int gen_frames = 3;
    int gen_atoms = 8;
    SegmentSpec segments;
    std::array<Variant, kNumTasks> task_variants{Variant::classical, Variant::classical,
                                                 Variant::classical, Variant::classical,
                                                 Variant::classical};
    SwapTestMode swap_mode = SwapTestMode::exact;
    int shots = 8192;
    std::optional<ReadoutNoiseModel> noise;
    bool mitigate = false;
    int ansatz_depth = 2;
    OptimizerConfig optimizer;
    std::string output_path;
    std::uint64_t base_seed = 0;
    int jobs = 1;
    bool timing = false; // wall-clock per-row timing breaks byte determinism, so opt-in
};

/// Fixed classification: tasks 1-3 are classic, tasks 4-5 are the quantum
/// candidates. Dispatch copies the configured variant choices.
inline TaskPlan plan(const RunConfig& config) {
    TaskPlan p;
    p.classification = {TaskClass::classic, TaskClass::classic, TaskClass::classic,
                        TaskClass::quantum_candidate, TaskClass::quantum_candidate};
    for (int t = 0; t < kNumTasks; ++t) {
        if (p.classification[static_cast<std::size_t>(t)] == TaskClass::classic &&
            config.task_variants[static_cast<std::size_t>(t)] == Variant::quantum)
            throw ConfigError("task " + std::to_string(t + 1) +
                              " is I/O- or vector-bound and has no quantum variant");
    }
    p.dispatch = config.task_variants;
    return p;
}

struct CvEntry {
    int frame = 0;
    int pair = 0;
    double lev = 0.0;
    Variant distance_variant = Variant::classical;
    Variant eigen_variant = Variant::classical;
    double elapsed_s = 0.0;
};

struct CvSeries {
    std::vector<CvEntry> entries; // ordered by (frame, pair)
    int num_frames = 0;
    int num_pairs = 0;
};

inline Trajectory load_trajectory(const RunConfig& config) {
    if (!config.trajectory_path.empty()) return read_trajectory_file(config.trajectory_path);
    return gen_trajectory(config.gen_frames, config.gen_atoms, config.base_seed);
}

/// Runs the full task chain: per frame and segment pair, a BPM through the
/// configured task-4 variant and its largest eigenvalue through the
/// configured task-5 variant. Units are independent; each derives its seed
/// streams from (base_seed, frame, pair), so any worker count produces the
/// same series.
inline CvSeries compute_cv_series(const RunConfig& config) {
    const TaskPlan task_plan = plan(config);
    const Trajectory traj = load_trajectory(config);
    validate_segment_spec(config.segments, traj.num_atoms());

    const std::size_t groups = config.segments.index_groups.size();
    const std::size_t pairs_per_frame = groups * (groups - 1) / 2;
    const std::size_t frames = traj.frames.size();

    CvSeries series;
    series.num_frames = static_cast<int>(frames);
    series.num_pairs = static_cast<int>(pairs_per_frame);
    series.entries.resize(frames * pairs_per_frame);

    const Variant distance_variant = task_plan.dispatch[kTaskDistance];
    const Variant eigen_variant = task_plan.dispatch[kTaskEigenvalue];

    parallel_for(series.entries.size(), config.jobs, [&](std::size_t unit) {
        const int f = static_cast<int>(unit / pairs_per_frame);
        const int p = static_cast<int>(unit % pairs_per_frame);
        with_context("frame " + std::to_string(f) + ", pair " + std::to_string(p) + ": ", [&] {
            const auto pairs = pair_segments(traj.frames[static_cast<std::size_t>(f)],
                                             config.segments);
            const auto& [seg_a, seg_b] = pairs[static_cast<std::size_t>(p)];

            const auto t0 = std::chrono::steady_clock::now();

            DistanceFunction dist;
            if (distance_variant == Variant::quantum) {
                SwapTestConfig cfg;
                cfg.mode = config.swap_mode;
                cfg.shots = config.shots;
                cfg.noise = config.noise;
                cfg.mitigate = config.mitigate;
                cfg.seed = derive_seed(config.base_seed, static_cast<std::uint64_t>(f),
                                       static_cast<std::uint64_t>(p), 1);
                dist = [cfg](const Segment& a, const Segment& b) {
                    return quantum_distance_matrix(a, b, cfg);
                };
            } else {
                dist = classical_distance_matrix;
            }

            const RealMatrix bpm = extract_bpm(seg_a, seg_b, dist);
            validate_bpm(bpm, seg_a.size(), seg_b.size());

            // The Jacobi value doubles as the lambda_max >= 0 assertion.
            const double classical_lev = classical_largest_eigenvalue(bpm);
            if (classical_lev < -1e-12)
                throw NumericError("bpm invariant violated: negative largest eigenvalue");

            double lev = classical_lev;
            if (eigen_variant == Variant::quantum) {
                OptimizerConfig opt = config.optimizer;
                opt.seed = derive_seed(config.base_seed, static_cast<std::uint64_t>(f),
                                       static_cast<std::uint64_t>(p), 2);
                lev = quantum_largest_eigenvalue(bpm, config.ansatz_depth, opt).value;
            }

            CvEntry entry;
            entry.frame = f;
            entry.pair = p;
            entry.lev = lev;
            entry.distance_variant = distance_variant;
            entry.eigen_variant = eigen_variant;
            if (config.timing)
                entry.elapsed_s =
                    std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            series.entries[unit] = entry;
        });
    });
    return series;
}

inline void write_cv_csv(const CvSeries& series, std::ostream& out) {
    out << "frame,pair,lev,variant_distance,variant_eigen,elapsed_s\n";
    for (const CvEntry& e : series.entries)
        out << e.frame << ',' << e.pair << ',' << format_double(e.lev, 12) << ','
            << variant_name(e.distance_variant) << ',' << variant_name(e.eigen_variant) << ','
            << format_double(e.elapsed_s, 12) << "\n";
}

inline std::string cv_series_to_csv(const CvSeries& series) {
    std::ostringstream os;
    write_cv_csv(series, os);
    return os.str();
}

} // namespace hybridmd
