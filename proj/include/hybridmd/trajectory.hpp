// This code is part of hybridmd.
//
// Licensed under the Apache License, Version 2.0. You may obtain a copy
// of this license at http://www.apache.org/licenses/LICENSE-2.0.

#pragma once

#include <array>
#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "hybridmd/errors.hpp"
#include "hybridmd/rng.hpp"
#include "hybridmd/textio.hpp"

namespace hybridmd {

/// Multi-frame atom trajectory. Every frame carries the same atoms in the
/// same order, with 3-dimensional coordinates.
struct Trajectory {
    std::vector<std::vector<std::array<double, 3>>> frames;

    int num_atoms() const { return frames.empty() ? 0 : static_cast<int>(frames.front().size()); }
    int num_frames() const { return static_cast<int>(frames.size()); }
};

/// Text format, per frame:
///   line 1: atom count
///   line 2: comment (ignored on read)
///   then one line per atom with three decimal coordinates
/// Frames repeat until end of file; trailing blank lines are allowed.
inline Trajectory read_trajectory(std::istream& in, const std::string& source = "<stream>") {
    Trajectory traj;
    std::string line;
    int line_no = 0;
    auto fail = [&](const std::string& what) {
        throw ParseError(source + " line " + std::to_string(line_no) + ": " + what);
    };

    while (true) {
        // frame header; skip blank lines between frames
        int atom_count = -1;
        while (std::getline(in, line)) {
            ++line_no;
            const std::string_view t = trim(line);
            if (t.empty()) continue;
            if (!parse_int(t, atom_count) || atom_count <= 0)
                fail("invalid atom count '" + std::string(t) + "'");
            break;
        }
        if (atom_count < 0) break; // clean end of file

        const int frame_index = traj.num_frames() + 1;
        if (!traj.frames.empty() && atom_count != traj.num_atoms())
            fail("frame " + std::to_string(frame_index) + " has atom count " +
                 std::to_string(atom_count) + " but frame 1 has " +
                 std::to_string(traj.num_atoms()));

        if (!std::getline(in, line))
            fail("frame " + std::to_string(frame_index) + " truncated before its comment line");
        ++line_no;

        std::vector<std::array<double, 3>> frame;
        frame.reserve(static_cast<std::size_t>(atom_count));
        for (int a = 0; a < atom_count; ++a) {
            if (!std::getline(in, line))
                fail("frame " + std::to_string(frame_index) + " truncated after " +
                     std::to_string(a) + " of " + std::to_string(atom_count) + " atoms");
            ++line_no;
            const auto tokens = tokenize(line);
            if (tokens.size() != 3)
                fail("expected 3 coordinates, got " + std::to_string(tokens.size()));
            std::array<double, 3> coords{};
            for (int c = 0; c < 3; ++c)
                if (!parse_double(tokens[static_cast<std::size_t>(c)], coords[static_cast<std::size_t>(c)]))
                    fail("non-numeric coordinate '" + std::string(tokens[static_cast<std::size_t>(c)]) + "'");
            frame.push_back(coords);
        }
        traj.frames.push_back(std::move(frame));
    }
    if (traj.frames.empty())
        throw ParseError(source + ": no frames found");
    return traj;
}

inline Trajectory read_trajectory_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("trajectory file not found or unreadable: " + path);
    return read_trajectory(in, path);
}

/// Coordinates are written with 17 significant digits so a write/read
/// cycle reproduces the doubles bit for bit.
inline void write_trajectory(const Trajectory& traj, std::ostream& out) {
    for (std::size_t f = 0; f < traj.frames.size(); ++f) {
        out << traj.frames[f].size() << "\n";
        out << "frame " << f << "\n";
        for (const auto& atom : traj.frames[f])
            out << format_double(atom[0], 17) << ' ' << format_double(atom[1], 17) << ' '
                << format_double(atom[2], 17) << "\n";
    }
}

inline std::string trajectory_to_string(const Trajectory& traj) {
    std::ostringstream os;
    write_trajectory(traj, os);
    return os.str();
}

inline void write_trajectory_file(const Trajectory& traj, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open trajectory output file: " + path);
    write_trajectory(traj, out);
}

/// Synthetic trajectory with coordinates uniform in [0, 1)^3,
/// deterministic per seed.
inline Trajectory gen_trajectory(int num_frames, int num_atoms, std::uint64_t seed) {
    if (num_frames <= 0 || num_atoms <= 0)
        throw ConfigError("gen_trajectory: frame and atom counts must be positive");
    Trajectory traj;
    Rng rng(derive_seed(seed, 0x7261)); // trajectory stream
    traj.frames.resize(static_cast<std::size_t>(num_frames));
    for (auto& frame : traj.frames) {
        frame.resize(static_cast<std::size_t>(num_atoms));
        for (auto& atom : frame)
            for (double& c : atom) c = rng.uniform();
    }
    return traj;
}

} // namespace hybridmd
