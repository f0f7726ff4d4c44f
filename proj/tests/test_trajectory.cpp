// This code is part of hybridmd.
//
// Licensed under the Apache License, Version 2.0. You may obtain a copy
// of this license at http://www.apache.org/licenses/LICENSE-2.0.

#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "hybridmd/trajectory.hpp"

using namespace hybridmd;
using Catch::Matchers::ContainsSubstring;

TEST_CASE("gen_trajectory shapes and determinism", "[trajectory]") {
    const Trajectory t = gen_trajectory(1, 4, 7);
    CHECK(t.num_frames() == 1);
    CHECK(t.num_atoms() == 4);
    for (const auto& atom : t.frames.front())
        for (double c : atom) {
            CHECK(c >= 0.0);
            CHECK(c < 1.0);
        }

    const Trajectory same = gen_trajectory(1, 4, 7);
    CHECK(t.frames == same.frames);

    const Trajectory other = gen_trajectory(1, 4, 8);
    CHECK(t.frames != other.frames);

    CHECK_THROWS_AS(gen_trajectory(0, 4, 1), ConfigError);
    CHECK_THROWS_AS(gen_trajectory(2, 0, 1), ConfigError);
}

TEST_CASE("write then read reproduces coordinates bit for bit", "[trajectory]") {
    const Trajectory t = gen_trajectory(3, 5, 42);
    const std::string text = trajectory_to_string(t);

    std::istringstream in(text);
    const Trajectory back = read_trajectory(in);
    REQUIRE(back.frames == t.frames);

    // And the serialized form is a fixed point of write(read(.)).
    CHECK(trajectory_to_string(back) == text);
}

TEST_CASE("read_trajectory parses a minimal file", "[trajectory]") {
    std::istringstream in("2\nany comment\n0.0 0.5 1.0\n-1 2 3.25\n");
    const Trajectory t = read_trajectory(in);
    REQUIRE(t.num_frames() == 1);
    REQUIRE(t.num_atoms() == 2);
    CHECK(t.frames[0][0] == std::array<double, 3>{0.0, 0.5, 1.0});
    CHECK(t.frames[0][1] == std::array<double, 3>{-1.0, 2.0, 3.25});
}

TEST_CASE("read_trajectory reports malformed headers with line numbers", "[trajectory]") {
    std::istringstream bad("abc\ncomment\n");
    CHECK_THROWS_WITH(read_trajectory(bad), ContainsSubstring("line 1") &&
                                                ContainsSubstring("invalid atom count"));

    std::istringstream zero("0\ncomment\n");
    CHECK_THROWS_AS(read_trajectory(zero), ParseError);
}

TEST_CASE("read_trajectory rejects inconsistent frames", "[trajectory]") {
    std::istringstream in("1\nc\n0 0 0\n2\nc\n0 0 0\n1 1 1\n");
    CHECK_THROWS_WITH(read_trajectory(in),
                      ContainsSubstring("frame 2") && ContainsSubstring("frame 1"));
}

TEST_CASE("read_trajectory rejects bad atom lines", "[trajectory]") {
    std::istringstream two("1\nc\n0.0 1.0\n");
    CHECK_THROWS_WITH(read_trajectory(two), ContainsSubstring("expected 3 coordinates"));

    std::istringstream words("1\nc\n0.0 1.0 zz\n");
    CHECK_THROWS_WITH(read_trajectory(words),
                      ContainsSubstring("line 3") && ContainsSubstring("non-numeric"));

    std::istringstream truncated("2\nc\n0 0 0\n");
    CHECK_THROWS_WITH(read_trajectory(truncated), ContainsSubstring("truncated"));

    std::istringstream empty("\n\n");
    CHECK_THROWS_WITH(read_trajectory(empty), ContainsSubstring("no frames"));
}

TEST_CASE("blank lines between frames are tolerated", "[trajectory]") {
    std::istringstream in("1\nc\n0 0 0\n\n\n1\nc\n1 1 1\n\n");
    const Trajectory t = read_trajectory(in);
    CHECK(t.num_frames() == 2);
    CHECK(t.frames[1][0] == std::array<double, 3>{1.0, 1.0, 1.0});
}

TEST_CASE("read_trajectory_file names a missing path", "[trajectory]") {
    CHECK_THROWS_WITH(read_trajectory_file("/nonexistent/t.xyz"),
                      ContainsSubstring("/nonexistent/t.xyz"));
}
