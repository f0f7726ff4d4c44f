// This code is part of hybridmd.
//
// Licensed under the Apache License, Version 2.0. You may obtain a copy
// of this license at http://www.apache.org/licenses/LICENSE-2.0.
//
// Exercises the installed binary end to end through std::system, checking
// the exit-code contract and the artifact files it writes.

#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "hybridmd/textio.hpp"

namespace fs = std::filesystem;

namespace {

struct CliResult {
    int code = -1;
    std::string out;
    std::string err;
};

fs::path work_dir() {
    static const fs::path dir = [] {
        fs::path d = fs::temp_directory_path() /
                     ("hybridmd_cli_test_" + std::to_string(::getpid()));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

CliResult run_cli(const std::string& args) {
    const fs::path out = work_dir() / "stdout.txt";
    const fs::path err = work_dir() / "stderr.txt";
    const std::string cmd = std::string(HYBRIDMD_CLI_PATH) + " " + args + " > " +
                            out.string() + " 2> " + err.string();
    const int raw = std::system(cmd.c_str());
    CliResult r;
    r.code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    auto slurp = [](const fs::path& p) {
        std::ifstream in(p);
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
}

std::string slurp_file(const fs::path& p) {
    std::ifstream in(p);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<double> csv_lev_column(const std::string& csv) {
    std::vector<double> lev;
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line); // header
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto fields = hybridmd::split(line, ',');
        REQUIRE(fields.size() == 6);
        double v = 0.0;
        REQUIRE(hybridmd::parse_double(fields[2], v));
        lev.push_back(v);
    }
    return lev;
}

} // namespace

TEST_CASE("gen-traj then run round trip", "[cli]") {
    const fs::path traj = work_dir() / "t.xyz";
    const fs::path csv = work_dir() / "out.csv";

    const CliResult gen =
        run_cli("gen-traj --frames 3 --atoms 8 --seed 1 -o " + traj.string());
    REQUIRE(gen.code == 0);

    const CliResult run = run_cli("run --traj " + traj.string() +
                                  " --segments '0-3;4-7' --distance classical --eigen classical -o " +
                                  csv.string());
    REQUIRE(run.code == 0);
    CHECK(run.out.find("classic tasks 1,2,3") != std::string::npos);
    CHECK(run.out.find("quantum candidates 4,5") != std::string::npos);

    const std::string content = slurp_file(csv);
    CHECK(content.rfind("frame,pair,lev,variant_distance,variant_eigen,elapsed_s\n", 0) == 0);
    CHECK(csv_lev_column(content).size() == 3); // frames x single pair
}

TEST_CASE("exact quantum run matches the classical lev column", "[cli]") {
    const fs::path traj = work_dir() / "t.xyz";
    const fs::path classical_csv = work_dir() / "c.csv";
    const fs::path quantum_csv = work_dir() / "q.csv";

    REQUIRE(run_cli("gen-traj --frames 2 --atoms 8 --seed 3 -o " + traj.string()).code == 0);
    REQUIRE(run_cli("run --traj " + traj.string() + " --segments '0-3;4-7' -o " +
                    classical_csv.string())
                .code == 0);
    REQUIRE(run_cli("run --traj " + traj.string() +
                    " --segments '0-3;4-7' --distance quantum --swap-mode exact -o " +
                    quantum_csv.string())
                .code == 0);

    const auto classical = csv_lev_column(slurp_file(classical_csv));
    const auto quantum = csv_lev_column(slurp_file(quantum_csv));
    REQUIRE(classical.size() == quantum.size());
    for (std::size_t i = 0; i < classical.size(); ++i)
        CHECK(std::abs(classical[i] - quantum[i]) < 1e-9);
}

TEST_CASE("missing trajectory exits 2 and names the path", "[cli]") {
    const CliResult r = run_cli("run --traj /nonexistent/nowhere.xyz --segments '0;1'");
    CHECK(r.code == 2);
    CHECK(r.err.find("/nonexistent/nowhere.xyz") != std::string::npos);
}

TEST_CASE("usage errors exit 2", "[cli]") {
    CHECK(run_cli("run --segments '0;1' --no-such-flag").code == 2);
    CHECK(run_cli("clearly-not-a-subcommand").code == 2);
    CHECK(run_cli("run").code == 2); // --segments is required
}

TEST_CASE("difftest distance exit codes and JSON artifact", "[cli]") {
    const fs::path report = work_dir() / "distance.json";
    const CliResult pass = run_cli("difftest distance --trials 100 --swap-mode exact --seed 7 -o " +
                                   report.string());
    CHECK(pass.code == 0);
    CHECK(pass.out.find("pass") != std::string::npos);

    const nlohmann::json j = nlohmann::json::parse(slurp_file(report));
    CHECK(j.at("task") == "distance");
    CHECK(j.at("mse").get<double>() < 1e-15);
    CHECK(j.at("verdict") == "pass");
    CHECK(j.at("residuals").size() == 100);

    const CliResult fail =
        run_cli("difftest distance --trials 100 --shots 16 --threshold 1e-6 --seed 7");
    CHECK(fail.code == 1);
    CHECK(fail.out.find("fail") != std::string::npos);
}

TEST_CASE("difftest eigen passes at its defaults", "[cli]") {
    const CliResult r = run_cli("difftest eigen --trials 10 --depth 2 --restarts 5 --seed 7");
    CHECK(r.code == 0);
    CHECK(r.out.find("pass") != std::string::npos);
}

TEST_CASE("sweep selects mitigation under readout noise", "[cli]") {
    const fs::path result = work_dir() / "sweep.json";
    const CliResult r = run_cli(
        "sweep distance --shots 8192 --noise 0.02 --mitigate off,on --trials 50 --seed 7 -o " +
        result.string());
    REQUIRE(r.code == 0);
    CHECK(r.out.find("best: cell") != std::string::npos);

    const nlohmann::json j = nlohmann::json::parse(slurp_file(result));
    const int best = j.at("best_index").get<int>();
    CHECK(j.at("cells").at(best).at("config").at("mitigate") == true);
}

TEST_CASE("sweep eigen prints a best cell and rejects empty axes", "[cli]") {
    const CliResult ok =
        run_cli("sweep eigen --depths 1,2 --optimizers nelder_mead --trials 5 --seed 7");
    CHECK(ok.code == 0);
    CHECK(ok.out.find("best: cell") != std::string::npos);

    CHECK(run_cli("sweep eigen --depths '' --trials 5").code == 2);
}

TEST_CASE("swap-demo prints the worked example", "[cli]") {
    const CliResult r = run_cli("swap-demo --u 1,0 --v 0,1 --mode exact");
    REQUIRE(r.code == 0);
    CHECK(r.out.find("P(0)") != std::string::npos);
    CHECK(r.out.find("0.75") != std::string::npos);
    CHECK(r.out.find("distance_quantum") != std::string::npos);
    CHECK(r.out.find("distance_classical") != std::string::npos);

    CHECK(run_cli("swap-demo --u 0,0 --v 1,0").code == 2);
}

TEST_CASE("help lists the flags for each subcommand", "[cli]") {
    CHECK(run_cli("--help").code == 0);
    const CliResult run_help = run_cli("run --help");
    CHECK(run_help.code == 0);
    for (const char* flag : {"--traj", "--segments", "--distance", "--eigen", "--swap-mode",
                             "--shots", "--seed", "--jobs", "--config", "--timing"})
        CHECK(run_help.out.find(flag) != std::string::npos);

    const CliResult sweep_help = run_cli("sweep distance --help");
    CHECK(sweep_help.out.find("--mitigate") != std::string::npos);
    CHECK(sweep_help.out.find("--shots") != std::string::npos);
}

TEST_CASE("config file supplies flags and the command line wins", "[cli]") {
    const fs::path traj = work_dir() / "cfg_t.xyz";
    REQUIRE(run_cli("gen-traj --frames 2 --atoms 4 --seed 9 -o " + traj.string()).code == 0);

    const fs::path cfg = work_dir() / "run.cfg";
    {
        std::ofstream out(cfg);
        out << "traj=" << traj.string() << "\n";
        out << "segments=0-1;2-3\n";
        out << "eigen=classical\n";
        out << "output=" << (work_dir() / "cfg_a.csv").string() << "\n";
    }
    REQUIRE(run_cli("run --config " + cfg.string()).code == 0);
    const std::string from_file = slurp_file(work_dir() / "cfg_a.csv");

    REQUIRE(run_cli("run --config " + cfg.string() + " -o " +
                    (work_dir() / "cfg_b.csv").string())
                .code == 0);
    CHECK(slurp_file(work_dir() / "cfg_b.csv") == from_file);

    CHECK(run_cli("run --config /nonexistent/nope.cfg --segments '0;1'").code == 2);
}

TEST_CASE("seeded runs are byte identical across invocations and workers", "[cli]") {
    const fs::path traj = work_dir() / "det_t.xyz";
    REQUIRE(run_cli("gen-traj --frames 3 --atoms 8 --seed 5 -o " + traj.string()).code == 0);

    const std::string base = "run --traj " + traj.string() +
                             " --segments '0-3;4-7' --distance quantum --swap-mode sampled "
                             "--shots 512 --seed 11 -o ";
    const fs::path a = work_dir() / "det_a.csv";
    const fs::path b = work_dir() / "det_b.csv";
    const fs::path c = work_dir() / "det_c.csv";
    REQUIRE(run_cli(base + a.string() + " --jobs 1").code == 0);
    REQUIRE(run_cli(base + b.string() + " --jobs 1").code == 0);
    REQUIRE(run_cli(base + c.string() + " --jobs 4").code == 0);
    CHECK(slurp_file(a) == slurp_file(b));
    CHECK(slurp_file(a) == slurp_file(c));
}

TEST_CASE("HYBRIDMD_SEED is a fallback for --seed", "[cli]") {
    const fs::path from_env = work_dir() / "env.xyz";
    const fs::path from_flag = work_dir() / "flag.xyz";
    REQUIRE(run_cli("gen-traj --frames 1 --atoms 2 --seed 99 -o " + from_flag.string()).code == 0);

    // std::system runs through sh, so the assignment prefixes the call.
    const std::string cmd = "HYBRIDMD_SEED=99 " + std::string(HYBRIDMD_CLI_PATH) +
                            " gen-traj --frames 1 --atoms 2 -o " + from_env.string() +
                            " > /dev/null 2>&1";
    REQUIRE(WEXITSTATUS(std::system(cmd.c_str())) == 0);
    CHECK(slurp_file(from_env) == slurp_file(from_flag));
}

TEST_CASE("singular readout noise is a configuration error", "[cli]") {
    const CliResult r =
        run_cli("difftest distance --trials 5 --noise-p01 0.6 --noise-p10 0.5 --seed 1");
    CHECK(r.code == 2);
}

TEST_CASE("difftest e2e through the CLI", "[cli]") {
    const CliResult r = run_cli(
        "difftest e2e --gen-frames 3 --gen-atoms 4 --segments '0-1;2-3' --distance quantum "
        "--eigen quantum --swap-mode exact --seed 7");
    CHECK(r.code == 0);
    CHECK(r.out.find("end_to_end") != std::string::npos);
}
