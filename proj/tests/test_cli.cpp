#include "doctest.h"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#ifndef ISOFACTOR_CLI_PATH
#error "ISOFACTOR_CLI_PATH must point at the CLI binary"
#endif

namespace {

namespace fs = std::filesystem;

fs::path work_dir() {
    fs::path dir = fs::temp_directory_path() / "isofactor_cli_tests";
    fs::create_directories(dir);
    return dir;
}

struct RunResult {
    int exit_code;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

RunResult run_cli(const std::string& args, const std::string& env_prefix = "") {
    fs::path dir = work_dir();
    fs::path out = dir / "stdout.txt";
    fs::path err = dir / "stderr.txt";
    std::string cmd = "cd '" + dir.string() + "' && " + env_prefix + " '" + ISOFACTOR_CLI_PATH +
                      "' " + args + " > stdout.txt 2> stderr.txt";
    int status = std::system(cmd.c_str());
    int code = (status >= 0 && WIFEXITED(status)) ? WEXITSTATUS(status) : -1;
    return {code, slurp(out), slurp(err)};
}

// Small grids keep every invocation fast.
const std::string osc_grid = "--grid-min -8 --grid-max 8 --grid-n 2001";

} // namespace

TEST_CASE("cli: catalog prints the superpotential table") {
    RunResult r = run_cli("catalog");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"beta\": \"l/r - 1/l\"") != std::string::npos);
    CHECK(r.out.find("\"beta\": \"x\"") != std::string::npos);
}

TEST_CASE("cli: oscillator family passes and writes artifacts") {
    RunResult r = run_cli("family --system oscillator --scheme mielnik --gamma 2 "
                          "--levels 3 " + osc_grid);
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"pass\": true") != std::string::npos);
    fs::path csv = work_dir() / "family_oscillator_mielnik.csv";
    REQUIRE(fs::exists(csv));
    std::string head = slurp(csv).substr(0, 60);
    CHECK(head.find("x,V,V_transformed,missing_state,mapped_1") == 0);
    CHECK(fs::exists(work_dir() / "family_oscillator_mielnik.gp"));
    CHECK(fs::exists(work_dir() / "family_oscillator_mielnik.json"));
}

TEST_CASE("cli: out-of-domain gamma exits 2 and cites the bound") {
    RunResult r = run_cli("family --system oscillator --scheme mielnik --gamma 0.5 " + osc_grid);
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("sqrt(pi)/2") != std::string::npos);
}

TEST_CASE("cli: verify passes clean and fails the corrupted negative control") {
    RunResult clean = run_cli("verify --system oscillator --levels 3 " + osc_grid);
    CHECK(clean.exit_code == 0);

    RunResult bad = run_cli("verify --system oscillator --levels 3 --corrupt-beta " + osc_grid);
    CHECK(bad.exit_code == 1);
    CHECK(bad.out.find("\"pass\": false") != std::string::npos);
}

TEST_CASE("cli: two-step chain passes") {
    RunResult r = run_cli("chain --epsilons=-1,-3 --levels 5 " + osc_grid);
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"pass\": true") != std::string::npos);
    CHECK(r.out.find("-3.0") != std::string::npos);
}

TEST_CASE("cli: chain rejects a non-chain energy") {
    RunResult r = run_cli("chain --epsilons=-1,-2 --levels 5 " + osc_grid);
    CHECK(r.exit_code == 2);
}

TEST_CASE("cli: identical config gives byte-identical reports") {
    const std::string args = "family --system oscillator --scheme mielnik --gamma 2 "
                             "--levels 3 " + osc_grid;
    RunResult a = run_cli(args);
    std::string first = slurp(work_dir() / "family_oscillator_mielnik.json");
    RunResult b = run_cli(args);
    std::string second = slurp(work_dir() / "family_oscillator_mielnik.json");
    CHECK(a.exit_code == 0);
    CHECK(b.exit_code == 0);
    CHECK(a.out == b.out);
    CHECK(first == second);
    CHECK(!first.empty());
}

TEST_CASE("cli: config file applies and flags take precedence") {
    fs::path cfg = work_dir() / "run.cfg";
    {
        std::ofstream f(cfg);
        f << "system=oscillator\nscheme=mielnik\ngamma=5\nlevels=3\n"
          << "grid-min=-8\ngrid-max=8\ngrid-n=2001\n";
    }
    RunResult from_file = run_cli("family --config run.cfg");
    CHECK(from_file.exit_code == 0);
    CHECK(from_file.out.find("\"family_parameter\": 5.0") != std::string::npos);

    RunResult overridden = run_cli("family --config run.cfg --gamma 2");
    CHECK(overridden.exit_code == 0);
    CHECK(overridden.out.find("\"family_parameter\": 2.0") != std::string::npos);
}

TEST_CASE("cli: gamma sweep emits one report per member, merged in order") {
    RunResult r = run_cli("family --system oscillator --scheme mielnik "
                          "--gamma 1.0:2.0:0.5 --levels 3 " + osc_grid);
    CHECK(r.exit_code == 0);
    size_t p1 = r.out.find("\"family_parameter\": 1.0");
    size_t p15 = r.out.find("\"family_parameter\": 1.5");
    size_t p2 = r.out.find("\"family_parameter\": 2.0");
    REQUIRE(p1 != std::string::npos);
    REQUIRE(p15 != std::string::npos);
    REQUIRE(p2 != std::string::npos);
    CHECK(p1 < p15);
    CHECK(p15 < p2);
    CHECK(fs::exists(work_dir() / "family_oscillator_mielnik_sweep.json"));
    CHECK(fs::exists(work_dir() / "family_oscillator_mielnik_1p5.csv"));
}

TEST_CASE("cli: generalized hydrogen at k=0, lambda=0 matches the particular partner") {
    const std::string grid = "--grid-min 0.01 --grid-max 40 --grid-n 4001";
    RunResult gen = run_cli("family --system hydrogen --l 1 --scheme generalized "
                            "--k 0 --lambda 0 --levels 3 " + grid);
    std::string gen_csv = slurp(work_dir() / "family_hydrogen_generalized.csv");
    RunResult part = run_cli("family --system hydrogen --l 1 --scheme sdih --levels 3 " + grid);
    std::string sdih_csv = slurp(work_dir() / "family_hydrogen_sdih.csv");
    CHECK(gen.exit_code == 0);
    CHECK(part.exit_code == 0);

    // Compare the transformed-potential column line by line.
    std::stringstream ga(gen_csv), sa(sdih_csv);
    std::string gl, sl;
    std::getline(ga, gl);
    std::getline(sa, sl);
    double worst = 0.0;
    while (std::getline(ga, gl) && std::getline(sa, sl)) {
        auto col = [](const std::string& line, int idx) {
            std::stringstream ss(line);
            std::string tok;
            for (int i = 0; i <= idx; ++i) std::getline(ss, tok, ',');
            return std::stod(tok);
        };
        worst = std::max(worst, std::fabs(col(gl, 2) - col(sl, 2)));
    }
    CHECK(worst <= 1e-9);
}

TEST_CASE("cli: ISOFACTOR_OUT_DIR is the default output root") {
    fs::path sub = work_dir() / "env_root";
    fs::remove_all(sub);
    fs::create_directories(sub);
    RunResult r = run_cli("chain --levels 5 " + osc_grid,
                          "ISOFACTOR_OUT_DIR='" + sub.string() + "'");
    CHECK(r.exit_code == 0);
    CHECK(fs::exists(sub / "chain.json"));
}
