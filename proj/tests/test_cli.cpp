#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "cli/commands.hpp"
#include "cli/run_config.hpp"
#include "dicke/errors.hpp"

using namespace dicke;
using namespace dicke::cli;
namespace fs = std::filesystem;

namespace {

const fs::path kRoot = fs::temp_directory_path() / ("dicke_cli_test_" + std::to_string(::getpid()));

struct RemoveRoot {
    ~RemoveRoot() {
        std::error_code ec;
        fs::remove_all(kRoot, ec);
    }
} remove_root;

fs::path scratch(const std::string& name) {
    const fs::path d = kRoot / name;
    fs::remove_all(d);
    return d;
}

int run_cli(std::vector<std::string> args) {
    args.insert(args.begin(), "dicke");
    std::vector<char*> argv;
    for (auto& a : args)
        argv.push_back(a.data());
    argv.push_back(nullptr);
    return cli_main(static_cast<int>(args.size()), argv.data());
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

std::vector<fs::path> csv_files(const fs::path& dir) {
    std::vector<fs::path> out;
    for (const auto& e : fs::directory_iterator(dir))
        if (e.path().extension() == ".csv")
            out.push_back(e.path());
    std::sort(out.begin(), out.end());
    return out;
}

// Runs the command, then reruns every CSV through --config and compares bytes
void check_round_trip(const std::string& name, std::vector<std::string> args) {
    const fs::path a = scratch(name + "_a");
    args.push_back("--output-dir");
    args.push_back(a.string());
    REQUIRE(run_cli(args) == 0);
    const auto files = csv_files(a);
    REQUIRE(!files.empty());
    for (const auto& f : files) {
        const fs::path b = scratch(name + "_b");
        REQUIRE(run_cli({"--config", f.string(), "--output-dir", b.string()}) == 0);
        CAPTURE(f);
        REQUIRE(fs::exists(b / f.filename()));
        CHECK(slurp(b / f.filename()) == slurp(f));
    }
}

RunConfig resolved(Settings s) {
    RunConfig cfg;
    apply_settings(cfg, s);
    resolve(cfg);
    return cfg;
}

} // namespace

TEST_CASE("command names") {
    for (Command c : {Command::Spectrum, Command::Softmode, Command::Sweep, Command::Exponent, Command::Thermal,
                      Command::OracleCheck})
        CHECK(parse_command(to_string(c)) == c);
    CHECK(std::string(to_string(Command::OracleCheck)) == "oracle-check");
    CHECK_FALSE(parse_command("plot").has_value());
}

TEST_CASE("list and range parsing") {
    CHECK(parse_list("0.2, 0.4,1e-3") == std::vector<double>{0.2, 0.4, 1e-3});
    CHECK_THROWS_AS(parse_list("0.2,x"), InvalidParameter);
    const std::vector<double> r = parse_range("0.2:1.8:0.1", true);
    REQUIRE(r.size() == 16);
    CHECK(r.front() == 0.2);
    CHECK(r[1] == 0.3);
    CHECK(r.back() == 1.8);
    CHECK(std::find(r.begin(), r.end(), 1.0) == r.end());
    CHECK(parse_range("0.5:1.5:0.5", false).size() == 3);
    CHECK_THROWS_AS(parse_range("0.5:0.2:0.1", true), InvalidParameter);
}

TEST_CASE("settings text") {
    const Settings plain = parse_settings("# comment\n\ndelta_a = 3\n  kappa=0.25  \n");
    CHECK(plain.at("delta_a") == "3");
    CHECK(plain.at("kappa") == "0.25");
    CHECK_THROWS_AS(parse_settings("delta_a 3\n"), InvalidParameter);

    // embedded lines win and the CSV body is ignored
    const Settings csv = parse_settings("# config: command = sweep\n# config: s = 0.6\n# cell: x\neps,n_a\n1,2\n");
    CHECK(csv.size() == 2);
    CHECK(csv.at("command") == "sweep");
}

TEST_CASE("apply and resolve") {
    RunConfig cfg;
    CHECK_THROWS_AS(apply_settings(cfg, {{"colour", "red"}}), InvalidParameter);
    CHECK_THROWS_AS(apply_settings(cfg, {{"kappa", "half"}}), InvalidParameter);
    CHECK_THROWS_AS(apply_settings(cfg, {{"command", "plot"}}), InvalidParameter);

    const RunConfig ex = resolved({});
    CHECK(ex.command == Command::Exponent);
    CHECK(ex.s.size() == 16);
    CHECK(ex.params.delta_a == 2.0);
    CHECK(ex.params.kappa == 0.5);
    CHECK(ex.params.bath.gamma == 0.1);
    CHECK(ex.T == std::vector<double>{0.0});

    const RunConfig sp = resolved({{"command", "spectrum"}});
    CHECK(sp.y == std::vector<double>{0.0, 0.5, 0.99});
    CHECK(sp.s == std::vector<double>{0.8});

    const RunConfig th = resolved({{"command", "thermal"}});
    CHECK(th.T == std::vector<double>{0.5, 1.0, 2.0});
    CHECK(th.mu.front() < 0.0);

    const RunConfig pw = resolved({{"command", "exponent"}, {"s", "1.5"}, {"critical_window", "true"}});
    CHECK(pw.window.eps_min == 1e-9);

    CHECK_THROWS_AS(resolved({{"s", "1"}}), InvalidParameter);
    CHECK_THROWS_AS(resolved({{"command", "sweep"}, {"y", "1.0"}}), InvalidParameter);
    CHECK_THROWS_AS(resolved({{"command", "thermal"}, {"mu", "0"}}), InvalidParameter);
    CHECK_THROWS_AS(resolved({{"eps_max", "0.5"}}), InvalidParameter);
    CHECK_THROWS_AS(resolved({{"points", "4"}}), InvalidParameter);
    CHECK_THROWS_AS(resolved({{"command", "oracle-check"}, {"n_modes", "100"}}), InvalidParameter);
    CHECK_THROWS_AS(resolved({{"command", "oracle-check"}, {"T", "1"}, {"mu", "-0.1"}}), InvalidParameter);
}

TEST_CASE("config lines are ordered and exact") {
    const RunConfig cfg = resolved({{"command", "sweep"}, {"s", "0.6"}, {"kappa", "0.1"}});
    const std::vector<std::string> lines = config_lines(cfg);
    REQUIRE(!lines.empty());
    CHECK(lines.front() == "command = sweep");
    CHECK(std::find(lines.begin(), lines.end(), "kappa = 0.10000000000000001") != lines.end());
    for (const auto& l : lines) {
        CHECK(l.rfind("output_dir", 0) != 0);
        CHECK(l.rfind("workers", 0) != 0);
    }
    CHECK(config_lines(cfg) == lines);
}

TEST_CASE("property: every CSV reproduces byte-for-byte from its embedded config") {
    check_round_trip("spectrum", {"spectrum", "--y", "0,0.5,0.99", "--svg"});
    check_round_trip("softmode", {"softmode", "--kappa", "2", "--s", "0.4,1.2", "--softmode-points", "40"});
    check_round_trip("sweep", {"sweep", "--s", "0.6,1.5", "--points", "8", "--mode", "atom"});
    check_round_trip("exponent", {"exponent", "--s", "0.3,1.5", "--points", "8"});
    check_round_trip("thermal", {"thermal", "--gamma", "0.03", "--T", "0.5,1"});
}

TEST_CASE("output does not depend on the worker count") {
    const fs::path a = scratch("w1"), b = scratch("w8");
    REQUIRE(run_cli({"sweep", "--s", "0.8,1.2", "--points", "10", "--workers", "1", "--output-dir", a.string()}) == 0);
    REQUIRE(run_cli({"sweep", "--s", "0.8,1.2", "--points", "10", "--workers", "8", "--output-dir", b.string()}) == 0);
    for (const auto& f : csv_files(a))
        CHECK(slurp(f) == slurp(b / f.filename()));
}

TEST_CASE("flags override the config file") {
    const fs::path d = scratch("precedence");
    fs::create_directories(d);
    {
        std::ofstream f(d / "run.cfg");
        f << "command = thermal\ndelta_a = 3\ngamma = 0.5\nT = 1\nmu = -0.01\n";
    }
    REQUIRE(run_cli({"--config", (d / "run.cfg").string(), "--gamma", "0.03", "--output-dir", (d / "out").string()}) == 0);
    const auto files = csv_files(d / "out");
    REQUIRE(files.size() == 1);
    const std::string text = slurp(files.front());
    CHECK(text.find("# config: gamma = 0.029999999999999999\n") != std::string::npos);
    CHECK(text.find("# config: delta_a = 3\n") != std::string::npos);
}

TEST_CASE("artifacts") {
    const fs::path d = scratch("artifacts");
    REQUIRE(run_cli({"softmode", "--s", "0.8", "--softmode-points", "20", "--svg", "--output-dir", d.string()}) == 0);
    CHECK(fs::exists(d / "softmode_s0.8.csv"));
    CHECK(fs::exists(d / "softmode.svg"));
    const std::string csv = slurp(d / "softmode_s0.8.csv");
    CHECK(csv.find("y,re_z,im_z\n") != std::string::npos);

    const fs::path o = scratch("oracle");
    REQUIRE(run_cli({"oracle-check", "--s", "0.8", "--n-modes", "500", "--output-dir", o.string()}) == 0);
    const std::string oc = slurp(o / "oracle_check.csv");
    CHECK(oc.find("s,y,n_keldysh,n_oracle,rel_diff\n") != std::string::npos);
}

TEST_CASE("exit codes") {
    const std::string out = scratch("codes").string();
    CHECK(run_cli({"plot", "--output-dir", out}) == 2);
    CHECK(run_cli({"sweep", "--kappa", "abc", "--output-dir", out}) == 2);
    CHECK(run_cli({"sweep", "--s", "1", "--output-dir", out}) == 2);
    CHECK(run_cli({"thermal", "--T", "1", "--mu", "0", "--output-dir", out}) == 2);
    CHECK(run_cli({"sweep", "--no-such-flag", "--output-dir", out}) == 2);
    CHECK(run_cli({"--config", "/nonexistent/run.cfg"}) == 2);
    CHECK(run_cli({"sweep", "--s", "0.8", "--eps-min", "1e-13", "--eps-max", "1e-12", "--points", "8",
                   "--output-dir", out}) == 3);
    CHECK(run_cli({"sweep", "--s", "0.8", "--points", "8", "--output-dir", out}) == 0);
}
