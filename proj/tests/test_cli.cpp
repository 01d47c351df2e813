// End-to-end checks of the installed binary: exit-status contract, stderr
// messages, flag/config precedence. The command logic itself is covered in
// test_commands.cpp; here we drive the real executable.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct RunResult {
    int status;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path& p) {
    std::ifstream is(p);
    std::stringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

RunResult run(const std::string& args) {
    const fs::path out = fs::temp_directory_path() / "ssd_cli_stdout.txt";
    const fs::path err = fs::temp_directory_path() / "ssd_cli_stderr.txt";
    const std::string cmd = std::string(SSD_CLI_PATH) + " " + args + " > " +
                            out.string() + " 2> " + err.string();
    const int rc = std::system(cmd.c_str());
    RunResult r;
    r.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
}

const std::string kReferencePoint =
    "--gamma_h 1 --gamma_c 1 --lambda 1 --t_h 20 --t_c 5 --w_h 4 --w_c 2";

}  // namespace

TEST_CASE("eval succeeds and reports the first-law residual") {
    const RunResult r = run("eval " + kReferencePoint);
    REQUIRE(r.status == 0);
    const json j = json::parse(r.out);
    CHECK(j["power"].get<double>() == doctest::Approx(0.026296540046699).epsilon(1e-11));
    CHECK(j["first_law_residual"].get<double>() < 1e-12);
}

TEST_CASE("eval exit status 2 on validation errors") {
    const RunResult r =
        run("eval --gamma_h 1 --gamma_c 1 --lambda 1 --t_h 20 --t_c -1 --w_h 4 --w_c 2");
    CHECK(r.status == 2);
    CHECK(r.err.find("t_c must be positive") != std::string::npos);
}

TEST_CASE("config file plus flag override") {
    const fs::path cfg = fs::temp_directory_path() / "ssd_cli_config.json";
    {
        std::ofstream os(cfg);
        os << R"({"gamma_h":1,"gamma_c":1,"lambda":1,"t_h":20,"t_c":5,"w_h":4,"w_c":2})";
    }
    // override w_c to the reversible point: all fluxes vanish
    const RunResult r = run("eval --config " + cfg.string() + " --w_c 1");
    REQUIRE(r.status == 0);
    const json j = json::parse(r.out);
    CHECK(std::abs(j["power"].get<double>()) < 1e-15);
    CHECK(std::abs(j["qdot_h"].get<double>()) < 1e-15);
    CHECK(std::abs(j["qdot_c"].get<double>()) < 1e-15);
    fs::remove(cfg);
}

TEST_CASE("optimize prints matching closed-form and numeric optima") {
    const RunResult r = run("optimize --objective ef --fix wh --fixed_value 1 "
                            "--tau 0.5 --gamma 1");
    REQUIRE(r.status == 0);
    const json j = json::parse(r.out);
    CHECK(j["closed_form"]["free_frequency"].get<double>() ==
          doctest::Approx(0.618033988750).epsilon(1e-10));
    CHECK(j["closed_form"]["efficiency"].get<double>() ==
          doctest::Approx(0.381966011250).epsilon(1e-10));
    CHECK(j["relative_difference"]["free_frequency"].get<double>() < 1e-8);
}

TEST_CASE("optimize rejects the simultaneous two-frequency request") {
    const RunResult r =
        run("optimize --objective ef --fix both --tau 0.5 --gamma 1");
    CHECK(r.status == 2);
    CHECK(r.err.find("trivial") != std::string::npos);
    CHECK(r.err.find("surface") != std::string::npos);
}

TEST_CASE("optimize rejects tau outside the engine regime") {
    const RunResult r = run("optimize --objective ef --fix wh --tau 1.2 --gamma 1");
    CHECK(r.status == 2);
    CHECK(r.err.find("tau") != std::string::npos);
}

TEST_CASE("sweep writes the figure CSV and meta sidecar") {
    const fs::path out = fs::temp_directory_path() / "ssd_cli_fig4.csv";
    const RunResult r = run("sweep --kind fig4 --count 11 --out " + out.string());
    REQUIRE(r.status == 0);
    const json j = json::parse(r.out);
    CHECK(j["rows"].get<int>() == 11);
    CHECK(fs::exists(out));
    CHECK(fs::exists(out.string() + ".meta.json"));
    std::ifstream is(out);
    std::string header;
    std::getline(is, header);
    CHECK(header.rfind("eta_c,", 0) == 0);
    fs::remove(out);
    fs::remove(out.string() + ".meta.json");
}

TEST_CASE("sweep exit status 3 on unwritable output") {
    const RunResult r = run("sweep --kind fig2 --count 5 --out /nonexistent_zz/f.csv");
    CHECK(r.status == 3);
    CHECK(r.err.find("cannot open output file") != std::string::npos);
}

TEST_CASE("sweep exit status 2 on unknown kind") {
    const RunResult r = run("sweep --kind fig7 --count 5 --out /tmp/ssd_cli_x.csv");
    CHECK(r.status == 2);
}

TEST_CASE("surface run with explicit bounds") {
    const fs::path out = fs::temp_directory_path() / "ssd_cli_surface.csv";
    const RunResult r = run("surface --gamma_h 1 --gamma_c 1 --lambda 1 --t_h 20 "
                            "--t_c 5 --wh_min 20 --wh_max 50 --wc_min 10 --wc_max 20 "
                            "--coarse_n 31 --out " + out.string());
    REQUIRE(r.status == 0);
    const json j = json::parse(r.out);
    CHECK(j["refined"].get<bool>());
    CHECK(j["value"].get<double>() == doctest::Approx(0.722035193244).epsilon(1e-9));
    CHECK(fs::exists(out));
    fs::remove(out);
}

TEST_CASE("missing subcommand is a usage error") {
    const RunResult r = run("");
    CHECK(r.status != 0);
}
