#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string output;
};

RunResult run_cli(const std::string& args) {
    fs::path log = fs::temp_directory_path() / "waveritz_cli_out.txt";
    std::string cmd = std::string(WAVERITZ_CLI_PATH) + " " + args + " > " + log.string() + " 2>&1";
    int rc = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WEXITSTATUS(rc);
    std::ifstream in(log);
    r.output = {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    return r;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

fs::path work_dir(const std::string& name) {
    fs::path dir = fs::temp_directory_path() / ("waveritz_cli_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

bool contains_value(const std::string& text, double expect, double tol) {
    // scan every numeric token in the text
    size_t i = 0;
    while (i < text.size()) {
        if (std::isdigit(static_cast<unsigned char>(text[i])) ||
            (text[i] == '-' && i + 1 < text.size() &&
             std::isdigit(static_cast<unsigned char>(text[i + 1])))) {
            size_t len = 0;
            double v = std::stod(text.substr(i), &len);
            if (std::abs(v - expect) < tol) return true;
            i += len;
        } else {
            ++i;
        }
    }
    return false;
}

} // namespace

TEST_CASE("solve prints the level-2 energies and writes the document") {
    fs::path dir = work_dir("solve");
    RunResult r = run_cli("solve --genus 4 --omega 1 --M 2 --states 6 --out " + dir.string());
    CHECK(r.exit_code == 0);
    CHECK(contains_value(r.output, 2.500673509869070, 1e-8));
    CHECK(contains_value(r.output, 5.509890004116425, 1e-8));
    CHECK(fs::exists(dir / "solution_M2.json"));
    CHECK(fs::exists(dir / "cache" / "dbfilter_p4.txt"));
    CHECK(fs::exists(dir / "cache" / "conntab_p4.txt"));
}

TEST_CASE("solve at M=0 reproduces the coarsest ground energy") {
    fs::path dir = work_dir("solve0");
    RunResult r = run_cli("solve --M 0 --out " + dir.string());
    CHECK(r.exit_code == 0);
    CHECK(contains_value(r.output, 0.517112256390810, 1e-8));
}

TEST_CASE("invalid genus exits 1 with a usage message") {
    RunResult r = run_cli("solve --genus 0 --M 1");
    CHECK(r.exit_code == 1);
    CHECK(r.output.find("genus") != std::string::npos);
    CHECK(r.output.find("Usage") != std::string::npos);
}

TEST_CASE("unknown subcommand exits 1") {
    RunResult r = run_cli("frobnicate");
    CHECK(r.exit_code == 1);
}

TEST_CASE("unwritable output directory exits 3") {
    RunResult r = run_cli("table --M 1 --out /proc/waveritz_unwritable");
    CHECK(r.exit_code == 3);
    CHECK(r.output.find("i/o error") != std::string::npos);
}

TEST_CASE("predict emits per-k csv and the predicted energy") {
    fs::path dir = work_dir("predict");
    RunResult r = run_cli("predict --M 0 --states 1 --out " + dir.string());
    CHECK(r.exit_code == 0);
    fs::path csv = dir / "predict_M0_state0.csv";
    REQUIRE(fs::exists(csv));
    std::string content = slurp(csv);
    CHECK(content.rfind("k,x,W,R,lambda,alpha", 0) == 0);
    CHECK(fs::exists(dir / "predict_M0_state0.json"));
}

TEST_CASE("predict --secondary adds the averaged beta column") {
    fs::path dir = work_dir("predict2");
    RunResult r = run_cli("predict --M 1 --states 1 --secondary --out " + dir.string());
    CHECK(r.exit_code == 0);
    fs::path csv = dir / "predict_M1_state0_secondary.csv";
    REQUIRE(fs::exists(csv));
    std::string content = slurp(csv);
    CHECK(content.rfind("k,x,W,R,lambda,beta,beta_avg", 0) == 0);
    CHECK(r.output.find("rms(beta-dexact)") != std::string::npos);
}

TEST_CASE("table emits deterministic csv matching the reference cells") {
    fs::path dir = work_dir("table");
    RunResult r = run_cli("table --M 2 --states 6 --out " + dir.string());
    CHECK(r.exit_code == 0);
    fs::path csv = dir / "energy_table.csv";
    REQUIRE(fs::exists(csv));
    std::string first = slurp(csv);
    CHECK(first.rfind("row_label,state0", 0) == 0);
    CHECK(contains_value(first, 0.500808994455534, 1e-8));

    RunResult r2 = run_cli("table --M 2 --states 6 --out " + dir.string());
    CHECK(r2.exit_code == 0);
    CHECK(slurp(csv) == first); // byte-identical rerun
}

TEST_CASE("scaling reports the exact kinetic slope") {
    fs::path dir = work_dir("scaling");
    RunResult r = run_cli("scaling --quantity Wkin --m-min 1 --m-max 3 --out " + dir.string());
    CHECK(r.exit_code == 0);
    REQUIRE(fs::exists(dir / "scaling_summary.csv"));
    std::string summary = slurp(dir / "scaling_summary.csv");
    CHECK(summary.find("Wkin,2,") != std::string::npos);
    CHECK(fs::exists(dir / "scaling_Wkin.csv"));
}

TEST_CASE("figdata 5 aligns the coefficient columns") {
    fs::path dir = work_dir("fig5");
    RunResult r = run_cli("figdata --fig 5 --M 3 --states 2 --out " + dir.string());
    CHECK(r.exit_code == 0);
    fs::path csv = dir / "fig5_coeffs_M3.csv";
    REQUIRE(fs::exists(csv));
    CHECK(slurp(csv).rfind("k,x,d_exact,d_eig,alpha,beta,beta_avg", 0) == 0);
}

TEST_CASE("figdata with svg writes the chart") {
    fs::path dir = work_dir("fig1");
    RunResult r = run_cli("figdata --fig 1 --M 3 --svg --out " + dir.string());
    CHECK(r.exit_code == 0);
    CHECK(fs::exists(dir / "fig1_W.csv"));
    CHECK(fs::exists(dir / "fig1_W.svg"));
}

TEST_CASE("config file supplies defaults, flags win") {
    fs::path dir = work_dir("config");
    fs::path conf = dir / "run.conf";
    {
        std::ofstream out(conf);
        out << "# comment\n";
        out << "M = 1\n";
        out << "states = 2\n";
    }
    RunResult r = run_cli("solve --config " + conf.string() + " --states 3 --out " + dir.string());
    CHECK(r.exit_code == 0);
    CHECK(fs::exists(dir / "solution_M1.json")); // M from the file
    CHECK(r.output.find("E[1]") != std::string::npos);
}
