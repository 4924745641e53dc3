#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "fraclab/cli.hpp"

using namespace fraclab;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const auto p = fs::temp_directory_path() / ("fraclab_cli_" + name);
    fs::remove_all(p);
    return p;
}

std::vector<std::string> lines_of(const fs::path& p) {
    std::ifstream is(p);
    std::vector<std::string> out;
    for (std::string l; std::getline(is, l);) out.push_back(l);
    return out;
}

std::string slurp(const fs::path& p) {
    std::ifstream is(p);
    std::stringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

struct Proc {
    int status = -1;
    std::string output;
};

Proc run_binary(const std::string& args) {
    Proc p;
    const std::string cmd = std::string(FRACLAB_CLI_PATH) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return p;
    std::array<char, 512> buf{};
    while (fgets(buf.data(), static_cast<int>(buf.size()), pipe)) p.output += buf.data();
    const int raw = pclose(pipe);
    p.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    return p;
}

}  // namespace

TEST(Simulate, DefaultsWriteEnergyCsv) {
    cli::ExperimentConfig c;
    c.out = scratch("defaults").string();
    std::ostringstream out, err;
    ASSERT_EQ(cli::cmd_simulate(c, out, err), 0) << err.str();
    const auto rows = lines_of(fs::path(c.out) / "energy.csv");
    ASSERT_EQ(rows.size(), 130u);
    EXPECT_EQ(rows.front(), "t,E,caputo_E,E_omega");
    EXPECT_EQ(rows.size() - 1, 129u);
    EXPECT_TRUE(fs::exists(fs::path(c.out) / "snap_000000.fpf"));
    EXPECT_TRUE(fs::exists(fs::path(c.out) / "snap_000128.fpf"));
    const auto j = nlohmann::json::parse(slurp(fs::path(c.out) / "summary.json"));
    EXPECT_TRUE(j["clean"].get<bool>());
    EXPECT_EQ(j["steps_used"].get<int>(), 128);
    fs::remove_all(c.out);
}

TEST(Simulate, CahnHilliardNeedsMeanZero) {
    cli::ExperimentConfig c;
    c.model = "ch";
    c.init = "0.2 + 0.05*cos(x)";
    c.out = scratch("ch_mean").string();
    std::ostringstream out, err;
    EXPECT_NE(cli::cmd_simulate(c, out, err), 0);
    EXPECT_NE(err.str().find("mean-zero"), std::string::npos);
}

TEST(Simulate, GradedAlphaPoint3Clean) {
    cli::ExperimentConfig c;
    c.alpha = 0.3;
    c.out = scratch("graded03").string();
    std::ostringstream out, err;
    ASSERT_EQ(cli::cmd_simulate(c, out, err), 0) << err.str();
    const auto j = nlohmann::json::parse(slurp(fs::path(c.out) / "summary.json"));
    EXPECT_TRUE(j["clean"].get<bool>());
    EXPECT_TRUE(j["violations"]["energy_bound"].empty());
    fs::remove_all(c.out);
}

TEST(Simulate, DeterministicWithRandomInit) {
    cli::ExperimentConfig c;
    c.init = "0.05*rand()";
    c.steps = 32;
    std::string first;
    for (int rep = 0; rep < 2; ++rep) {
        c.out = scratch("det" + std::to_string(rep)).string();
        std::ostringstream out, err;
        ASSERT_EQ(cli::cmd_simulate(c, out, err), 0) << err.str();
        const auto csv = slurp(fs::path(c.out) / "energy.csv");
        if (rep == 0) first = csv;
        else EXPECT_EQ(csv, first);
        fs::remove_all(c.out);
    }
    c.seed = 43;
    c.out = scratch("det_other").string();
    std::ostringstream out, err;
    ASSERT_EQ(cli::cmd_simulate(c, out, err), 0);
    EXPECT_NE(slurp(fs::path(c.out) / "energy.csv"), first);
    fs::remove_all(c.out);
}

TEST(Simulate, InitFromFpf) {
    const auto dir = scratch("fpf");
    fs::create_directories(dir);
    const spectral::TorusGrid g(1, 32);
    const auto f = spectral::Field::from_function(g, [](double x, double, double) { return 0.1 * std::sin(x); });
    spectral::write_fpf((dir / "init.fpf").string(), f, 0.5, 0.1);
    cli::ExperimentConfig c;
    c.n = 32;
    c.steps = 16;
    c.init = (dir / "init.fpf").string();
    c.out = (dir / "out").string();
    std::ostringstream out, err;
    ASSERT_EQ(cli::cmd_simulate(c, out, err), 0) << err.str();
    const auto s0 = spectral::read_fpf((dir / "out" / "snap_000000.fpf").string());
    EXPECT_EQ(s0.field.physical(), f.physical());
    c.n = 64;
    EXPECT_NE(cli::cmd_simulate(c, out, err), 0);
    fs::remove_all(dir);
}

TEST(Config, JsonRoundTripAndUnknownKeys) {
    cli::ExperimentConfig c;
    c.alpha = 0.7;
    c.model = "ch";
    c.snapshots = {0, 3};
    const nlohmann::json j = c;
    const auto back = cli::config_from_json(j);
    EXPECT_EQ(back.alpha, 0.7);
    EXPECT_EQ(back.model, "ch");
    EXPECT_EQ(back.snapshots, (std::vector<int>{0, 3}));
    EXPECT_THROW(cli::config_from_json(nlohmann::json{{"alpah", 0.5}}), FormatError);
}

TEST(Kernels, CatalogSweepPasses) {
    cli::KernelsConfig k;
    k.sets = 30;
    std::ostringstream out, err;
    EXPECT_EQ(cli::cmd_kernels(k, out, err), 0) << out.str() << err.str();
    EXPECT_NE(out.str().find("kernel=bridge"), std::string::npos);
    EXPECT_EQ(out.str().find(" FAIL"), std::string::npos);
}

TEST(Kernels, PointsFileAndEigCsv) {
    const auto dir = scratch("kern");
    fs::create_directories(dir);
    {
        std::ofstream os(dir / "pts.txt");
        os << "0.1\n0.35\n# comment\n0.8\n";
    }
    cli::KernelsConfig k;
    k.spec = "exp-abs";
    k.points_file = (dir / "pts.txt").string();
    k.eig_csv = (dir / "eig.csv").string();
    std::ostringstream out, err;
    ASSERT_EQ(cli::cmd_kernels(k, out, err), 0) << err.str();
    EXPECT_EQ(lines_of(dir / "eig.csv").size(), 4u);
    k.spec = "no-such-kernel";
    EXPECT_NE(cli::cmd_kernels(k, out, err), 0);
    fs::remove_all(dir);
}

TEST(Ml, PrintsValue) {
    std::ostringstream out, err;
    ASSERT_EQ(cli::cmd_ml(1.0, 1.0, -1.0, out, err), 0);
    EXPECT_NE(out.str().find("value 0.36787944"), std::string::npos);
    EXPECT_NE(out.str().find("regime closed-form"), std::string::npos);
    EXPECT_NE(cli::cmd_ml(3.0, 1.0, -1.0, out, err), 0);
}

TEST(Convergence, GradedBeatsUniform) {
    cli::ConvergenceConfig c;
    std::ostringstream out, err;
    ASSERT_EQ(cli::cmd_convergence(c, out, err), 0) << err.str();
    const auto u = cli::convergence_study(c, false);
    const auto g = cli::convergence_study(c, true);
    EXPECT_GT(g.back().order, u.back().order);
    EXPECT_NE(out.str().find("mesh,N,error,observed_order"), std::string::npos);
    c.Ns = {32};
    EXPECT_NE(cli::cmd_convergence(c, out, err), 0);
}

TEST(SelfCheck, AllItemsPass) {
    for (const auto& it : cli::self_check_items()) EXPECT_TRUE(it.passed) << it.name << ": " << it.detail;
}

TEST(Binary, MlEval) {
    const auto p = run_binary("ml eval --alpha 1 --beta 1 --z -1");
    EXPECT_EQ(p.status, 0);
    EXPECT_NE(p.output.find("0.36787944"), std::string::npos);
}

TEST(Binary, SimulateWithConfigAndOverride) {
    const auto dir = scratch("bin");
    fs::create_directories(dir);
    {
        std::ofstream os(dir / "cfg.json");
        os << R"({"model": "ac", "alpha": 0.6, "steps": 20, "n": 32})";
    }
    const auto p = run_binary("simulate --config " + (dir / "cfg.json").string() + " --steps 24 --out " + (dir / "out").string());
    EXPECT_EQ(p.status, 0) << p.output;
    EXPECT_EQ(lines_of(dir / "out" / "energy.csv").size(), 26u);
    const auto j = nlohmann::json::parse(slurp(dir / "out" / "summary.json"));
    EXPECT_EQ(j["config"]["alpha"].get<double>(), 0.6);
    fs::remove_all(dir);
}

TEST(Binary, BadArgumentsFail) {
    EXPECT_NE(run_binary("simulate --model xy").status, 0);
    EXPECT_NE(run_binary("").status, 0);
    EXPECT_NE(run_binary("simulate --model ch --init 1+cos(x) --out /tmp/fraclab_cli_never").status, 0);
}
