#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>

#include <unistd.h>

#include "cli/commands.hpp"
#include "cli/config.hpp"
#include "transport1d/error.hpp"
#include "transport1d/io.hpp"

using namespace transport1d;
using namespace transport1d::cli;
namespace fs = std::filesystem;

namespace {

// Fresh scratch directory per test.
class Scratch : public ::testing::Test {
protected:
    void SetUp() override {
        const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
        dir_ = fs::temp_directory_path() / ("t1d_cli_" + std::string(info->name()) + "_" +
                                            std::to_string(::getpid()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
        ::unsetenv("TRANSPORT1D_OUT");
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::string path(const std::string& leaf) const { return (dir_ / leaf).string(); }

    void write(const std::string& leaf, const std::string& text) const {
        std::ofstream(dir_ / leaf) << text;
    }

    static std::string slurp(const fs::path& p) {
        std::ifstream in(p, std::ios::binary);
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }

    struct Result {
        int code;
        std::string out, err;
    };
    static Result invoke(const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = main_entry(args, out, err);
        return {code, out.str(), err.str()};
    }

    fs::path dir_;
};

std::string error_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const std::exception& e) {
        return e.what();
    }
    return "";
}

}  // namespace

TEST(Profiles, ConstAndStepSpecs) {
    const auto c = parse_profile("const:0.25", 0.0, 2.0);
    EXPECT_EQ(c(1.3), 0.25);
    const auto s = parse_profile("step:1,-1,0.5", 0.0, 1.0);
    EXPECT_EQ(s(0.2), 1.0);
    EXPECT_EQ(s(0.7), -1.0);
    EXPECT_EQ(s.total_variation(), 2.0);
    EXPECT_THROW(parse_profile("ramp:1", 0.0, 1.0), InvalidArgument);
    EXPECT_THROW(parse_profile("step:1,2", 0.0, 1.0), InvalidArgument);
    EXPECT_THROW(parse_profile("const:abc", 0.0, 1.0), InvalidArgument);
}

TEST(Mollifier, SingleIndexExpands) {
    EXPECT_EQ(expand_mollifier({16}), (std::vector<int>{4, 8, 16}));
    EXPECT_EQ(expand_mollifier({2}), (std::vector<int>{1, 2}));
    EXPECT_EQ(expand_mollifier({1}), (std::vector<int>{1}));
    EXPECT_EQ(expand_mollifier({3, 9}), (std::vector<int>{3, 9}));
}

TEST(ConfigText, ParsesCommentsAndWhitespace) {
    const auto f = parse_config_text("# defaults\n  nt = 65\nscenario=positive-b , vacuum-patch\n\n", "f.cfg");
    ASSERT_EQ(f.size(), 2u);
    EXPECT_EQ(f.at("nt").value, "65");
    EXPECT_EQ(f.at("nt").line, 2);
    RunConfig cfg;
    apply_config(cfg, f, "f.cfg");
    EXPECT_EQ(cfg.nt, 65u);
    EXPECT_TRUE(cfg.resolution_set);
    EXPECT_EQ(cfg.scenarios, (std::vector<std::string>{"positive-b", "vacuum-patch"}));
}

TEST(ConfigText, ErrorsNameLineAndKey) {
    EXPECT_EQ(error_of([] { parse_config_text("nt = 3\nnt = 4\n", "a.cfg"); }),
              "a.cfg:2: duplicate key 'nt'");
    EXPECT_NE(error_of([] { parse_config_text("nt 3\n", "a.cfg"); }).find("a.cfg:1:"), std::string::npos);
    RunConfig cfg;
    EXPECT_EQ(error_of([&] { apply_config(cfg, parse_config_text("nt = 0\n", "b.cfg"), "b.cfg"); }),
              "b.cfg:1: nt must be >= 2");
    EXPECT_EQ(error_of([&] { apply_config(cfg, parse_config_text("\nfoo = 1\n", "c.cfg"), "c.cfg"); }),
              "c.cfg:2: unknown key 'foo'");
    const auto msg = error_of([&] { apply_config(cfg, parse_config_text("jobs = x\n", "d.cfg"), "d.cfg"); });
    EXPECT_NE(msg.find("d.cfg:1:"), std::string::npos);
    EXPECT_NE(msg.find("jobs"), std::string::npos);
}

TEST(Args, DefaultsAndOverrides) {
    const auto cfg = parse_args({"run"});
    EXPECT_EQ(cfg.command, Command::run);
    EXPECT_EQ(cfg.scenarios, (std::vector<std::string>{"constant-drift"}));
    EXPECT_EQ(cfg.nt, 257u);
    EXPECT_EQ(cfg.out_dir, fs::path("out"));
    const auto b = parse_args({"compare", "--scenario", "positive-b", "--mollifier-n", "16", "--nx", "65",
                               "--nt", "33"});
    EXPECT_EQ(b.command, Command::compare);
    EXPECT_EQ(b.mollifier_n, (std::vector<int>{16}));
    EXPECT_EQ(b.nx, 65u);
    EXPECT_EQ(b.nt, 33u);
}

TEST(Args, ConflictsAndMissingPieces) {
    EXPECT_EQ(error_of([] { parse_args({}); }), "no command given (run, verify, compare or traces)");
    EXPECT_EQ(error_of([] { parse_args({"run", "--only", "ENV-*"}); }), "--only applies to verify, not run");
    EXPECT_EQ(error_of([] { parse_args({"run", "--x", "0.5"}); }), "--x applies to traces, not run");
    EXPECT_EQ(error_of([] { parse_args({"traces", "--mollifier-n", "8"}); }),
              "--mollifier-n applies to compare, not traces");
    EXPECT_EQ(error_of([] { parse_args({"compare"}); }), "compare requires --mollifier-n");
    EXPECT_NE(error_of([] { parse_args({"verify", "--nx", "65", "--nt", "129"}); }), "");
    const auto unknown = error_of([] { parse_args({"run", "--scenario", "nope"}); });
    EXPECT_NE(unknown.find("constant-drift"), std::string::npos);
    EXPECT_NE(unknown.find("CSV"), std::string::npos);
    EXPECT_THROW(parse_args({"run", "--bogus"}), InvalidArgument);
}

TEST_F(Scratch, ConfigFileUnderFlags) {
    write("a.cfg", "command = run\nnt = 65\nnx = 65\nout = " + path("from-file") + "\n");
    const auto cfg = parse_args({"--config", path("a.cfg"), "--nx", "129"});
    EXPECT_EQ(cfg.command, Command::run);
    EXPECT_EQ(cfg.nt, 65u);
    EXPECT_EQ(cfg.nx, 129u);
    EXPECT_EQ(cfg.out_dir, fs::path(path("from-file")));
}

TEST_F(Scratch, EnvironmentSetsDefaultOutput) {
    ::setenv("TRANSPORT1D_OUT", path("env-out").c_str(), 1);
    EXPECT_EQ(parse_args({"run"}).out_dir, fs::path(path("env-out")));
    EXPECT_EQ(parse_args({"run", "--out", path("flag-out")}).out_dir, fs::path(path("flag-out")));
    ::unsetenv("TRANSPORT1D_OUT");
}

TEST_F(Scratch, RunWritesOutputsAndRefusesOverwrite) {
    const std::vector<std::string> args{"run", "--scenario", "oscillating-sign", "--nx", "65", "--nt", "65",
                                        "--out", path("o")};
    const auto first = invoke(args);
    ASSERT_EQ(first.code, 0) << first.err;
    const auto dir = dir_ / "o" / "oscillating-sign";
    EXPECT_TRUE(fs::exists(dir / "solution.csv"));
    EXPECT_TRUE(fs::exists(dir / "traces.csv"));
    const auto json = slurp(dir / "summary.json");
    EXPECT_NE(json.find("\"consistency_constant\""), std::string::npos);
    EXPECT_NE(first.out.find("C = "), std::string::npos);

    const auto before = slurp(dir / "solution.csv");
    const auto second = invoke(args);
    EXPECT_EQ(second.code, 2);
    EXPECT_NE(second.err.find("--force"), std::string::npos);

    auto forced = args;
    forced.push_back("--force");
    EXPECT_EQ(invoke(forced).code, 0);
    EXPECT_EQ(slurp(dir / "solution.csv"), before);  // byte-identical rerun
}

TEST_F(Scratch, TracesAtAnAbscissa) {
    const auto r = invoke({"traces", "--scenario", "oscillating-sign", "--nx", "65", "--nt", "65", "--x", "0",
                           "--out", path("o")});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto file = dir_ / "o" / "oscillating-sign" / "time_trace_x0.csv";
    ASSERT_TRUE(fs::exists(file));
    std::ifstream in(file);
    const auto t = read_csv(in);
    EXPECT_EQ(t.columns, (std::vector<std::string>{"t", "x", "tr_brho", "tr_brhotheta", "theta_tilde"}));
    EXPECT_EQ(t.rows.size(), 64u);
    const auto bad = invoke({"traces", "--scenario", "oscillating-sign", "--nx", "65", "--nt", "65", "--x",
                             "-4", "--out", path("o2")});
    EXPECT_EQ(bad.code, 2);
}

TEST_F(Scratch, CsvScenarioRoundTrip) {
    const auto s = builtin_scenario("constant-drift");
    std::ofstream(dir_ / "drift.csv") << [&] {
        std::ostringstream os;
        write_field_csv(os, sample_scenario(s, scenario_grid(s, 33, 33)));
        return os.str();
    }();
    RunConfig cfg;
    cfg.theta0 = "step:0,1,1";
    const auto loaded = load_scenario(path("drift.csv"), cfg);
    EXPECT_EQ(loaded.label, "drift");
    EXPECT_EQ(loaded.kind, ScenarioKind::tabulated);
    EXPECT_EQ(loaded.boundary.theta0(0.5), 0.0);
    EXPECT_EQ(loaded.boundary.theta0(1.5), 1.0);
    EXPECT_EQ(loaded.boundary.theta_bar(0.5), 1.0);
    const auto r = invoke({"run", "--scenario", path("drift.csv"), "--nx", "33", "--nt", "33", "--out",
                           path("o")});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(fs::exists(dir_ / "o" / "drift" / "summary.json"));
}

TEST_F(Scratch, NegativeDensityIsNumericalFailure) {
    write("neg.csv", "t,x,rho,b\n0,0,1,0\n0,1,-1,0\n1,0,1,0\n1,1,1,0\n");
    const auto r = invoke({"run", "--scenario", path("neg.csv"), "--nx", "2", "--nt", "2", "--out", path("o")});
    EXPECT_EQ(r.code, 3);
    EXPECT_NE(r.err.find("negative density"), std::string::npos);
}

TEST_F(Scratch, VerifySubsetByPattern) {
    const auto r = invoke({"verify", "--only", "ENV-*"});
    EXPECT_EQ(r.code, 0) << r.out;
    EXPECT_NE(r.out.find("ENV-ORACLE"), std::string::npos);
    EXPECT_NE(r.out.find("1/1 criteria passed"), std::string::npos);
    EXPECT_EQ(invoke({"verify", "--only", "NOPE-*"}).code, 2);
}

TEST_F(Scratch, UsageErrorsExitTwo) {
    EXPECT_EQ(invoke({}).code, 2);
    EXPECT_EQ(invoke({"compare", "--scenario", "constant-drift"}).code, 2);
    write("bad.cfg", "nt = 0\n");
    const auto r = invoke({"run", "--config", path("bad.cfg")});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("bad.cfg:1: nt must be >= 2"), std::string::npos);
    EXPECT_EQ(invoke({"--help"}).code, 0);
}

TEST_F(Scratch, OutputSetChecksAllTargetsFirst) {
    write("exists.txt", "old");
    OutputSet set;
    set.add(dir_ / "new.txt", "new");
    set.add(dir_ / "exists.txt", "replacement");
    EXPECT_THROW(set.commit(false), InvalidArgument);
    EXPECT_FALSE(fs::exists(dir_ / "new.txt"));
    set.commit(true);
    EXPECT_EQ(slurp(dir_ / "exists.txt"), "replacement");
    EXPECT_EQ(slurp(dir_ / "new.txt"), "new");
}
