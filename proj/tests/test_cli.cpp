#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "algser/cli.hpp"

namespace fs = std::filesystem;
using algser::io::json;

namespace {

struct CliResult {
    int code;
    std::string out;
    std::string err;
    json body() const { return json::parse(out); }
};

CliResult run_cli(std::vector<std::string> args) {
    args.insert(args.begin(), "algser");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = algser::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
protected:
    fs::path dir;

    void SetUp() override {
        dir = fs::temp_directory_path() /
              ("algser_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::create_directories(dir);
    }
    void TearDown() override { fs::remove_all(dir); }

    std::string write(const std::string& name, const std::string& text) {
        const auto p = dir / name;
        std::ofstream(p) << text;
        return p.string();
    }

    static std::string data(const std::string& name) { return std::string(ALGSER_DATA_DIR) + "/" + name; }
};

} // namespace

TEST_F(CliTest, ExpandAllMethods) {
    const auto r = run_cli({"expand", "--poly", data("quartic.json"), "--seed", data("quartic_seed.json"), "--count",
                            "6", "--method", "all"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = r.body();
    EXPECT_EQ(j["k0"], 0);
    EXPECT_EQ(j["omega0"], "2");
    EXPECT_EQ(j["first_index"], 3);
    EXPECT_TRUE(j["agree"].get<bool>());
    const json want = json::array({"0", "-1", "-1/2", "1", "1", "-1"});
    EXPECT_EQ(j["fs"], want);
    EXPECT_EQ(j["closed"], want);
    EXPECT_EQ(j["newton"], want);
}

TEST_F(CliTest, ExpandFromOneTermSeed) {
    const auto seed = write("seed.json", R"({"coeffs": ["1"], "precision": 1})");
    const auto r = run_cli({"expand", "--poly", data("quartic.json"), "--seed", seed, "--count", "3"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(r.body()["seed_extended"].get<bool>());
    EXPECT_EQ(r.body()["seed"], json::array({"1", "1"}));
}

TEST_F(CliTest, OutputIsDeterministic) {
    const std::vector<std::string> args{"expand", "--poly", data("quartic.json"), "--seed", data("quartic_seed.json"),
                                        "--count", "5", "--method", "closed"};
    EXPECT_EQ(run_cli(args).out, run_cli(args).out);
}

TEST_F(CliTest, OracleImplicitizeCertifyRoundTrip) {
    const auto series = (dir / "series.json").string();
    auto r = run_cli({"-o", series, "oracle", "--poly", data("quartic.json"), "--seed", data("quartic_seed.json"),
                      "--count", "16"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto shape = write("shape.json", R"({"F": [[2, 1], [0, 2], [2, 2]], "G": [[2, 0]]})");
    r = run_cli({"implicitize", "--series", series, "--dx", "2", "--dy", "2", "--shape", shape});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = r.body();
    EXPECT_TRUE(j["certified"].get<bool>());
    EXPECT_EQ(j["status"], "certified");
    const auto poly = write("found.json", j.dump());
    r = run_cli({"certify", "--poly", poly, "--series", series});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.body()["tau"], 8);
    EXPECT_TRUE(r.body()["residual_order"].is_null());
    EXPECT_EQ(algser::io::poly_from_json(j), algser::io::poly_from_json(algser::io::read_file(data("quartic.json"))));
}

TEST_F(CliTest, NegativeResultsExitOne) {
    const auto series = write("s.json", R"({"coeffs": ["1", "3", "-2", "7", "1/5", "4", "9", "-1", "2", "5"], "precision": 10})");
    auto r = run_cli({"implicitize", "--series", series, "--dx", "2", "--dy", "2"});
    EXPECT_EQ(r.code, 1);
    EXPECT_FALSE(r.body()["certified"].get<bool>());
    r = run_cli({"certify", "--poly", data("quartic.json"), "--series", series});
    EXPECT_EQ(r.code, 1);
    EXPECT_FALSE(r.body()["certified"].get<bool>());
}

TEST_F(CliTest, Henselize) {
    auto r = run_cli({"henselize", "--poly", data("quartic.json"), "--seed", data("quartic_seed.json"), "--k", "1"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.body()["i_k"], 3);
    EXPECT_EQ(r.body()["omega0"], "2");
    const auto lin = write("lin.json", R"({"terms": [{"i": 0, "j": 1, "c": "1"}, {"i": 1, "j": 0, "c": "-1"}]})");
    const auto seed = write("seed.json", R"(["1", "0"])");
    r = run_cli({"henselize", "--poly", lin, "--seed", seed, "--k", "1"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(r.body()["polynomial_root"].get<bool>());
}

TEST_F(CliTest, BadInputExitsTwo) {
    const auto bad = write("bad.json", "{ not json");
    EXPECT_EQ(run_cli({"certify", "--poly", bad, "--series", data("quartic_seed.json")}).code, 2);
    const auto noncanon = write("nc.json", R"({"coeffs": ["2/4"], "precision": 1})");
    EXPECT_EQ(run_cli({"oracle", "--poly", data("quartic.json"), "--seed", noncanon, "--count", "4"}).code, 2);
    const auto mismatch = write("mm.json", R"({"coeffs": ["1", "1"], "precision": 3})");
    EXPECT_EQ(run_cli({"oracle", "--poly", data("quartic.json"), "--seed", mismatch, "--count", "4"}).code, 2);
    const auto zero = write("z.json", R"({"terms": [{"i": 0, "j": 1, "c": "0"}]})");
    EXPECT_EQ(run_cli({"oracle", "--poly", zero, "--seed", data("quartic_seed.json"), "--count", "4"}).code, 2);
    EXPECT_EQ(run_cli({"expand", "--poly", data("quartic.json")}).code, 2);
    EXPECT_EQ(run_cli({"frobnicate"}).code, 2);
    EXPECT_EQ(run_cli({"certify", "--poly", data("quartic.json"), "--series", data("quartic_seed.json")}).code, 2);
    const auto wrong = write("w.json", R"(["1", "5"])");
    EXPECT_EQ(run_cli({"expand", "--poly", data("quartic.json"), "--seed", wrong, "--count", "3"}).code, 2);
}

TEST_F(CliTest, BudgetExceededExitsThree) {
    const auto r = run_cli({"--budget", "20", "expand", "--poly", data("quartic.json"), "--seed",
                            data("quartic_seed.json"), "--count", "6", "--method", "closed"});
    EXPECT_EQ(r.code, 3);
    EXPECT_NE(r.err.find("budget"), std::string::npos);
}

TEST_F(CliTest, BudgetFromEnvironment) {
    ::setenv(algser::cli::budget_env, "20", 1);
    const auto r = run_cli({"expand", "--poly", data("quartic.json"), "--seed", data("quartic_seed.json"), "--count",
                            "6", "--method", "fs"});
    ::setenv(algser::cli::budget_env, "nope", 1);
    const auto bad = run_cli({"selftest"});
    ::unsetenv(algser::cli::budget_env);
    EXPECT_EQ(r.code, 3);
    EXPECT_EQ(bad.code, 2);
}

TEST_F(CliTest, Selftest) {
    const auto r = run_cli({"selftest"});
    EXPECT_EQ(r.code, 0) << r.out;
}
