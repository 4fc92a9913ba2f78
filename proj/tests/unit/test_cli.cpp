#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "approxcoh/cli.hpp"
#include "oracles.hpp"

using namespace approxcoh;
using nlohmann::ordered_json;

namespace {

std::string sample(const std::string& name) {
    const char* dir = std::getenv("APPROXCOH_SAMPLES");
    return (std::filesystem::path(dir ? dir : "samples") / name).string();
}

struct Run {
    int code;
    std::string out, err;
    ordered_json json() const { return ordered_json::parse(out); }
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& text) {
    const auto path = (std::filesystem::temp_directory_path() / ("approxcoh_test_" + name)).string();
    std::ofstream(path) << text;
    return path;
}

}  // namespace

TEST(Cli, ExitCodes) {
    EXPECT_EQ(run({"frobnicate"}).code, 64);
    EXPECT_EQ(run({"rank"}).code, 1);
    EXPECT_EQ(run({"rank", "--input", sample("missing.poly")}).code, 1);
    EXPECT_EQ(run({"rank", "--input", sample("linear.poly")}).code, 1);
    EXPECT_EQ(run({"gowers", "--input", sample("quadratic.poly"), "--m", "3", "--budget", "10"}).code, 2);
    EXPECT_EQ(run({"correct", "--cochain", sample("chi.json"), "--budget", "3"}).code, 1);
    EXPECT_EQ(run({"--version"}).code, 0);
}

TEST(Cli, EnvelopeEchoesConfig) {
    const auto r = run({"rank", "--input", sample("zero.poly")});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = r.json();
    EXPECT_EQ(j["tool"], "approxcoh");
    EXPECT_EQ(j["version"], cli::kToolVersion);
    EXPECT_EQ(j["command"], "rank");
    EXPECT_TRUE(j["config"].contains("budget"));
    EXPECT_EQ(j["result"]["upper"], 0);
}

TEST(Cli, RankOfSampleQuadratic) {
    // x0^2 + x1^2 + 2 x2^2 mod 3: matrix rank 3, so rank 2
    const auto j = run({"rank", "--input", sample("quadratic.poly")}).json();
    EXPECT_EQ(j["result"]["upper"], 2);
    EXPECT_EQ(j["result"]["lower"], 2);
    EXPECT_TRUE(j["result"]["certificate"]["verified"].get<bool>());
}

TEST(Cli, GowersOfLinearPhase) {
    const auto j = run({"gowers", "--input", sample("linear.poly"), "--m", "2"}).json();
    EXPECT_EQ(j["result"]["value"], 1.0);
}

TEST(Cli, DeltaDegreeOfQuadraticPhase) {
    const auto r = run({"delta-degree", "--table", sample("quadratic_phase.csv")});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.json()["result"]["degree"], 2);
}

TEST(Cli, SynthesizeThenCorrectRoundTrip) {
    const auto a = run({"synthesize", "--chi", sample("chi.json"), "--noise-rank", "1", "--noise-model", "constant",
                        "--seed", "5"});
    ASSERT_EQ(a.code, 0) << a.err;
    const auto b = run({"synthesize", "--chi", sample("chi.json"), "--noise-rank", "1", "--noise-model", "constant",
                        "--seed", "5"});
    EXPECT_EQ(a.out, b.out);
    const auto path = temp_file("synth.json", a.out);
    const auto c = run({"correct", "--cochain", path});
    ASSERT_EQ(c.code, 0) << c.err;
    const auto j = c.json();
    EXPECT_LE(j["result"]["distance"].get<unsigned>(), 1u);
    EXPECT_TRUE(j["result"]["optimal"].get<bool>());
    const auto g = run({"correct", "--cochain", path, "--method", "greedy", "--seed", "2"}).json();
    EXPECT_GE(g["result"]["distance"].get<unsigned>(), j["result"]["distance"].get<unsigned>());
    const auto d = run({"defect", "--cochain", path}).json();
    EXPECT_LE(d["result"]["max_rank_upper"].get<unsigned>(), 1u);
    const auto cc = run({"cocycle-check", "--cochain", path, "--i", "1"}).json();
    EXPECT_EQ(cc["result"]["verdict"], "true");
}

TEST(Cli, CoboundaryOfLinearMapVanishes) {
    const auto chi = run({"synthesize", "--chi", sample("chi.json"), "--noise-rank", "0"});
    const auto path = temp_file("exact.json", chi.out);
    const auto r = run({"coboundary", "--cochain", path});
    ASSERT_EQ(r.code, 0) << r.err;
    for (const auto& [k, v] : r.json()["result"]["cochain"]["values"].items())
        EXPECT_NE(v.get<std::string>().find("\n0"), std::string::npos) << k;
}

TEST(Cli, CyclicCorrection) {
    const auto r = run({"correct", "--cochain", sample("cyclic.json"), "--method", "cyclic"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_LE(r.json()["result"]["distance"].get<unsigned>(), 2u);
}

TEST(Cli, KoenigSample) {
    const auto j = run({"koenig", "--system", sample("system.json")}).json();
    EXPECT_EQ(j["result"]["elements"], ordered_json::parse("[1, 1, 0]"));
    EXPECT_TRUE(j["result"]["compatible"].get<bool>());
}

TEST(Cli, LiftSample) {
    const auto chi = run({"synthesize", "--chi", sample("chi.json"), "--noise-rank", "1", "--noise-model", "constant",
                          "--seed", "1"});
    const auto path = temp_file("lift.json", chi.out);
    const auto r = run({"lift", "--input", path, "--C", "1"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_LE(r.json()["result"]["distance"].get<unsigned>(), 1u);
}

TEST(Cli, GrowthExperimentCsvIsDeterministic) {
    const std::vector<std::string> args{"experiment", "minimax-growth", "--p", "2", "--d", "2", "--n-range", "1..2",
                                        "--s-range", "1"};
    const auto a = run(args), b = run(args);
    ASSERT_EQ(a.code, 0) << a.err;
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(a.out.rfind("# approxcoh 0.1.0 experiment minimax-growth", 0), 0u);
    EXPECT_NE(a.out.find("p,d,n,s,defect,distance,method,optimal"), std::string::npos);
    auto json_args = args;
    json_args.insert(json_args.end(), {"--format", "json"});
    const auto j = run(json_args);
    ASSERT_EQ(j.code, 0) << j.err;
    EXPECT_EQ(j.json()["command"], "experiment minimax-growth");
}

TEST(Cli, OutFileMatchesStdout) {
    const auto path = (std::filesystem::temp_directory_path() / "approxcoh_test_out.json").string();
    const auto a = run({"koenig", "--system", sample("system.json")});
    const auto b = run({"koenig", "--system", sample("system.json"), "--out", path});
    ASSERT_EQ(b.code, 0);
    std::ifstream in(path);
    std::stringstream buf;
    buf << in.rdbuf();
    EXPECT_EQ(buf.str(), a.out);
}
