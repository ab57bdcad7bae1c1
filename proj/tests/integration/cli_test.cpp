#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "imreg_cli/cli.hpp"

namespace imreg::cli {
namespace {

namespace fs = std::filesystem;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("imreg_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& text) {
    const fs::path p = dir_ / name;
    std::ofstream(p) << text;
    return p.string();
  }

  int run(std::vector<std::string> args) {
    args.insert(args.begin(), "imreg");
    std::vector<char*> argv;
    for (auto& a : args) argv.push_back(a.data());
    out_.str("");
    err_.str("");
    return run_cli(static_cast<int>(argv.size()), argv.data(), out_, err_);
  }

  static std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
  }

  fs::path dir_;
  std::ostringstream out_, err_;
};

TEST_F(CliTest, MomentsToStdout) {
  const auto cfg = write("m.json", R"({"schema_version":"1","channel":{"type":"bsc","crossover":0.1}})");
  ASSERT_EQ(run({"moments", "--config", cfg}), kExitOk) << err_.str();
  const auto j = nlohmann::json::parse(out_.str());
  EXPECT_NEAR(j["mi_nats"].get<double>(), 0.36806420716849707, 1e-15);
  EXPECT_FALSE(j["degenerate"].get<bool>());
}

TEST_F(CliTest, DegenerateMomentsWarnButSucceed) {
  const auto cfg = write("m.json", R"({"schema_version":"1","channel":{"type":"bsc","crossover":0.5}})");
  ASSERT_EQ(run({"moments", "--config", cfg}), kExitOk);
  EXPECT_TRUE(nlohmann::json::parse(out_.str())["degenerate"].get<bool>());
}

TEST_F(CliTest, DegenerateBoundExitsThree) {
  const auto cfg =
      write("b.json", R"({"schema_version":"1","channel":{"type":"bsc","crossover":0.5},"n":100})");
  EXPECT_EQ(run({"bound", "--config", cfg}), kExitDegenerate);
}

TEST_F(CliTest, SchemaViolationsExitTwoWithoutPayload) {
  const auto unknown = write("u.json", R"({"schema_version":"1","n":4,"r":2,"colour":"red"})");
  EXPECT_EQ(run({"typecount", "--config", unknown}), kExitConfig);
  EXPECT_TRUE(out_.str().empty());
  EXPECT_NE(err_.str().find("colour"), std::string::npos);

  const auto version = write("v.json", R"({"schema_version":"2","n":4,"r":2})");
  EXPECT_EQ(run({"typecount", "--config", version}), kExitConfig);

  const auto malformed = write("bad.json", R"({"schema_version":"1",)");
  EXPECT_EQ(run({"typecount", "--config", malformed}), kExitConfig);
  EXPECT_TRUE(out_.str().empty());

  EXPECT_EQ(run({"typecount"}), kExitConfig);
  EXPECT_EQ(run({"frobnicate"}), kExitConfig);
}

TEST_F(CliTest, BudgetOverrunInStrictModeExitsFour) {
  const auto cfg = write("t.json", R"({"schema_version":"1","n":20,"r":2,"k":1,"budget":1000})");
  EXPECT_EQ(run({"typecount", "--config", cfg, "--strict"}), kExitBudget);
  EXPECT_EQ(run({"typecount", "--config", cfg}), kExitOk);
  EXPECT_NE(out_.str().find(",true\r\n"), std::string::npos);  // budget_skipped column
}

TEST_F(CliTest, InsufficientErrorsExitThree) {
  const auto cfg = write("g.json", R"({"schema_version":"1","n":16,"r":2,"kappa":1,
      "empirical":{"channel":{"type":"bsc","crossover":0.0},"trials":50}})");
  EXPECT_EQ(run({"gap", "--config", cfg}), kExitDegenerate);
}

TEST_F(CliTest, PrintSchemaAndVersion) {
  ASSERT_EQ(run({"simulate", "--print-schema"}), kExitOk);
  EXPECT_EQ(nlohmann::json::parse(out_.str())["title"], "imreg simulate config");
  ASSERT_EQ(run({"--version"}), kExitOk);
  EXPECT_NE(out_.str().find(kToolVersion), std::string::npos);
}

TEST_F(CliTest, OutWritesPayloadAndEnvelope) {
  const auto cfg = write("s.json", R"({"schema_version":"1","seed":9,"channel":{"type":"bsc","crossover":0.2},
      "n":12,"trials":400,"decoders":["ml","feinstein"]})");
  const std::string out = (dir_ / "sim.csv").string();
  ASSERT_EQ(run({"simulate", "--config", cfg, "--out", out}), kExitOk) << err_.str();
  const std::string payload = slurp(out);
  EXPECT_EQ(payload.rfind("decoder,delta,trials,errors,p_hat,ci_low,ci_high,bound,bound_vacuous\r\n", 0), 0u);
  const auto env = nlohmann::json::parse(slurp(out + ".envelope.json"));
  EXPECT_EQ(env["command"], "simulate");
  EXPECT_EQ(env["seed"], 9);
  EXPECT_EQ(env["payload_format"], "csv");
  EXPECT_EQ(env["payload_path"], "sim.csv");
  EXPECT_EQ(env["config"]["trials"], 400);

  ASSERT_EQ(run({"simulate", "--config", cfg, "--seed", "10"}), kExitOk);
  EXPECT_NE(out_.str(), payload);
}

TEST_F(CliTest, PayloadsAreIdenticalAcrossThreadCounts) {
  const auto cfg = write("g.json", R"({"schema_version":"1","seed":4,"n":12,"r":2,"kappa":[1,2],
      "empirical":{"channel":{"type":"bsc","crossover":0.25},"trials":1500}})");
  ASSERT_EQ(run({"gap", "--config", cfg, "--threads", "1"}), kExitOk) << err_.str();
  const std::string one = out_.str();
  ASSERT_EQ(run({"gap", "--config", cfg, "--threads", "5"}), kExitOk);
  EXPECT_EQ(out_.str(), one);
}

TEST_F(CliTest, FamilyFileResolvesNextToConfig) {
  write("fam.json", "[[0,1,2,3],[2,3,0,1]]");
  const auto cfg = write("f.json", R"({"schema_version":"1","n":4,"family":"fam.json"})");
  ASSERT_EQ(run({"validate-family", "--config", cfg}), kExitOk) << err_.str();
  const auto j = nlohmann::json::parse(out_.str());
  EXPECT_TRUE(j["ok"].get<bool>());
  EXPECT_EQ(j["size"], 2);

  const auto broken = write("x.json", R"({"schema_version":"1","n":3,"family":[[0,1,2],[1,2,0]]})");
  ASSERT_EQ(run({"validate-family", "--config", broken}), kExitOk);
  EXPECT_FALSE(nlohmann::json::parse(out_.str())["closed"].get<bool>());
}

TEST_F(CliTest, SamplesizeCsv) {
  const auto cfg = write("n.json", R"({"schema_version":"1","epsilons":[0.1],"crossovers":[0.2,0.5]})");
  ASSERT_EQ(run({"samplesize", "--config", cfg}), kExitOk);
  EXPECT_NE(out_.str().find("0.1,0.2,1720796,true,"), std::string::npos);
  EXPECT_NE(out_.str().find("0.1,0.5,not_found,false,,"), std::string::npos);
}

}  // namespace
}  // namespace imreg::cli
