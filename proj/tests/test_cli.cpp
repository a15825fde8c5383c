#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "app.hpp"

namespace cmvspec::app {
namespace {

namespace fs = std::filesystem;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("cmvspec_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
                                        "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write_config(const std::string& text) {
    const fs::path p = dir_ / "config.json";
    std::ofstream(p) << text;
    return p.string();
  }

  int run_cmd(Command c, const std::string& config_text, const std::string& out, std::optional<long long> grid = {},
              std::optional<double> tol = {}) {
    RunConfig rc;
    rc.command = c;
    if (!config_text.empty()) rc.config_path = write_config(config_text);
    rc.out_dir = (dir_ / out).string();
    rc.grid = grid;
    rc.tol = tol;
    std::ostringstream log;
    return run(rc, log);
  }

  std::string slurp(const std::string& out, const std::string& name) const {
    std::ifstream in(dir_ / out / name, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
  }

  fs::path dir_;
};

TEST_F(CliTest, CommandNames) {
  for (Command c : {Command::Spectrum, Command::Dos, Command::Lyapunov, Command::Schur, Command::Thin, Command::Tower,
                    Command::Walk, Command::Verify}) {
    EXPECT_EQ(command_from_string(to_string(c)), c);
  }
  EXPECT_FALSE(command_from_string("plot"));
}

TEST_F(CliTest, Fnv1a) {
  EXPECT_EQ(fnv1a_hex(""), "cbf29ce484222325");
  EXPECT_EQ(fnv1a_hex("a"), "af63dc4c8601ec8c");
}

TEST_F(CliTest, FreeWordSpectrumIsOneBand) {
  ASSERT_EQ(run_cmd(Command::Spectrum, R"({"word": {"kind": "free", "q": 2}})", "a"), kOk);
  const std::string bands = slurp("a", "bands.csv");
  EXPECT_EQ(std::count(bands.begin(), bands.end(), '\n'), 2);
  EXPECT_NE(slurp("a", "manifest.json").find("inputs_hash"), std::string::npos);
}

TEST_F(CliTest, ArtifactsAreDeterministic) {
  const std::string cfg = R"({"word": {"kind": "constant", "q": 4, "alpha": [0.3, 0.4]}})";
  ASSERT_EQ(run_cmd(Command::Dos, cfg, "a", 64), kOk);
  ASSERT_EQ(run_cmd(Command::Dos, cfg, "b", 64), kOk);
  for (const char* f : {"dos.csv", "band_masses.csv"}) {
    const std::string x = slurp("a", f);
    EXPECT_FALSE(x.empty());
    EXPECT_EQ(x, slurp("b", f)) << f;
  }
}

TEST_F(CliTest, CsvHasSeventeenDigits) {
  ASSERT_EQ(run_cmd(Command::Lyapunov, R"({"word": {"kind": "constant", "q": 2}})", "a", 16), kOk);
  std::istringstream in(slurp("a", "lyapunov.csv"));
  std::string header, row;
  std::getline(in, header);
  std::getline(in, row);
  std::getline(in, row);
  const std::string tau = row.substr(0, row.find(','));
  EXPECT_EQ(std::stod(tau), 2.0 * M_PI * 1.5 / 16.0);
  EXPECT_GE(tau.size(), 17u);
}

TEST_F(CliTest, ConfigErrorsExitTwo) {
  EXPECT_EQ(run_cmd(Command::Spectrum, "{not json", "a"), kConfigError);
  EXPECT_EQ(run_cmd(Command::Spectrum, R"({"word": {"kind": "weird"}})", "b"), kConfigError);
  EXPECT_EQ(run_cmd(Command::Spectrum, "", "c", 8), kConfigError);
  EXPECT_EQ(run_cmd(Command::Thin, R"({"delta": -1})", "d"), kConfigError);
  EXPECT_EQ(run_cmd(Command::Walk, R"({"period": 1, "coins": [[[2,0],[0,0],[0,0],[1,0]]]})", "e"), kConfigError);
}

TEST_F(CliTest, CapExceededExitsThree) {
  EXPECT_EQ(run_cmd(Command::Thin, R"({"seed": {"kind": "constant", "q": 4}, "delta": 0.5, "qcap": 50})", "a"),
            kCertificationFailure);
  EXPECT_NE(slurp("a", "manifest.json").find("ScheduleInfeasible"), std::string::npos);
}

TEST_F(CliTest, ImpossibleToleranceExitsFour) {
  EXPECT_EQ(run_cmd(Command::Lyapunov, R"({"word": {"kind": "constant", "q": 2}, "points": [[-0.4161468781618261, 0.9092975177554244]], "thouless_tol": 1e-300})", "a", 16),
            kToleranceFailure);
}

TEST_F(CliTest, WalkDefaultsRun) {
  ASSERT_EQ(run_cmd(Command::Walk, R"({"steps": 64, "checkpoints": [8, 16, 32, 64]})", "a"), kOk);
  EXPECT_FALSE(slurp("a", "walk.csv").empty());
  EXPECT_FALSE(slurp("a", "rage.csv").empty());
}

}  // namespace
}  // namespace cmvspec::app
