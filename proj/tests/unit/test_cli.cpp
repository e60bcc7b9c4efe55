#include "osclab/emit.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sys/wait.h>

namespace fs = std::filesystem;

namespace {

int run(const std::string& args) {
  const std::string cmd = std::string(OSCLAB_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

fs::path write(const std::string& name, const std::string& text) {
  const fs::path dir = fs::temp_directory_path() / "osclab_cli_test";
  fs::create_directories(dir);
  std::ofstream(dir / name) << text;
  return dir / name;
}

}  // namespace

TEST(Cli, SuccessfulRunWritesJson) {
  const fs::path cfg = write("ok.json", R"({"box": {"shape": "chain", "length": 30}, "shells": [1, 5]})");
  const fs::path out = cfg.parent_path() / "ok_out.json";
  ASSERT_EQ(run("eigencorrelator --config " + cfg.string() + " --samples 3 --seed 9 --format json --out " + out.string()), 0);
  const osc::EnsembleResult r = osc::read_result_json(out.string());
  EXPECT_EQ(r.seed, 9u);
  EXPECT_EQ(r.samples, 3u);
  EXPECT_EQ(r.experiment, "eigencorrelator");
}

TEST(Cli, ConfigErrorsExitWithTwo) {
  const fs::path bad = write("bad.json", R"({"samples": -4})");
  EXPECT_EQ(run("lr-bound --config " + bad.string()), 2);
  EXPECT_EQ(run("lr-bound --config /nonexistent/cfg.json"), 2);
  const fs::path unknown = write("unknown.json", R"({"boxx": 1})");
  EXPECT_EQ(run("gap-stats --config " + unknown.string()), 2);
}

TEST(Cli, OracleBudgetFailureExitsWithThree) {
  EXPECT_EQ(run("oracle-check --budget 10"), 3);
}

TEST(Cli, UsageErrorsAreNonzero) {
  EXPECT_NE(run(""), 0);
  EXPECT_NE(run("not-an-experiment"), 0);
}
