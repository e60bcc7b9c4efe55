#include "osclab/emit.hpp"
#include "osclab/errors.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace osc;
namespace fs = std::filesystem;

namespace {

EnsembleResult sample_result() {
  EnsembleResult r;
  r.experiment = "eigencorrelator";
  r.config_digest = "0123456789abcdef";
  r.seed = 18446744073709551615ull;
  r.version = library_version();
  r.samples = 12;
  r.metadata = {{"degenerate_samples", 0.0}, {"samples", 12.0}};
  for (int d = 1; d <= 6; ++d) {
    r.rows.push_back({"q_0", "distance", double(d), {0.8 * std::exp(-0.3 * d) + 1e-17 * d, 0.1 / 3.0, 12}});
  }
  r.rows.push_back({"q_plus1", "distance", 1.0, {0.0, 0.0, 0}});
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "osclab_emit_test";
  fs::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST(Emit, JsonRoundTripIsExact) {
  const EnsembleResult r = sample_result();
  EXPECT_EQ(result_from_json(to_json(r)), r);
  const fs::path p = scratch("round.json");
  emit(r, OutputFormat::json, p.string());
  EXPECT_EQ(read_result_json(p.string()), r);
}

TEST(Emit, CsvHasHeaderPlusOneLinePerKey) {
  const EnsembleResult r = sample_result();
  const std::string csv = to_csv(r);
  EXPECT_EQ(static_cast<std::size_t>(std::count(csv.begin(), csv.end(), '\n')), r.rows.size() + 1);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "quantity,key_name,key,mean,stderr,count");
  // 17 significant digits.
  EXPECT_NE(csv.find("0.033333333333333333"), std::string::npos);
  const fs::path p = scratch("table.csv");
  emit(r, OutputFormat::csv, p.string());
  EXPECT_EQ(slurp(p), csv);
}

TEST(Emit, IoErrorsNameThePath) {
  try {
    emit(sample_result(), OutputFormat::csv, "/nonexistent-dir/x.csv");
    FAIL();
  } catch (const IoError& e) {
    EXPECT_NE(std::string(e.what()).find("/nonexistent-dir/x.csv"), std::string::npos);
  }
  EXPECT_THROW(read_result_json("/nonexistent-dir/x.json"), IoError);
  EXPECT_THROW(result_from_json("{\"seed\": 1}"), IoError);
}

TEST(Emit, PlotScriptRuns) {
  if (std::system("python3 -c 'import matplotlib, numpy' > /dev/null 2>&1") != 0) {
    GTEST_SKIP() << "python3 with matplotlib not available";
  }
  const fs::path script = scratch("plot.py");
  const fs::path png = scratch("plot.png");
  fs::remove(png);
  emit_plot_script(sample_result(), script.string());
  const std::string cmd = "python3 " + script.string() + " " + png.string();
  ASSERT_EQ(std::system(cmd.c_str()), 0);
  EXPECT_GT(fs::file_size(png), 1000u);
}
