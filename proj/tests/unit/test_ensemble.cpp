#include "osclab/emit.hpp"
#include "osclab/ensemble.hpp"
#include "osclab/errors.hpp"
#include "osclab/kernels.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>

using namespace osc;

namespace {

ExperimentConfig small_config(ExperimentKind kind) {
  ExperimentConfig cfg;
  cfg.kind = kind;
  cfg.box = BoxGeometry::chain(30);
  cfg.samples = 6;
  cfg.time_points = 40;
  cfg.shell_min = 1;
  cfg.shell_max = 6;
  cfg.n_min = 0;
  cfg.n_max = 5;
  cfg.ladder = {10, 20};
  cfg.disorder.master_seed = 4;
  return cfg;
}

}  // namespace

TEST(Summarize, MeanAndStandardError) {
  const Statistic s = summarize({1.0, 2.0, 3.0, 4.0});
  EXPECT_DOUBLE_EQ(s.mean, 2.5);
  EXPECT_NEAR(s.std_error, std::sqrt(5.0 / 3.0) / 2.0, 1e-15);
  EXPECT_EQ(s.count, 4u);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const Statistic t = summarize({nan, 5.0, nan});
  EXPECT_EQ(t.count, 1u);
  EXPECT_EQ(t.std_error, 0.0);
  EXPECT_EQ(summarize({nan}).count, 0u);
}

TEST(Reduce, RowsFollowLayoutAndCountersSum) {
  ExperimentConfig cfg = small_config(ExperimentKind::eigencorrelator);
  const std::vector<SlotKey> layout = {{"a", "distance", 1.0}, {"a", "distance", 2.0}};
  std::vector<SampleRecord> records(3);
  for (int i = 0; i < 3; ++i) {
    records[i].values = {double(i), 10.0};
    records[i].counters["hits"] = 1.0;
  }
  const EnsembleResult r = reduce_samples(cfg, layout, records);
  ASSERT_EQ(r.rows.size(), 2u);
  EXPECT_DOUBLE_EQ(r.rows[0].stat.mean, 1.0);
  EXPECT_DOUBLE_EQ(r.rows[1].stat.std_error, 0.0);
  EXPECT_DOUBLE_EQ(r.metadata_value("hits"), 3.0);
  EXPECT_DOUBLE_EQ(r.metadata_value("samples"), 3.0);
  EXPECT_EQ(r.metadata_value("absent"), 0.0);
  EXPECT_EQ(r.select("a").size(), 2u);
  EXPECT_EQ(r.version, library_version());
}

TEST(RunEnsemble, IndependentOfWorkerCount) {
  for (ExperimentKind k : {ExperimentKind::lr_bound, ExperimentKind::quasi_locality,
                           ExperimentKind::energy_density, ExperimentKind::gap_stats}) {
    ExperimentConfig cfg = small_config(k);
    const EnsembleResult one = run_ensemble(cfg);
    cfg.workers = 4;
    const EnsembleResult four = run_ensemble(cfg);
    EXPECT_EQ(one, four) << to_string(k);
    EXPECT_EQ(to_csv(one), to_csv(four));
  }
}

TEST(RunEnsemble, EmptyLocalizedSetGivesZeroCommutators) {
  ExperimentConfig cfg = small_config(ExperimentKind::lr_bound);
  cfg.lambda0 = 1e-6;
  const EnsembleResult r = run_ensemble(cfg);
  for (const ResultRow& row : r.rows) {
    EXPECT_EQ(row.stat.mean, 0.0) << row.quantity;
    EXPECT_EQ(row.stat.count, cfg.samples);
  }
}

TEST(RunEnsemble, EnvelopesDominateOnEverySample) {
  for (ExperimentKind k : {ExperimentKind::lr_bound, ExperimentKind::pq_bound, ExperimentKind::quasi_locality,
                           ExperimentKind::correlations}) {
    ExperimentConfig cfg = small_config(k);
    cfg.lambda0 = 2.0;
    const EnsembleResult r = run_ensemble(cfg);
    for (const auto& [name, value] : r.metadata) {
      if (name.find("violations") != std::string::npos) EXPECT_EQ(value, 0.0) << name;
    }
  }
}

TEST(RunEnsemble, FailuresReportCompletedSamples) {
  ExperimentConfig cfg = small_config(ExperimentKind::eigencorrelator);
  cfg.samples = 10;
  const std::vector<SlotKey> layout = {{"v", "index", 0.0}};
  auto evaluate = [](const ExperimentConfig&, std::uint64_t i) {
    if (i == 7) throw NumericError("sample seven is broken");
    return SampleRecord{{double(i)}, {}};
  };
  try {
    run_ensemble(cfg, layout, evaluate);
    FAIL() << "expected a partial result";
  } catch (const PartialResultError& e) {
    EXPECT_EQ(e.completed_samples(), 7u);
    EXPECT_NE(std::string(e.what()).find("sample 7"), std::string::npos);
  }
  cfg.workers = 3;
  EXPECT_THROW(run_ensemble(cfg, layout, evaluate), PartialResultError);
  cfg.n_min = 3;
  cfg.n_max = 2;
  EXPECT_THROW(run_ensemble(cfg), ConfigError);
}
