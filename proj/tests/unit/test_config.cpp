#include "osclab/config.hpp"
#include "osclab/errors.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace osc;

TEST(Config, DefaultsFromEmptyDocument) {
  const ExperimentConfig cfg = parse_config("{}");
  EXPECT_EQ(cfg.kind, ExperimentKind::eigencorrelator);
  EXPECT_EQ(cfg.box.size(), 100u);
  EXPECT_TRUE(std::isinf(cfg.lambda0));
  EXPECT_EQ(cfg.samples, 100u);
  EXPECT_EQ(cfg.center_site(), 49u);
}

TEST(Config, ParsesEveryField) {
  const ExperimentConfig cfg = parse_config(R"({
    "experiment": "quasi-locality",
    "box": {"shape": "cube", "dimension": 2, "side": 5},
    "disorder": {"k_max": 2.0, "inverse_cdf": [0.0, 1.0, 2.0]},
    "seed": 77, "lambda0": 0.5, "kappa": 2, "samples": 9,
    "time_grid": {"points": 30, "t_max": 12.5},
    "center": [2, 3],
    "amplitude_f": [1.0, -0.5], "amplitude_g": 2.0,
    "shells": [2, 4], "n_range": [1, 3],
    "alpha_family": {"random": 2, "cap": 5},
    "powers": [0], "lambda_grid_points": 10, "ladder": [4, 8],
    "many_body_box": {"intervals": [[0, 2]]}, "many_body_max_occupation": 1,
    "workers": 3, "output": "out.csv", "format": "json"
  })");
  EXPECT_EQ(cfg.kind, ExperimentKind::quasi_locality);
  EXPECT_EQ(cfg.box.size(), 25u);
  EXPECT_EQ(cfg.seed(), 77u);
  EXPECT_DOUBLE_EQ(cfg.lambda0, 0.5);
  EXPECT_EQ(cfg.center_site(), cfg.box.index({2, 3}));
  EXPECT_EQ(cfg.amplitude_f, Complex(1.0, -0.5));
  EXPECT_EQ(cfg.amplitude_g, Complex(2.0, 0.0));
  ASSERT_TRUE(cfg.t_max.has_value());
  EXPECT_DOUBLE_EQ(*cfg.t_max, 12.5);
  EXPECT_EQ(cfg.shell_min, 2);
  EXPECT_EQ(cfg.n_max, 3);
  EXPECT_EQ(cfg.alpha_family.cap, 5u);
  EXPECT_EQ(cfg.many_body_box.size(), 3u);
  EXPECT_EQ(cfg.workers, 3u);
  EXPECT_EQ(cfg.format, OutputFormat::json);
}

TEST(Config, RejectsMalformedInput) {
  EXPECT_THROW(parse_config("{"), ConfigError);
  EXPECT_THROW(parse_config(R"({"samplez": 3})"), ConfigError);
  EXPECT_THROW(parse_config(R"({"samples": 0})"), ConfigError);
  EXPECT_THROW(parse_config(R"({"experiment": "nope"})"), ConfigError);
  EXPECT_THROW(parse_config(R"({"lambda0": "most"})"), ConfigError);
  EXPECT_THROW(parse_config(R"({"box": {"shape": "chain"}})"), ConfigError);
  EXPECT_THROW(parse_config(R"({"center": 500})"), ConfigError);
  EXPECT_THROW(parse_config(R"({"powers": [2]})"), ConfigError);
  EXPECT_THROW(parse_config(R"({"disorder": {"k_max": -1}})"), ConfigError);
  EXPECT_THROW(load_config("/nonexistent/config.json"), ConfigError);
}

TEST(Config, DigestTracksResultsNotPlumbing) {
  const ExperimentConfig a = parse_config(R"({"samples": 10, "seed": 1})");
  ExperimentConfig b = a;
  b.workers = 4;
  b.output = "elsewhere.csv";
  b.format = OutputFormat::json;
  EXPECT_EQ(config_digest(a), config_digest(b));
  EXPECT_EQ(config_digest(a).size(), 16u);
  b.samples = 11;
  EXPECT_NE(config_digest(a), config_digest(b));
  EXPECT_EQ(parse_config(canonical_json(a)).samples, 10u);
  EXPECT_EQ(config_digest(parse_config(canonical_json(a))), config_digest(a));
}

TEST(Config, ExperimentNamesRoundTrip) {
  for (ExperimentKind k : all_experiment_kinds()) EXPECT_EQ(parse_experiment_kind(to_string(k)), k);
  EXPECT_EQ(all_experiment_kinds().size(), 8u);
}

TEST(Config, ShippedPresetsParse) {
  for (const char* name : {"chain100_eigencorrelator", "chain100_lr_bound", "chain100_quasi_locality",
                           "chain40_correlations", "chain_ladder_energy_density", "chain20_gap_stats"}) {
    EXPECT_NO_THROW(load_config(std::string(OSCLAB_CONFIG_DIR) + "/" + name + ".json")) << name;
  }
}
