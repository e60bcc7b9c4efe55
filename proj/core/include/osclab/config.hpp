// config.hpp - experiment configuration: a single JSON document plus CLI
// overrides, normalized into ExperimentConfig.
//
// Document keys (all optional except where the experiment needs them):
//   experiment        "lr-bound" | "pq-bound" | "quasi-locality" | "correlations" |
//                     "energy-density" | "eigencorrelator" | "gap-stats" | "oracle-check"
//   box               {"shape": "chain", "length": L} | {"shape": "cube", "dimension": nu,
//                     "side": L} | {"intervals": [[a1, b1], ...]}
//   disorder          {"k_max": 1.0, "inverse_cdf": [q0, ..., qm]}
//   seed              unsigned 64-bit integer
//   lambda0           number or "full"
//   kappa, samples, workers
//   time_grid         {"points": 2000, "t_max": T}   (t_max absent: per-sample default)
//   center            site index or coordinate array (default: box center)
//   amplitude_f/g     number or [re, im]
//   shells, n_range   [lo, hi] inclusive
//   alpha_family      {"random": 4, "cap": 16}
//   powers            subset of [-1, 0, 1]
//   lambda_grid_points, ladder (box side lengths), many_body_box, many_body_max_occupation
//   output, format    "csv" | "json"
#pragma once

#include "osclab/anderson.hpp"
#include "osclab/freeboson.hpp"
#include "osclab/lattice.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace osc {

enum class ExperimentKind {
  lr_bound,
  pq_bound,
  quasi_locality,
  correlations,
  energy_density,
  eigencorrelator,
  gap_stats,
  oracle_check,
};

const char* to_string(ExperimentKind kind) noexcept;
// Throws ConfigError for unknown names.
ExperimentKind parse_experiment_kind(const std::string& name);
const std::vector<ExperimentKind>& all_experiment_kinds();

enum class OutputFormat { csv, json };

struct AlphaFamilyConfig {
  std::size_t random_count = 4;
  std::size_t cap = 16;
};

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::eigencorrelator;
  BoxGeometry box = BoxGeometry::chain(100);
  DisorderConfig disorder;  // disorder.master_seed doubles as the run seed
  double lambda0 = kFullSpectrum;
  unsigned kappa = 1;
  std::size_t samples = 100;
  std::size_t time_points = kDefaultTimePoints;
  std::optional<double> t_max;
  std::optional<SiteIndex> center;
  Complex amplitude_f = 1.0;
  Complex amplitude_g = 1.0;
  int shell_min = 1;
  int shell_max = 10;
  int n_min = 0;
  int n_max = 10;
  AlphaFamilyConfig alpha_family;
  std::vector<int> powers = {-1, 0, 1};
  std::size_t lambda_grid_points = 50;
  std::vector<int> ladder = {50, 100, 200};
  BoxGeometry many_body_box = BoxGeometry::chain(4);
  unsigned many_body_max_occupation = 2;

  std::size_t workers = 1;
  std::string output;
  OutputFormat format = OutputFormat::csv;

  std::uint64_t seed() const noexcept { return disorder.master_seed; }
  SiteIndex center_site() const;

  // Throws ConfigError on any inconsistency.
  void validate() const;
};

// Throws ConfigError on malformed JSON, unknown keys or invalid values.
ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config(const std::string& path);

// Normalized JSON of every field that influences results (worker count,
// output path and format excluded), with sorted keys.
std::string canonical_json(const ExperimentConfig& config);
// FNV-1a 64 of canonical_json, as 16 hex digits.
std::string config_digest(const ExperimentConfig& config);

}  // namespace osc
