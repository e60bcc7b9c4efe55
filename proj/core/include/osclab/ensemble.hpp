// ensemble.hpp - Monte Carlo disorder averaging.
//
// Every sample is a pure function of (config, index). Samples are evaluated
// by a pool of workers into per-index records and reduced in index order, so
// results do not depend on the worker count.
#pragma once

#include "osclab/config.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace osc {

// One output cell: (quantity, key) such as ("lr_sup", distance = 7).
struct SlotKey {
  std::string quantity;
  std::string key_name;
  double key = 0.0;
};

// Values aligned with the experiment's slot layout; NaN marks "not
// applicable for this sample". Counters are summed across samples.
struct SampleRecord {
  std::vector<double> values;
  std::map<std::string, double> counters;
};

struct Statistic {
  double mean = 0.0;
  double std_error = 0.0;  // sample standard deviation / sqrt(count); 0 for count < 2
  std::size_t count = 0;

  bool operator==(const Statistic&) const = default;
};

struct ResultRow {
  std::string quantity;
  std::string key_name;
  double key = 0.0;
  Statistic stat;

  bool operator==(const ResultRow&) const = default;
};

struct EnsembleResult {
  std::string experiment;
  std::string config_digest;
  std::uint64_t seed = 0;
  std::string version;
  std::size_t samples = 0;
  std::map<std::string, double> metadata;
  std::vector<ResultRow> rows;

  std::vector<ResultRow> select(const std::string& quantity) const;
  double metadata_value(const std::string& name) const;  // 0 when absent
  bool operator==(const EnsembleResult&) const = default;
};

const char* library_version() noexcept;

// NaN entries are skipped.
Statistic summarize(const std::vector<double>& values);

EnsembleResult reduce_samples(const ExperimentConfig& config, const std::vector<SlotKey>& layout,
                              const std::vector<SampleRecord>& records);

using SampleEvaluator = std::function<SampleRecord(const ExperimentConfig&, std::uint64_t)>;

// Throws PartialResultError if a sample fails; the message names the first
// failing sample and the count reports how many samples completed.
EnsembleResult run_ensemble(const ExperimentConfig& config);
// Same pool and reduction with a caller-supplied per-sample kernel.
EnsembleResult run_ensemble(const ExperimentConfig& config, const std::vector<SlotKey>& layout,
                            const SampleEvaluator& evaluate);

}  // namespace osc
