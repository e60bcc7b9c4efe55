#include "osclab/ensemble.hpp"

#include "osclab/errors.hpp"
#include "osclab/kernels.hpp"
#include "osclab/oracle_suite.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>

namespace osc {

const char* library_version() noexcept { return OSCLAB_VERSION; }

std::vector<ResultRow> EnsembleResult::select(const std::string& quantity) const {
  std::vector<ResultRow> out;
  std::copy_if(rows.begin(), rows.end(), std::back_inserter(out),
               [&](const ResultRow& r) { return r.quantity == quantity; });
  return out;
}

double EnsembleResult::metadata_value(const std::string& name) const {
  const auto it = metadata.find(name);
  return it == metadata.end() ? 0.0 : it->second;
}

Statistic summarize(const std::vector<double>& values) {
  Statistic s;
  double sum = 0.0;
  for (double v : values) {
    if (std::isnan(v)) continue;
    sum += v;
    ++s.count;
  }
  if (s.count == 0) return s;
  s.mean = sum / static_cast<double>(s.count);
  if (s.count < 2) return s;
  double ss = 0.0;
  for (double v : values) {
    if (!std::isnan(v)) ss += (v - s.mean) * (v - s.mean);
  }
  const double n = static_cast<double>(s.count);
  s.std_error = std::sqrt(ss / (n - 1.0)) / std::sqrt(n);
  return s;
}

EnsembleResult reduce_samples(const ExperimentConfig& config, const std::vector<SlotKey>& layout,
                              const std::vector<SampleRecord>& records) {
  EnsembleResult out;
  out.experiment = to_string(config.kind);
  out.config_digest = config_digest(config);
  out.seed = config.seed();
  out.version = library_version();
  out.samples = records.size();
  std::vector<double> column(records.size());
  for (std::size_t slot = 0; slot < layout.size(); ++slot) {
    for (std::size_t i = 0; i < records.size(); ++i) {
      if (records[i].values.size() != layout.size()) {
        throw std::logic_error("sample record does not match the result layout");
      }
      column[i] = records[i].values[slot];
    }
    out.rows.push_back({layout[slot].quantity, layout[slot].key_name, layout[slot].key, summarize(column)});
  }
  for (const auto& r : records) {
    for (const auto& [name, value] : r.counters) out.metadata[name] += value;
  }
  out.metadata["samples"] = static_cast<double>(records.size());
  return out;
}

EnsembleResult run_ensemble(const ExperimentConfig& config) {
  config.validate();
  if (config.kind == ExperimentKind::oracle_check) {
    OracleSuiteOptions options;
    options.seed = config.seed();
    return oracle_suite_result(config, options);
  }
  return run_ensemble(config, result_layout(config), evaluate_sample);
}

EnsembleResult run_ensemble(const ExperimentConfig& config, const std::vector<SlotKey>& layout,
                            const SampleEvaluator& evaluate) {
  std::vector<SampleRecord> records(config.samples);

  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> completed{0};
  std::atomic<bool> stop{false};
  std::mutex failure_mutex;
  std::optional<std::size_t> failed_index;
  std::string failure_message;

  auto work = [&] {
    while (!stop.load()) {
      const std::size_t i = next.fetch_add(1);
      if (i >= config.samples) return;
      try {
        records[i] = evaluate(config, i);
        completed.fetch_add(1);
      } catch (const std::exception& e) {
        std::lock_guard lock(failure_mutex);
        if (!failed_index || i < *failed_index) {
          failed_index = i;
          failure_message = e.what();
        }
        stop.store(true);
      }
    }
  };

  const std::size_t threads = std::max<std::size_t>(1, std::min(config.workers, config.samples));
  if (threads == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < threads; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (failed_index) {
    throw PartialResultError("sample " + std::to_string(*failed_index) + " failed: " + failure_message,
                             completed.load());
  }
  return reduce_samples(config, layout, records);
}

}  // namespace osc
