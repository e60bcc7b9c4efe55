// oracle_suite.hpp - closed forms checked against brute-force Fock matrices.
#pragma once

#include "osclab/ensemble.hpp"

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace osc {

struct AgreementCheck {
  std::string name;
  double max_deviation = 0.0;
  double tolerance = 0.0;
  std::size_t instances = 0;
  bool passed = false;
};

struct OracleSuiteOptions {
  std::uint64_t seed = 0;
  // Largest truncated Hilbert-space dimension the suite may build.
  std::size_t budget = 20736;
};

std::vector<AgreementCheck> run_oracle_suite(const OracleSuiteOptions& options);

// The checks as an ensemble-style result: one row per check with the maximum
// deviation as mean and the instance count as count; metadata carries
// "failed_checks" and each tolerance.
EnsembleResult oracle_suite_result(const ExperimentConfig& config, const OracleSuiteOptions& options);

}  // namespace osc
