// emit.hpp - result files: CSV tables, JSON documents, matplotlib scripts.
#pragma once

#include "osclab/config.hpp"
#include "osclab/ensemble.hpp"

#include <string>
#include <vector>

namespace osc {

// Header "quantity,key_name,key,mean,stderr,count", one line per row, numbers
// with 17 significant digits.
std::string to_csv(const EnsembleResult& result);

// {config_digest, seed, version, experiment, samples, metadata, results[]}
std::string to_json(const EnsembleResult& result);
// Inverse of to_json; throws IoError on malformed documents.
EnsembleResult result_from_json(const std::string& text);

// Writes to_csv or to_json to path. Throws IoError naming the path.
void emit(const EnsembleResult& result, OutputFormat format, const std::string& path);
EnsembleResult read_result_json(const std::string& path);

// Python script that draws every quantity on a log axis against its key with
// standard-error bars and, where a decay fit exists, the fitted line. The
// data is embedded; the figure goes to argv[1] or to the script path with a
// .png suffix.
void emit_plot_script(const EnsembleResult& result, const std::string& path);

}  // namespace osc
