// osclab - command line front end for the disorder-averaged experiments.
//
//   osclab <experiment> --config PATH [--samples N] [--seed S] [--workers W]
//                       [--out PATH] [--format csv|json] [--plot PATH]
//   osclab oracle-check [--budget N] [--seed S] [--out PATH] [--format csv|json]
//
// Exit codes: 0 success, 2 configuration error, 3 numeric or oracle failure,
// 1 anything else (I/O, usage).
#include "osclab/config.hpp"
#include "osclab/emit.hpp"
#include "osclab/ensemble.hpp"
#include "osclab/errors.hpp"
#include "osclab/fit.hpp"
#include "osclab/oracle_suite.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;

struct Overrides {
  std::string config_path;
  std::optional<std::size_t> samples;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> workers;
  std::string out;
  std::string format;
  std::string plot;
  std::string fit;
  std::size_t budget = 20736;
};

void report_counters(const osc::EnsembleResult& result) {
  for (const auto& [name, value] : result.metadata) {
    if (name.find("violations") != std::string::npos || name == "degenerate_samples" ||
        name == "failed_checks") {
      std::fprintf(stderr, "%s: %.0f\n", name.c_str(), value);
    }
  }
}

void write_output(const osc::EnsembleResult& result, const osc::ExperimentConfig& cfg,
                  const Overrides& o) {
  const std::string& path = o.out.empty() ? cfg.output : o.out;
  if (path.empty() || path == "-") {
    std::cout << (cfg.format == osc::OutputFormat::csv ? osc::to_csv(result) : osc::to_json(result));
  } else {
    osc::emit(result, cfg.format, path);
    std::fprintf(stderr, "wrote %s\n", path.c_str());
  }
  if (!o.plot.empty()) {
    osc::emit_plot_script(result, o.plot);
    std::fprintf(stderr, "wrote %s\n", o.plot.c_str());
  }
}

int run_experiment(osc::ExperimentKind kind, const Overrides& o) {
  osc::ExperimentConfig cfg = o.config_path.empty() ? osc::ExperimentConfig{} : osc::load_config(o.config_path);
  cfg.kind = kind;
  if (o.samples) cfg.samples = *o.samples;
  if (o.seed) cfg.disorder.master_seed = *o.seed;
  if (o.workers) cfg.workers = *o.workers;
  if (!o.format.empty()) cfg.format = o.format == "json" ? osc::OutputFormat::json : osc::OutputFormat::csv;
  cfg.validate();

  osc::EnsembleResult result;
  if (kind == osc::ExperimentKind::oracle_check) {
    osc::OracleSuiteOptions options;
    options.seed = cfg.seed();
    options.budget = o.budget;
    result = osc::oracle_suite_result(cfg, options);
  } else {
    result = osc::run_ensemble(cfg);
  }
  write_output(result, cfg, o);
  report_counters(result);

  if (!o.fit.empty()) {
    const auto rows = result.select(o.fit);
    if (rows.empty()) throw osc::RangeError("no quantity named " + o.fit);
    const osc::DecayFit fit = osc::fit_exponential(result, o.fit, rows.front().key, rows.back().key);
    std::fprintf(stderr, "fit %s: C_hat=%.6g mu_hat=%.6g r_squared=%.4f over %zu keys\n", o.fit.c_str(),
                 fit.c_hat, fit.mu_hat, fit.r_squared, fit.points);
  }
  return result.metadata_value("failed_checks") > 0.0 ? kExitNumeric : 0;
}

const char* describe(osc::ExperimentKind kind) {
  switch (kind) {
    case osc::ExperimentKind::lr_bound: return "Weyl commutator norms against their envelopes by shell";
    case osc::ExperimentKind::pq_bound: return "Position/momentum commutator coefficients by shell";
    case osc::ExperimentKind::quasi_locality: return "Localized Heisenberg evolution error by support radius";
    case osc::ExperimentKind::correlations: return "Dynamic correlations in localized eigenstates by shell";
    case osc::ExperimentKind::energy_density: return "Excitation energy density under both boundary conditions";
    case osc::ExperimentKind::eigencorrelator: return "Averaged eigenfunction correlator by shell";
    case osc::ExperimentKind::gap_stats: return "One-body and many-body spectral gap statistics";
    case osc::ExperimentKind::oracle_check: return "Closed forms against truncated Fock-space matrices";
  }
  return "";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Disorder-averaged locality experiments for harmonic lattices"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(osc::library_version()));

  Overrides o;
  std::optional<osc::ExperimentKind> chosen;
  for (osc::ExperimentKind kind : osc::all_experiment_kinds()) {
    const bool oracle = kind == osc::ExperimentKind::oracle_check;
    CLI::App* sub = app.add_subcommand(osc::to_string(kind), describe(kind));
    auto* config = sub->add_option("--config", o.config_path, "JSON configuration file");
    if (oracle) {
      sub->add_option("--budget", o.budget, "Largest truncated Hilbert-space dimension")->check(CLI::PositiveNumber);
    } else {
      config->required();
      sub->add_option("--samples", o.samples, "Number of disorder samples")->check(CLI::PositiveNumber);
      sub->add_option("--workers", o.workers, "Worker threads")->check(CLI::PositiveNumber);
      sub->add_option("--plot", o.plot, "Write a matplotlib script for the result");
      sub->add_option("--fit", o.fit, "Print an exponential fit of this quantity");
    }
    sub->add_option("--seed", o.seed, "Master seed");
    sub->add_option("--out", o.out, "Output file ('-' or absent: stdout)");
    sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    sub->callback([&chosen, kind] { chosen = kind; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    return run_experiment(*chosen, o);
  } catch (const osc::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitConfig;
  } catch (const osc::PartialResultError& e) {
    std::fprintf(stderr, "error after %zu completed samples: %s\n", e.completed_samples(), e.what());
    return kExitNumeric;
  } catch (const osc::NumericError& e) {
    std::fprintf(stderr, "numeric error: %s\n", e.what());
    return kExitNumeric;
  } catch (const osc::ResourceError& e) {
    std::fprintf(stderr, "resource error: %s\n", e.what());
    return kExitNumeric;
  } catch (const osc::RangeError& e) {
    std::fprintf(stderr, "fit error: %s\n", e.what());
    return kExitNumeric;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
