#include "osclab/emit.hpp"

#include "osclab/errors.hpp"
#include "osclab/fit.hpp"

#include <json.hpp>

#include <cerrno>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <set>
#include <sstream>

namespace osc {
namespace {

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path + " for writing: " + std::strerror(errno));
  out << text;
  out.flush();
  if (!out) throw IoError("write failed for " + path);
}

std::string py_list(const std::vector<double>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + g17(v[i]);
  return s + "]";
}

}  // namespace

std::string to_csv(const EnsembleResult& result) {
  std::string out = "quantity,key_name,key,mean,stderr,count\n";
  for (const ResultRow& r : result.rows) {
    out += r.quantity + ',' + r.key_name + ',' + g17(r.key) + ',' + g17(r.stat.mean) + ',' +
           g17(r.stat.std_error) + ',' + std::to_string(r.stat.count) + '\n';
  }
  return out;
}

std::string to_json(const EnsembleResult& result) {
  nlohmann::ordered_json doc;
  doc["config_digest"] = result.config_digest;
  doc["seed"] = result.seed;
  doc["version"] = result.version;
  doc["experiment"] = result.experiment;
  doc["samples"] = result.samples;
  doc["metadata"] = nlohmann::ordered_json::object();
  for (const auto& [name, value] : result.metadata) doc["metadata"][name] = value;
  doc["results"] = nlohmann::ordered_json::array();
  for (const ResultRow& r : result.rows) {
    doc["results"].push_back({{"quantity", r.quantity},
                              {"key_name", r.key_name},
                              {"key", r.key},
                              {"mean", r.stat.mean},
                              {"stderr", r.stat.std_error},
                              {"count", r.stat.count}});
  }
  return doc.dump(2) + "\n";
}

EnsembleResult result_from_json(const std::string& text) {
  try {
    const auto doc = nlohmann::json::parse(text);
    EnsembleResult out;
    out.config_digest = doc.at("config_digest").get<std::string>();
    out.seed = doc.at("seed").get<std::uint64_t>();
    out.version = doc.at("version").get<std::string>();
    out.experiment = doc.at("experiment").get<std::string>();
    out.samples = doc.at("samples").get<std::size_t>();
    for (const auto& [name, value] : doc.at("metadata").items()) out.metadata[name] = value.get<double>();
    for (const auto& r : doc.at("results")) {
      out.rows.push_back({r.at("quantity").get<std::string>(), r.at("key_name").get<std::string>(),
                          r.at("key").get<double>(),
                          {r.at("mean").get<double>(), r.at("stderr").get<double>(),
                           r.at("count").get<std::size_t>()}});
    }
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("malformed result document: ") + e.what());
  }
}

void emit(const EnsembleResult& result, OutputFormat format, const std::string& path) {
  write_file(path, format == OutputFormat::csv ? to_csv(result) : to_json(result));
}

EnsembleResult read_result_json(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path + ": " + std::strerror(errno));
  std::ostringstream text;
  text << in.rdbuf();
  try {
    return result_from_json(text.str());
  } catch (const IoError& e) {
    throw IoError(path + ": " + e.what());
  }
}

void emit_plot_script(const EnsembleResult& result, const std::string& path) {
  std::vector<std::string> quantities;
  std::set<std::string> seen;
  for (const ResultRow& r : result.rows) {
    if (seen.insert(r.quantity).second) quantities.push_back(r.quantity);
  }

  std::string s;
  s += "#!/usr/bin/env python3\n";
  s += "# " + result.experiment + " run, config digest " + result.config_digest + ", seed " +
       std::to_string(result.seed) + ", " + std::to_string(result.samples) + " samples\n";
  s += "import os\nimport sys\n\nimport matplotlib\nmatplotlib.use(\"Agg\")\n";
  s += "import matplotlib.pyplot as plt\nimport numpy as np\n\nSERIES = [\n";
  std::string key_name;
  for (const auto& q : quantities) {
    std::vector<double> keys, means, errs;
    for (const ResultRow& r : result.select(q)) {
      if (r.stat.count == 0) continue;
      key_name = r.key_name;
      keys.push_back(r.key);
      means.push_back(r.stat.mean);
      errs.push_back(r.stat.std_error);
    }
    std::string fit = "None";
    if (!keys.empty()) {
      try {
        const DecayFit f = fit_exponential(result, q, keys.front(), keys.back());
        fit = "(" + g17(f.c_hat) + ", " + g17(f.mu_hat) + ", " + g17(f.r_squared) + ")";
      } catch (const RangeError&) {
      }
    }
    s += "    (\"" + q + "\", " + py_list(keys) + ", " + py_list(means) + ", " + py_list(errs) + ", " +
         fit + "),\n";
  }
  s += "]\n\n";
  s += "out = sys.argv[1] if len(sys.argv) > 1 else os.path.splitext(os.path.abspath(__file__))[0] + \".png\"\n";
  s += "fig, ax = plt.subplots(figsize=(7, 4.5))\n";
  s += "for name, keys, means, errs, fit in SERIES:\n";
  s += "    keys, means, errs = np.array(keys), np.array(means), np.array(errs)\n";
  s += "    shown = means > 0\n";
  s += "    if not shown.any():\n        continue\n";
  s += "    line = ax.errorbar(keys[shown], means[shown], yerr=errs[shown], fmt=\"o\", ms=3, capsize=2, label=name)\n";
  s += "    if fit is not None:\n";
  s += "        c, mu, r2 = fit\n";
  s += "        ax.plot(keys, c * np.exp(-mu * keys), \"-\", color=line[0].get_color(),\n";
  s += "                label=f\"{name} fit: mu={mu:.4g}, R2={r2:.3f}\")\n";
  s += "ax.set_yscale(\"log\")\n";
  s += "ax.set_xlabel(\"" + (key_name.empty() ? std::string("key") : key_name) + "\")\n";
  s += "ax.set_ylabel(\"sample mean\")\n";
  s += "ax.set_title(\"" + result.experiment + "\")\n";
  s += "ax.legend(fontsize=7)\nfig.tight_layout()\nfig.savefig(out, dpi=120)\n";
  write_file(path, s);
}

}  // namespace osc
