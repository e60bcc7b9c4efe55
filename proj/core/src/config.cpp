#include "osclab/config.hpp"

#include "osclab/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <tuple>

namespace osc {

using nlohmann::json;

namespace {

const std::vector<std::pair<ExperimentKind, const char*>>& kind_names() {
  static const std::vector<std::pair<ExperimentKind, const char*>> names = {
      {ExperimentKind::lr_bound, "lr-bound"},
      {ExperimentKind::pq_bound, "pq-bound"},
      {ExperimentKind::quasi_locality, "quasi-locality"},
      {ExperimentKind::correlations, "correlations"},
      {ExperimentKind::energy_density, "energy-density"},
      {ExperimentKind::eigencorrelator, "eigencorrelator"},
      {ExperimentKind::gap_stats, "gap-stats"},
      {ExperimentKind::oracle_check, "oracle-check"},
  };
  return names;
}

[[noreturn]] void fail(const std::string& what) { throw ConfigError(what); }

void check_keys(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  if (!obj.is_object()) fail(where + ": expected an object");
  for (const auto& item : obj.items()) {
    if (!allowed.count(item.key())) fail(where + ": unknown key '" + item.key() + "'");
  }
}

template <typename T>
T get_as(const json& value, const std::string& where) {
  try {
    return value.get<T>();
  } catch (const json::exception&) {
    fail(where + ": wrong type");
  }
}

int get_int(const json& value, const std::string& where) {
  if (!value.is_number_integer()) fail(where + ": expected an integer");
  return get_as<int>(value, where);
}

std::size_t get_count(const json& value, const std::string& where) {
  if (!value.is_number_unsigned()) fail(where + ": expected a nonnegative integer");
  return get_as<std::size_t>(value, where);
}

double get_number(const json& value, const std::string& where) {
  if (!value.is_number()) fail(where + ": expected a number");
  const double v = value.get<double>();
  if (!std::isfinite(v)) fail(where + ": must be finite");
  return v;
}

Complex get_complex(const json& value, const std::string& where) {
  if (value.is_number()) return {get_number(value, where), 0.0};
  if (value.is_array() && value.size() == 2) {
    return {get_number(value[0], where), get_number(value[1], where)};
  }
  fail(where + ": expected a number or [re, im]");
}

std::pair<int, int> get_range(const json& value, const std::string& where) {
  if (!value.is_array() || value.size() != 2) fail(where + ": expected [lo, hi]");
  const int lo = get_int(value[0], where);
  const int hi = get_int(value[1], where);
  if (lo > hi) fail(where + ": lo > hi");
  return {lo, hi};
}

BoxGeometry parse_box(const json& value, const std::string& where) {
  if (!value.is_object()) fail(where + ": expected an object");
  try {
    if (value.contains("intervals")) {
      check_keys(value, {"intervals"}, where);
      const json& iv = value["intervals"];
      if (!iv.is_array() || iv.empty()) fail(where + ".intervals: expected a nonempty array");
      std::vector<std::pair<int, int>> intervals;
      for (const auto& pair : iv) {
        if (!pair.is_array() || pair.size() != 2) fail(where + ".intervals: expected [a, b] pairs");
        intervals.emplace_back(get_int(pair[0], where), get_int(pair[1], where));
      }
      return BoxGeometry(std::move(intervals));
    }
    const std::string shape = value.contains("shape") ? get_as<std::string>(value["shape"], where)
                                                      : std::string("chain");
    if (shape == "chain") {
      check_keys(value, {"shape", "length"}, where);
      if (!value.contains("length")) fail(where + ": chain needs 'length'");
      return BoxGeometry::chain(get_int(value["length"], where + ".length"));
    }
    if (shape == "cube") {
      check_keys(value, {"shape", "dimension", "side"}, where);
      if (!value.contains("dimension") || !value.contains("side")) {
        fail(where + ": cube needs 'dimension' and 'side'");
      }
      return BoxGeometry::cube(get_int(value["dimension"], where + ".dimension"),
                               get_int(value["side"], where + ".side"));
    }
    fail(where + ": unknown shape '" + shape + "'");
  } catch (const std::invalid_argument& e) {
    fail(where + ": " + e.what());
  }
}

json box_to_json(const BoxGeometry& box) {
  json iv = json::array();
  for (const auto& [a, b] : box.intervals()) iv.push_back({a, b});
  return json{{"intervals", iv}};
}

}  // namespace

const char* to_string(ExperimentKind kind) noexcept {
  for (const auto& [k, name] : kind_names()) {
    if (k == kind) return name;
  }
  return "unknown";
}

ExperimentKind parse_experiment_kind(const std::string& name) {
  for (const auto& [k, n] : kind_names()) {
    if (name == n) return k;
  }
  throw ConfigError("unknown experiment '" + name + "'");
}

const std::vector<ExperimentKind>& all_experiment_kinds() {
  static const std::vector<ExperimentKind> kinds = [] {
    std::vector<ExperimentKind> out;
    for (const auto& [k, n] : kind_names()) out.push_back(k);
    return out;
  }();
  return kinds;
}

SiteIndex ExperimentConfig::center_site() const { return center ? *center : box.center(); }

void ExperimentConfig::validate() const {
  disorder.validate();
  if (samples < 1) fail("samples must be >= 1");
  if (workers < 1) fail("workers must be >= 1");
  if (time_points < 1) fail("time_grid.points must be >= 1");
  if (t_max && !(*t_max >= 0.0)) fail("time_grid.t_max must be nonnegative");
  if (std::isnan(lambda0)) fail("lambda0 must be a number or \"full\"");
  if (center && *center >= box.size()) fail("center lies outside the box");
  if (shell_min < 0 || shell_max < shell_min) fail("shells must be a nonnegative ascending range");
  if (n_min < 0 || n_max < n_min) fail("n_range must be a nonnegative ascending range");
  if (alpha_family.cap < 1) fail("alpha_family.cap must be >= 1");
  if (powers.empty()) fail("powers must not be empty");
  for (int s : powers) {
    if (s < -1 || s > 1) fail("powers must lie in {-1, 0, 1}");
  }
  if (lambda_grid_points < 2) fail("lambda_grid_points must be >= 2");
  if (ladder.empty()) fail("ladder must not be empty");
  for (int side : ladder) {
    if (side < 1) fail("ladder entries must be >= 1");
  }
  if (many_body_box.size() > 8) fail("many_body_box may hold at most 8 sites");
}

ExperimentConfig parse_config(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    fail(std::string("config is not valid JSON: ") + e.what());
  }
  check_keys(doc,
             {"experiment", "box", "disorder", "seed", "lambda0", "kappa", "samples", "time_grid",
              "center", "amplitude_f", "amplitude_g", "shells", "n_range", "alpha_family", "powers",
              "lambda_grid_points", "ladder", "many_body_box", "many_body_max_occupation", "workers",
              "output", "format"},
             "config");

  ExperimentConfig cfg;
  if (doc.contains("experiment")) {
    cfg.kind = parse_experiment_kind(get_as<std::string>(doc["experiment"], "experiment"));
  }
  if (doc.contains("box")) cfg.box = parse_box(doc["box"], "box");
  if (doc.contains("disorder")) {
    const json& d = doc["disorder"];
    check_keys(d, {"k_max", "inverse_cdf"}, "disorder");
    if (d.contains("k_max")) cfg.disorder.k_max = get_number(d["k_max"], "disorder.k_max");
    if (d.contains("inverse_cdf")) {
      if (!d["inverse_cdf"].is_array()) fail("disorder.inverse_cdf: expected an array");
      for (const auto& q : d["inverse_cdf"]) {
        cfg.disorder.inverse_cdf.push_back(get_number(q, "disorder.inverse_cdf"));
      }
    }
  }
  if (doc.contains("seed")) {
    if (!doc["seed"].is_number_unsigned()) fail("seed: expected a nonnegative integer");
    cfg.disorder.master_seed = doc["seed"].get<std::uint64_t>();
  }
  if (doc.contains("lambda0")) {
    const json& l = doc["lambda0"];
    if (l.is_string()) {
      if (l.get<std::string>() != "full") fail("lambda0: expected a number or \"full\"");
      cfg.lambda0 = kFullSpectrum;
    } else {
      cfg.lambda0 = get_number(l, "lambda0");
    }
  }
  if (doc.contains("kappa")) cfg.kappa = static_cast<unsigned>(get_count(doc["kappa"], "kappa"));
  if (doc.contains("samples")) cfg.samples = get_count(doc["samples"], "samples");
  if (doc.contains("time_grid")) {
    const json& tg = doc["time_grid"];
    check_keys(tg, {"points", "t_max"}, "time_grid");
    if (tg.contains("points")) cfg.time_points = get_count(tg["points"], "time_grid.points");
    if (tg.contains("t_max")) cfg.t_max = get_number(tg["t_max"], "time_grid.t_max");
  }
  if (doc.contains("center")) {
    const json& c = doc["center"];
    if (c.is_array()) {
      Coordinate coord;
      for (const auto& v : c) coord.push_back(get_int(v, "center"));
      if (!cfg.box.contains(coord)) fail("center lies outside the box");
      cfg.center = cfg.box.index(coord);
    } else {
      cfg.center = get_count(c, "center");
    }
  }
  if (doc.contains("amplitude_f")) cfg.amplitude_f = get_complex(doc["amplitude_f"], "amplitude_f");
  if (doc.contains("amplitude_g")) cfg.amplitude_g = get_complex(doc["amplitude_g"], "amplitude_g");
  if (doc.contains("shells")) std::tie(cfg.shell_min, cfg.shell_max) = get_range(doc["shells"], "shells");
  if (doc.contains("n_range")) std::tie(cfg.n_min, cfg.n_max) = get_range(doc["n_range"], "n_range");
  if (doc.contains("alpha_family")) {
    const json& a = doc["alpha_family"];
    check_keys(a, {"random", "cap"}, "alpha_family");
    if (a.contains("random")) cfg.alpha_family.random_count = get_count(a["random"], "alpha_family.random");
    if (a.contains("cap")) cfg.alpha_family.cap = get_count(a["cap"], "alpha_family.cap");
  }
  if (doc.contains("powers")) {
    if (!doc["powers"].is_array()) fail("powers: expected an array");
    cfg.powers.clear();
    for (const auto& s : doc["powers"]) cfg.powers.push_back(get_int(s, "powers"));
    std::sort(cfg.powers.begin(), cfg.powers.end());
    cfg.powers.erase(std::unique(cfg.powers.begin(), cfg.powers.end()), cfg.powers.end());
  }
  if (doc.contains("lambda_grid_points")) {
    cfg.lambda_grid_points = get_count(doc["lambda_grid_points"], "lambda_grid_points");
  }
  if (doc.contains("ladder")) {
    if (!doc["ladder"].is_array()) fail("ladder: expected an array");
    cfg.ladder.clear();
    for (const auto& s : doc["ladder"]) cfg.ladder.push_back(get_int(s, "ladder"));
  }
  if (doc.contains("many_body_box")) cfg.many_body_box = parse_box(doc["many_body_box"], "many_body_box");
  if (doc.contains("many_body_max_occupation")) {
    cfg.many_body_max_occupation =
        static_cast<unsigned>(get_count(doc["many_body_max_occupation"], "many_body_max_occupation"));
  }
  if (doc.contains("workers")) cfg.workers = get_count(doc["workers"], "workers");
  if (doc.contains("output")) cfg.output = get_as<std::string>(doc["output"], "output");
  if (doc.contains("format")) {
    const auto f = get_as<std::string>(doc["format"], "format");
    if (f == "csv") {
      cfg.format = OutputFormat::csv;
    } else if (f == "json") {
      cfg.format = OutputFormat::json;
    } else {
      fail("format: expected \"csv\" or \"json\"");
    }
  }
  cfg.validate();
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  try {
    return parse_config(text.str());
  } catch (const ConfigError& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

std::string canonical_json(const ExperimentConfig& cfg) {
  json doc;
  doc["experiment"] = to_string(cfg.kind);
  doc["box"] = box_to_json(cfg.box);
  doc["disorder"] = {{"k_max", json(cfg.disorder.k_max)},
                     {"inverse_cdf", cfg.disorder.inverse_cdf}};
  doc["seed"] = cfg.disorder.master_seed;
  doc["lambda0"] = std::isinf(cfg.lambda0) ? json("full") : json(cfg.lambda0);
  doc["kappa"] = cfg.kappa;
  doc["samples"] = cfg.samples;
  doc["time_grid"] = {{"points", cfg.time_points}};
  if (cfg.t_max) doc["time_grid"]["t_max"] = json(*cfg.t_max);
  doc["center"] = cfg.center_site();
  doc["amplitude_f"] = {cfg.amplitude_f.real(), cfg.amplitude_f.imag()};
  doc["amplitude_g"] = {cfg.amplitude_g.real(), cfg.amplitude_g.imag()};
  doc["shells"] = {cfg.shell_min, cfg.shell_max};
  doc["n_range"] = {cfg.n_min, cfg.n_max};
  doc["alpha_family"] = {{"random", cfg.alpha_family.random_count}, {"cap", cfg.alpha_family.cap}};
  doc["powers"] = cfg.powers;
  doc["lambda_grid_points"] = cfg.lambda_grid_points;
  doc["ladder"] = cfg.ladder;
  doc["many_body_box"] = box_to_json(cfg.many_body_box);
  doc["many_body_max_occupation"] = cfg.many_body_max_occupation;
  // nlohmann::json objects keep keys sorted, so dump() is canonical.
  return doc.dump();
}

std::string config_digest(const ExperimentConfig& cfg) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : canonical_json(cfg)) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

}  // namespace osc
