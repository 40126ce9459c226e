#include "sampler_cli/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "nrsampler/torus_problems.hpp"

namespace sampler_cli {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> items;
  std::stringstream stream(value);
  std::string item;
  while (std::getline(stream, item, ',')) items.push_back(trim(item));
  return items;
}

class Parser {
 public:
  explicit Parser(std::string origin) : origin_(std::move(origin)) {}

  [[noreturn]] void fail(const std::string& key, const std::string& message) const {
    throw ConfigError(origin_ + ": " + key + ": " + message);
  }

  double number(const std::string& key, const std::string& text) const {
    double value = 0.0;
    const char* begin = text.data();
    const char* end = begin + text.size();
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (text.empty() || ec != std::errc() || ptr != end) fail(key, "not a number: '" + text + "'");
    return value;
  }

  double positive(const std::string& key, const std::string& text) const {
    const double value = number(key, text);
    if (!(value > 0.0)) fail(key, "must be > 0");
    return value;
  }

  std::int64_t integer(const std::string& key, const std::string& text) const {
    std::int64_t value = 0;
    const char* begin = text.data();
    const char* end = begin + text.size();
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (text.empty() || ec != std::errc() || ptr != end) fail(key, "not an integer: '" + text + "'");
    return value;
  }

  bool flag(const std::string& key, const std::string& text) const {
    if (text == "on" || text == "true" || text == "1" || text == "yes") return true;
    if (text == "off" || text == "false" || text == "0" || text == "no") return false;
    fail(key, "expected on/off");
  }

 private:
  std::string origin_;
};

const std::set<std::string> kKeys = {
    "experiment", "h",          "A",          "A_custom",     "T",            "runs",
    "seed",       "noise",      "beta",       "potential",    "observable",   "major_radius",
    "minor_radius", "kappa",    "initial_dt", "eps_tol",      "max_rk_steps", "halving",
    "timing",     "out",        "threads"};

}  // namespace

ExperimentSpec parse_experiment_spec(const std::string& text, const std::string& origin) {
  const Parser p(origin);
  std::map<std::string, std::string> entries;
  std::stringstream stream(text);
  std::string line;
  int line_no = 0;
  while (std::getline(stream, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(origin + ":" + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (!kKeys.count(key)) {
      throw ConfigError(origin + ":" + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
    if (!entries.emplace(key, value).second) {
      throw ConfigError(origin + ":" + std::to_string(line_no) + ": duplicate key '" + key + "'");
    }
  }

  ExperimentSpec spec;
  auto get = [&](const std::string& key) -> const std::string* {
    const auto it = entries.find(key);
    return it == entries.end() ? nullptr : &it->second;
  };

  if (const auto* v = get("experiment")) spec.experiment = *v;
  if (spec.experiment != "test1" && spec.experiment != "test2" && spec.experiment != "custom") {
    p.fail("experiment", "expected test1, test2 or custom");
  }

  if (const auto* v = get("h")) {
    spec.step_sizes.clear();
    for (const auto& item : split_list(*v)) spec.step_sizes.push_back(p.positive("h", item));
    if (spec.step_sizes.empty()) p.fail("h", "empty list");
  }
  if (const auto* v = get("T")) spec.total_time = p.positive("T", *v);
  for (double h : spec.step_sizes) {
    if (spec.total_time < h * (1.0 - 1e-12)) p.fail("T", "must be at least every h");
  }
  if (const auto* v = get("runs")) {
    const auto runs = p.integer("runs", *v);
    if (runs < 1 || runs > 1000000) p.fail("runs", "must be >= 1");
    spec.runs = static_cast<int>(runs);
  }
  if (const auto* v = get("seed")) {
    const auto seed = p.integer("seed", *v);
    if (seed < 0) p.fail("seed", "must be >= 0");
    spec.seed = static_cast<std::uint64_t>(seed);
  }
  if (const auto* v = get("noise")) {
    const auto kind = nrs::parse_noise_kind(*v);
    if (!kind) p.fail("noise", "expected gaussian, rademacher or uniform_bounded");
    spec.noise = *kind;
  }
  if (const auto* v = get("beta")) spec.beta = p.positive("beta", *v);
  if (const auto* v = get("major_radius")) spec.major_radius = p.positive("major_radius", *v);
  if (const auto* v = get("minor_radius")) spec.minor_radius = p.positive("minor_radius", *v);
  if (!(spec.minor_radius < spec.major_radius)) p.fail("minor_radius", "need 0 < r < R");

  if (spec.experiment == "custom") {
    const auto* potential = get("potential");
    const auto* observable = get("observable");
    const auto* beta = get("beta");
    if (!potential || !observable || !beta) {
      p.fail("experiment", "custom needs potential, observable and beta");
    }
    spec.potential = *potential;
    spec.observable = *observable;
    if (spec.potential != "test1" && spec.potential != "test2" && spec.potential != "zero") {
      p.fail("potential", "expected test1, test2 or zero");
    }
    if (spec.observable != "test1" && spec.observable != "test2" &&
        spec.observable != "cos_phi") {
      p.fail("observable", "expected test1, test2 or cos_phi");
    }
  } else if (get("potential") || get("observable")) {
    p.fail("experiment", "potential/observable apply to custom experiments only");
  }

  std::optional<nrs::Matrix> custom;
  if (const auto* v = get("A_custom")) {
    const auto items = split_list(*v);
    if (items.size() != 3) p.fail("A_custom", "expected three entries a12, a13, a23");
    const double a12 = p.number("A_custom", items[0]);
    const double a13 = p.number("A_custom", items[1]);
    const double a23 = p.number("A_custom", items[2]);
    custom = nrs::make_matrix({{0.0, a12, a13}, {-a12, 0.0, a23}, {-a13, -a23, 0.0}});
  }
  std::vector<std::string> labels{"zero"};
  if (const auto* v = get("A")) labels = split_list(*v);
  if (labels.empty()) p.fail("A", "empty list");
  for (const auto& label : labels) {
    if (label == "zero") {
      spec.a_choices.push_back({label, nrs::Matrix::Zero(3, 3)});
    } else if (label == "abar") {
      spec.a_choices.push_back({label, nrs::abar_matrix()});
    } else if (label == "custom") {
      if (!custom) p.fail("A", "custom requires A_custom");
      spec.a_choices.push_back({label, *custom});
    } else {
      p.fail("A", "expected zero, abar or custom, got '" + label + "'");
    }
  }

  if (const auto* v = get("kappa")) spec.projection.kappa = p.number("kappa", *v);
  if (const auto* v = get("initial_dt")) spec.projection.initial_dt = p.number("initial_dt", *v);
  if (const auto* v = get("eps_tol")) spec.projection.eps_tol = p.number("eps_tol", *v);
  if (const auto* v = get("max_rk_steps")) {
    const auto steps = p.integer("max_rk_steps", *v);
    if (steps < 1 || steps > 100000000) p.fail("max_rk_steps", "out of range");
    spec.projection.max_rk_steps = static_cast<int>(steps);
  }
  if (const auto* v = get("halving")) spec.projection.halving = p.flag("halving", *v);
  try {
    spec.projection.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(origin + ": " + e.what());
  }

  if (const auto* v = get("timing")) spec.timing = p.flag("timing", *v);
  if (const auto* v = get("out")) {
    if (v->empty()) p.fail("out", "empty path");
    spec.out_dir = *v;
  }
  if (const auto* v = get("threads")) {
    const auto threads = p.integer("threads", *v);
    if (threads < 1 || threads > 4096) p.fail("threads", "must be >= 1");
    spec.threads = static_cast<int>(threads);
  }
  return spec;
}

ExperimentSpec load_experiment_spec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path.string() + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_experiment_spec(buffer.str(), path.string());
}

}  // namespace sampler_cli
