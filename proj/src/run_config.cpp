#include "popmcmc/run_config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace popmcmc::harness {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

ExperimentKind experiment_from_name(const std::string& name) {
  if (name == "mixture-vanilla") return ExperimentKind::MixtureVanilla;
  if (name == "mixture-population") return ExperimentKind::MixturePopulation;
  if (name == "mixture-st") return ExperimentKind::MixtureSt;
  if (name == "varsel-run") return ExperimentKind::VarselRun;
  if (name == "varsel-analyze") return ExperimentKind::VarselAnalyze;
  if (name == "prop1-verify") return ExperimentKind::Prop1Verify;
  if (name == "theorem1-verify") return ExperimentKind::Theorem1Verify;
  throw std::invalid_argument("unknown experiment kind: " + name);
}

std::string experiment_name(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::MixtureVanilla: return "mixture-vanilla";
    case ExperimentKind::MixturePopulation: return "mixture-population";
    case ExperimentKind::MixtureSt: return "mixture-st";
    case ExperimentKind::VarselRun: return "varsel-run";
    case ExperimentKind::VarselAnalyze: return "varsel-analyze";
    case ExperimentKind::Prop1Verify: return "prop1-verify";
    case ExperimentKind::Theorem1Verify: return "theorem1-verify";
  }
  return "unknown";
}

bool RunConfig::has(const std::string& section, const std::string& key) const {
  const auto s = sections.find(section);
  return s != sections.end() && s->second.count(key) > 0;
}

std::string RunConfig::get(const std::string& section, const std::string& key,
                           const std::string& fallback) const {
  const auto s = sections.find(section);
  if (s == sections.end()) return fallback;
  const auto k = s->second.find(key);
  return k == s->second.end() ? fallback : k->second;
}

double RunConfig::get_num(const std::string& section, const std::string& key,
                          double fallback) const {
  const std::string v = get(section, key, "");
  return v.empty() ? fallback : std::stod(v);
}

long RunConfig::get_int(const std::string& section, const std::string& key,
                        long fallback) const {
  const std::string v = get(section, key, "");
  return v.empty() ? fallback : std::stol(v);
}

std::vector<std::pair<int, int>> RunConfig::get_bands(
    const std::string& section, const std::string& key) const {
  std::vector<std::pair<int, int>> bands;
  std::string v = get(section, key, "");
  if (v.empty()) return bands;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    const auto colon = item.find(':');
    if (colon == std::string::npos)
      throw std::invalid_argument("band must look like lo:hi, got " + item);
    bands.emplace_back(std::stoi(item.substr(0, colon)),
                       std::stoi(item.substr(colon + 1)));
  }
  return bands;
}

RunConfig parse_config_text(const std::string& text) {
  RunConfig cfg;
  cfg.raw_text = text;
  std::istringstream in(text);
  std::string line, section;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[' && line.back() == ']') {
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line without '=': " + line);
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    cfg.sections[section][key] = value;
  }

  if (cfg.has("", "experiment"))
    cfg.kind = experiment_from_name(cfg.get("", "experiment", ""));
  cfg.seed = static_cast<std::uint64_t>(cfg.get_int("", "seed", 1));
  cfg.sweeps = cfg.get_int("", "sweeps", 1000);
  cfg.data_path = cfg.get("", "data", "");
  cfg.out_dir = cfg.get("", "out", "out");
  if (cfg.sweeps < 1) throw std::invalid_argument("config: sweeps must be >= 1");
  return cfg;
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

}  // namespace popmcmc::harness
