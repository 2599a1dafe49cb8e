#ifndef POPMCMC_RUN_CONFIG_HPP
#define POPMCMC_RUN_CONFIG_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace popmcmc::harness {

enum class ExperimentKind {
  MixtureVanilla,
  MixturePopulation,
  MixtureSt,
  VarselRun,
  VarselAnalyze,
  Prop1Verify,
  Theorem1Verify,
};

ExperimentKind experiment_from_name(const std::string& name);
std::string experiment_name(ExperimentKind kind);

// Flat key = value configuration with [section] headers. The raw file text is
// kept for the verbatim echo into run outputs.
struct RunConfig {
  ExperimentKind kind = ExperimentKind::MixtureVanilla;
  std::uint64_t seed = 1;
  long sweeps = 1000;
  std::string data_path;
  std::string out_dir = "out";
  std::string raw_text;

  std::map<std::string, std::map<std::string, std::string>> sections;

  bool has(const std::string& section, const std::string& key) const;
  std::string get(const std::string& section, const std::string& key,
                  const std::string& fallback) const;
  double get_num(const std::string& section, const std::string& key,
                 double fallback) const;
  long get_int(const std::string& section, const std::string& key,
               long fallback) const;
  std::vector<std::pair<int, int>> get_bands(const std::string& section,
                                             const std::string& key) const;
};

RunConfig parse_config_text(const std::string& text);
RunConfig parse_config_file(const std::string& path);

}  // namespace popmcmc::harness

#endif
