#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace hypgrowth::cli {

inline const std::vector<std::string> kTasks = {"gp-scan",       "decay-fit",   "thick-origin", "recursion",
                                                "oracle-verify", "ends-survey", "pc-estimate",  "boundary-point"};

// Parsed from an INI file:
//   [graph]        family, file
//   [percolation]  p, trials, seed
//   [task]         name plus task keys
//   [output]       dir, plot
struct ExperimentConfig {
  std::filesystem::path source;
  std::string family;
  std::optional<std::filesystem::path> graph_file;
  std::vector<double> p;
  std::size_t trials = 10000;
  std::uint64_t seed = 1;
  std::string task;
  std::map<std::string, std::string> params;  // [task] keys other than name
  std::filesystem::path out_dir = "out";
  bool plot = false;

  // Typed access to [task] keys; throws ConfigError on malformed values.
  double number(const std::string& key, double fallback) const;
  std::optional<double> maybe_number(const std::string& key) const;
  std::size_t count(const std::string& key, std::size_t fallback) const;
  std::vector<double> list(const std::string& key, std::vector<double> fallback) const;
  std::string text(const std::string& key, std::string fallback) const;
};

ExperimentConfig load_config(const std::filesystem::path& path);
ExperimentConfig parse_config(const std::string& text, const std::filesystem::path& source = "<string>");

// Static checks (ranges, files, task keys).  Returns the resolved parameters, including the
// region each generated graph must cover.
std::vector<std::pair<std::string, std::string>> validate(const ExperimentConfig& config);

std::vector<double> parse_list(const std::string& text, const std::string& key);

}  // namespace hypgrowth::cli
