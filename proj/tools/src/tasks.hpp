#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "config.hpp"
#include "hypgrowth/report.hpp"

namespace hypgrowth::cli {

struct RunResult {
  std::vector<std::pair<std::string, std::string>> files;  // name, content
  std::vector<report::CheckRow> checks;
  std::size_t failed() const;
};

// Runs the configured task.  Output content depends only on the config, never on `threads`.
RunResult run_task(const ExperimentConfig& config, int threads, std::ostream& log);

// Writes each file atomically, then manifest.txt listing SHA-256 and size of every file.
void write_outputs(const std::filesystem::path& dir, const RunResult& result);

std::string sha256_hex(const std::string& data);

}  // namespace hypgrowth::cli
