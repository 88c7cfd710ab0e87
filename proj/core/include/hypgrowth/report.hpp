#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "hypgrowth/ends.hpp"
#include "hypgrowth/gp_estimate.hpp"
#include "hypgrowth/menshikov.hpp"

namespace hypgrowth::report {

// Written as the first line of every table: "# graph_hash=...,seed=...,trials=...".
struct Provenance {
  std::string graph_hash = "none";
  std::uint64_t seed = 0;
  std::uint64_t trials = 0;
};

class Table {
 public:
  explicit Table(std::vector<std::string> columns);
  void add(std::vector<std::string> row);
  std::size_t rows() const { return rows_.size(); }
  std::string render(const Provenance& prov) const;

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<std::string>> rows_;
};

// Shortest round-trip decimal form.
std::string num(double x);
std::string num(std::uint64_t x);

enum class Status { pass, warning, fail, skipped };
std::string to_string(Status s);

struct CheckRow {
  std::string check;
  std::string instance;
  Status status = Status::pass;
  double margin = 0.0;
  std::string witness;  // filled on failure
};

Table gp_curve_table(const decay::GpCurve& curve);
Table positions_table(const decay::GpCurve& curve);
Table recursion_table(const decay::RecursionTrace& trace);
Table checks_table(const std::vector<CheckRow>& rows);
Table survey_table(const ends::SurveyReport& survey);

// Temp file in the same directory, then rename.
void write_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace hypgrowth::report
