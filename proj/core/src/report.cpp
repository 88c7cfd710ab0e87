#include "hypgrowth/report.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <system_error>
#include <thread>

#include "hypgrowth/errors.hpp"

namespace hypgrowth::report {

Table::Table(std::vector<std::string> columns) : columns_(std::move(columns)) {}

void Table::add(std::vector<std::string> row) {
  if (row.size() != columns_.size()) throw DomainError("row width does not match the header");
  rows_.push_back(std::move(row));
}

std::string Table::render(const Provenance& prov) const {
  std::string out = "# graph_hash=" + prov.graph_hash + ",seed=" + std::to_string(prov.seed) +
                    ",trials=" + std::to_string(prov.trials) + "\n";
  auto line = [&out](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      out += cells[i];
    }
    out += '\n';
  };
  line(columns_);
  for (const auto& r : rows_) line(r);
  return out;
}

std::string num(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string num(std::uint64_t x) { return std::to_string(x); }

std::string to_string(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::warning: return "warning";
    case Status::fail: return "fail";
    case Status::skipped: return "skipped";
  }
  return "?";
}

Table gp_curve_table(const decay::GpCurve& c) {
  Table t({"p", "r_deth", "estimate_prob", "ci_4sigma", "hr_id", "runner_up_prob", "runner_up_id"});
  for (std::size_t pi = 0; pi < c.p_values.size(); ++pi)
    for (std::size_t ri = 0; ri < c.r_grid.size(); ++ri)
      t.add({num(c.p_values[pi]), num(c.r_grid[ri]), num(c.estimate[pi][ri]), num(c.ci[pi][ri]),
             std::to_string(c.argmax[pi][ri]), num(c.runner_up[pi][ri]), std::to_string(c.runner_up_id[pi][ri])});
  return t;
}

Table positions_table(const decay::GpCurve& c) {
  Table t({"hr_id", "h", "rotation"});
  for (const auto& pos : c.positions) t.add({std::to_string(pos.id), num(pos.h), pos.describe()});
  return t;
}

Table recursion_table(const decay::RecursionTrace& trace) {
  Table t({"i", "p_i", "r_i_deth", "g_i", "squared"});
  for (const auto& s : trace.steps)
    t.add({std::to_string(s.i), num(s.p), num(s.r), num(s.g), s.squared ? "1" : "0"});
  return t;
}

// Free text goes into one unquoted cell.
static std::string cell(std::string s) {
  for (char& c : s)
    if (c == ',' || c == '\n') c = ';';
  return s;
}

Table checks_table(const std::vector<CheckRow>& rows) {
  Table t({"check", "instance", "status", "margin", "witness"});
  for (const auto& r : rows) t.add({cell(r.check), cell(r.instance), to_string(r.status), num(r.margin), cell(r.witness)});
  return t;
}

Table survey_table(const ends::SurveyReport& s) {
  Table t({"p", "delta_deth", "k", "frequency", "ci_4sigma", "bound_from_fit"});
  for (const auto& row : s.rows)
    t.add({num(s.p), num(row.delta), std::to_string(row.k), num(row.frequency), num(row.ci), num(row.bound)});
  return t;
}

void write_atomic(const std::filesystem::path& path, const std::string& content) {
  // Unique per thread so concurrent writers of one path never share a temp file.
  auto tmp = path;
  tmp += ".tmp" + std::to_string(std::hash<std::thread::id>{}(std::this_thread::get_id()));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw Error("short write to " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw Error("cannot rename " + tmp.string() + ": " + ec.message());
}

}  // namespace hypgrowth::report
