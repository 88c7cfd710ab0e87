#include "config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "hypgrowth/errors.hpp"
#include "hypgrowth/family.hpp"
#include "hypgrowth/geometry.hpp"
#include "hypgrowth/report.hpp"

namespace hypgrowth::cli {

namespace pt = boost::property_tree;

namespace {

const std::set<std::string> kPositionKeys = {"r_grid", "positions", "h_min", "delta_fraction"};

std::set<std::string> task_keys(const std::string& task) {
  std::set<std::string> keys;
  if (task == "gp-scan" || task == "decay-fit" || task == "thick-origin") keys = kPositionKeys;
  if (task == "decay-fit") keys.insert("ratio_r");
  if (task == "thick-origin") keys.insert({"r0", "wald_samples", "wald_r"});
  if (task == "recursion") keys = {"model", "x1", "r1", "p1", "p_floor", "max_steps", "positions", "h_min", "delta_fraction"};
  if (task == "oracle-verify") keys = {"gadgets", "bk_pairs", "alpha_beta", "mc_trials", "mc_p"};
  if (task == "ends-survey")
    keys = {"deltas", "r", "k_max", "fit_alpha", "fit_phi", "fit_trials", "fit_r_grid", "positions", "h_min",
            "scaling_k_max", "scaling_radius"};
  if (task == "pc-estimate") keys = {"extents", "p_grid"};
  if (task == "boundary-point") keys = {"x", "n_max"};
  return keys;
}

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r");
  const auto e = s.find_last_not_of(" \t\r");
  return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

double parse_number(const std::string& text, const std::string& key) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw ConfigError(key + ": expected a number, got '" + text + "'");
  }
  if (used != text.size() || !std::isfinite(v)) throw ConfigError(key + ": expected a number, got '" + text + "'");
  return v;
}

void require_probability(double p, const std::string& key) {
  if (!(p >= 0.0 && p <= 1.0)) throw ConfigError(key + " = " + report::num(p) + " is outside [0, 1]");
}

void require_positive(const std::vector<double>& v, const std::string& key) {
  if (v.empty()) throw ConfigError(key + " is empty");
  for (double x : v)
    if (!(x > 0.0)) throw ConfigError(key + " must hold positive values");
}

std::string join(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + report::num(v[i]);
  return s;
}

}  // namespace

std::vector<double> parse_list(const std::string& text, const std::string& key) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    // a:b:n expands to n evenly spaced values from a to b
    if (std::count(item.begin(), item.end(), ':') == 2) {
      const auto c1 = item.find(':'), c2 = item.rfind(':');
      const double a = parse_number(item.substr(0, c1), key), b = parse_number(item.substr(c1 + 1, c2 - c1 - 1), key);
      const double n = parse_number(item.substr(c2 + 1), key);
      if (n < 2 || n != std::floor(n)) throw ConfigError(key + ": range count must be an integer >= 2");
      for (int i = 0; i < static_cast<int>(n); ++i) out.push_back(std::round((a + (b - a) * i / (n - 1)) * 1e12) / 1e12);
      continue;
    }
    out.push_back(parse_number(item, key));
  }
  return out;
}

double ExperimentConfig::number(const std::string& key, double fallback) const {
  return maybe_number(key).value_or(fallback);
}

std::optional<double> ExperimentConfig::maybe_number(const std::string& key) const {
  const auto it = params.find(key);
  if (it == params.end()) return std::nullopt;
  return parse_number(it->second, "task." + key);
}

std::size_t ExperimentConfig::count(const std::string& key, std::size_t fallback) const {
  const auto v = maybe_number(key);
  if (!v) return fallback;
  if (*v < 0 || *v != std::floor(*v)) throw ConfigError("task." + key + " must be a non-negative integer");
  return static_cast<std::size_t>(*v);
}

std::vector<double> ExperimentConfig::list(const std::string& key, std::vector<double> fallback) const {
  const auto it = params.find(key);
  return it == params.end() ? fallback : parse_list(it->second, "task." + key);
}

std::string ExperimentConfig::text(const std::string& key, std::string fallback) const {
  const auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

ExperimentConfig parse_config(const std::string& text, const std::filesystem::path& source) {
  pt::ptree tree;
  std::istringstream in(text);
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(source.string() + ": " + e.message() + " at line " + std::to_string(e.line()));
  }
  const std::set<std::string> sections = {"graph", "percolation", "task", "output"};
  for (const auto& [name, sub] : tree) {
    if (!sections.count(name)) throw ConfigError("unknown section [" + name + "]");
    (void)sub;
  }
  auto check_keys = [&](const std::string& section, const std::set<std::string>& allowed) {
    const auto sub = tree.get_child_optional(section);
    if (!sub) return;
    for (const auto& [key, value] : *sub)
      if (!allowed.count(key)) throw ConfigError("unknown key " + section + "." + key);
  };
  check_keys("graph", {"family", "file"});
  check_keys("percolation", {"p", "trials", "seed"});
  check_keys("output", {"dir", "plot"});

  ExperimentConfig c;
  c.source = source;
  c.family = trim(tree.get<std::string>("graph.family", ""));
  if (const auto f = tree.get_optional<std::string>("graph.file"); f && !trim(*f).empty()) {
    std::filesystem::path file = trim(*f);
    if (file.is_relative() && source.has_parent_path()) file = source.parent_path() / file;
    c.graph_file = file;
  }
  if (const auto p = tree.get_optional<std::string>("percolation.p")) c.p = parse_list(*p, "percolation.p");
  const double trials = parse_number(trim(tree.get<std::string>("percolation.trials", "10000")), "percolation.trials");
  if (trials < 1 || trials != std::floor(trials)) throw ConfigError("percolation.trials must be a positive integer");
  c.trials = static_cast<std::size_t>(trials);
  const std::string seed = trim(tree.get<std::string>("percolation.seed", "1"));
  try {
    std::size_t used = 0;
    c.seed = std::stoull(seed, &used);
    if (used != seed.size()) throw std::invalid_argument(seed);
  } catch (const std::exception&) {
    throw ConfigError("percolation.seed must be an unsigned 64-bit integer, got '" + seed + "'");
  }
  c.task = trim(tree.get<std::string>("task.name", ""));
  if (std::find(kTasks.begin(), kTasks.end(), c.task) == kTasks.end())
    throw ConfigError("task.name '" + c.task + "' is not one of gp-scan, decay-fit, thick-origin, recursion, "
                      "oracle-verify, ends-survey, pc-estimate, boundary-point");
  const auto allowed = task_keys(c.task);
  for (const auto& [key, value] : *tree.get_child_optional("task")) {
    if (key == "name") continue;
    if (!allowed.count(key)) throw ConfigError("task." + key + " is not a key of " + c.task);
    c.params[key] = trim(value.data());
  }
  c.out_dir = trim(tree.get<std::string>("output.dir", "out"));
  const std::string plot = trim(tree.get<std::string>("output.plot", "false"));
  if (plot != "true" && plot != "false") throw ConfigError("output.plot must be true or false");
  c.plot = plot == "true";
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path);
}

std::vector<std::pair<std::string, std::string>> validate(const ExperimentConfig& c) {
  std::vector<std::pair<std::string, std::string>> out;
  out.emplace_back("task", c.task);
  out.emplace_back("seed", std::to_string(c.seed));
  out.emplace_back("trials", std::to_string(c.trials));

  if (c.graph_file) {
    if (c.task != "oracle-verify") throw ConfigError("graph.file is only read by oracle-verify");
    if (!std::filesystem::exists(*c.graph_file)) throw ConfigError("graph file not found: " + c.graph_file->string());
    out.emplace_back("graph.file", c.graph_file->string());
  }

  std::unique_ptr<graph::GraphFamily> family;
  const bool needs_family = c.task != "oracle-verify" && !(c.task == "recursion" && c.text("model", "toy") == "toy");
  if (needs_family) {
    if (c.family.empty()) throw ConfigError("graph.family is required for " + c.task);
    try {
      family = graph::make_family(c.family);
    } catch (const DomainError& e) {
      throw ConfigError(std::string("graph.family: ") + e.what());
    }
    out.emplace_back("family", family->name());
    out.emplace_back("dimension", std::to_string(family->dimension()));
    out.emplace_back("max_edge_length", report::num(family->max_edge_length()));
  }

  for (double p : c.p) require_probability(p, "percolation.p");
  const bool needs_p = c.task == "gp-scan" || c.task == "decay-fit" || c.task == "thick-origin" ||
                       c.task == "ends-survey" || c.task == "boundary-point";
  if (needs_p && c.p.empty()) throw ConfigError("percolation.p is required for " + c.task);
  if ((c.task == "thick-origin" || c.task == "ends-survey" || c.task == "boundary-point") && c.p.size() != 1)
    throw ConfigError(c.task + " takes a single percolation.p");
  if (!c.p.empty()) out.emplace_back("p", join(c.p));

  const auto r_grid = c.list("r_grid", {1, 2, 3, 4, 5, 6, 7, 8});
  const double h_min = c.number("h_min", 1.0 / 64.0);
  const double delta_fraction = c.number("delta_fraction", 1.0 / 16.0);
  auto position_keys = [&] {
    require_positive(r_grid, "task.r_grid");
    if (!std::is_sorted(r_grid.begin(), r_grid.end())) throw ConfigError("task.r_grid must be increasing");
    if (!(h_min > 0.0 && h_min <= 1.0)) throw ConfigError("task.h_min must lie in (0, 1]");
    if (!(delta_fraction > 0.0 && delta_fraction < 1.0)) throw ConfigError("task.delta_fraction must lie in (0, 1)");
    if (c.count("positions", 16) < 1) throw ConfigError("task.positions must be at least 1");
    out.emplace_back("r_grid", join(r_grid));
    out.emplace_back("positions", std::to_string(c.count("positions", 16)));
    out.emplace_back("h_min", report::num(h_min));
    out.emplace_back("slab", "[h*" + report::num(delta_fraction) + ", 1]");
    out.emplace_back("guard_band_half_width", report::num(r_grid.back()));
  };

  if (c.task == "gp-scan" || c.task == "decay-fit") position_keys();
  if (c.task == "decay-fit") {
    const auto ratio_r = c.list("ratio_r", {2, 3, 4});
    require_positive(ratio_r, "task.ratio_r");
    for (double r : ratio_r) {
      const auto has = [&](double x) {
        return std::any_of(r_grid.begin(), r_grid.end(), [&](double g) { return std::abs(g - x) < 1e-12; });
      };
      if (!has(r) || !has(2 * r)) throw ConfigError("task.ratio_r needs r and 2r on the r grid");
    }
    out.emplace_back("ratio_r", join(ratio_r));
  }
  if (c.task == "thick-origin") {
    position_keys();
    const double r0 = c.number("r0", 1.0);
    if (!(r0 > 0.0)) throw ConfigError("task.r0 must be positive");
    out.emplace_back("r0", report::num(r0));
    out.emplace_back("wald_samples", std::to_string(c.count("wald_samples", 0)));
    const double wald_r = c.number("wald_r", 4.0);
    if (!(wald_r > 0.0)) throw ConfigError("task.wald_r must be positive");
    out.emplace_back("wald_r", report::num(wald_r));
  }
  if (c.task == "recursion") {
    const std::string model = c.text("model", "toy");
    if (model != "toy" && model != "empirical") throw ConfigError("task.model must be toy or empirical");
    out.emplace_back("model", model);
    const double x1 = c.number("x1", 0.1), r1 = c.number("r1", 1.0);
    const double p1 = c.number("p1", c.p.empty() ? 0.5 : c.p.front());
    require_probability(p1, "task.p1");
    if (model == "toy" && !(x1 > 0.0 && x1 < 1.0)) throw ConfigError("task.x1 must lie in (0, 1)");
    if (!(r1 > 0.0)) throw ConfigError("task.r1 must be positive");
    if (const auto fl = c.maybe_number("p_floor")) {
      require_probability(*fl, "task.p_floor");
      out.emplace_back("p_floor", report::num(*fl));
    }
    out.emplace_back("p1", report::num(p1));
    out.emplace_back("r1", report::num(r1));
    if (model == "toy") out.emplace_back("x1", report::num(x1));
    if (model == "empirical") {
      if (!(h_min > 0.0 && h_min <= 1.0)) throw ConfigError("task.h_min must lie in (0, 1]");
      out.emplace_back("positions", std::to_string(c.count("positions", 16)));
      out.emplace_back("guard_band_half_width", "r_i of each step");
    }
  }
  if (c.task == "oracle-verify") {
    const std::string gadgets = c.text("gadgets", "corpus");
    if (!c.graph_file && gadgets != "corpus" && gadgets != "slab")
      throw ConfigError("task.gadgets must be corpus or slab (or set graph.file)");
    out.emplace_back("gadgets", c.graph_file ? c.graph_file->string() : gadgets);
    out.emplace_back("bk_pairs", std::to_string(c.count("bk_pairs", 100)));
    const auto ab = c.list("alpha_beta", {0.1, 0.3, 0.2, 0.4, 0.3, 0.6});
    if (ab.size() % 2) throw ConfigError("task.alpha_beta holds alpha,beta pairs");
    for (std::size_t i = 0; i < ab.size(); i += 2)
      if (!(0.0 < ab[i] && ab[i] < ab[i + 1] && ab[i + 1] < 1.0))
        throw ConfigError("task.alpha_beta pairs need 0 < alpha < beta < 1");
    out.emplace_back("alpha_beta", join(ab));
    for (double p : c.list("mc_p", {0.2, 0.5, 0.8})) require_probability(p, "task.mc_p");
    out.emplace_back("mc_trials", std::to_string(c.count("mc_trials", 0)));
    out.emplace_back("guard_band_half_width", "none (exact enumeration on fixed gadgets)");
  }
  if (c.task == "ends-survey") {
    const auto deltas = c.list("deltas", {0.25, 0.5, 1.0, 2.0});
    require_positive(deltas, "task.deltas");
    const double r = c.number("r", 2.0);
    if (!(r > 0.0)) throw ConfigError("task.r must be positive");
    const std::size_t k_max = c.count("k_max", 4);
    if (k_max > 20) throw ConfigError("task.k_max must be at most 20");
    const bool have_alpha = c.maybe_number("fit_alpha").has_value(), have_phi = c.maybe_number("fit_phi").has_value();
    if (have_alpha != have_phi) throw ConfigError("task.fit_alpha and task.fit_phi go together");
    if (have_alpha && !(*c.maybe_number("fit_alpha") > 0.0)) throw ConfigError("task.fit_alpha must be positive");
    out.emplace_back("deltas", join(deltas));
    out.emplace_back("r", report::num(r));
    out.emplace_back("k_max", std::to_string(k_max));
    out.emplace_back("fit", have_alpha ? "given" : "estimated from a gp scan");
    out.emplace_back("guard_band_half_width", report::num(r + *std::max_element(deltas.begin(), deltas.end())));
    out.emplace_back("slab", "[" + report::num(std::ldexp(1.0, -static_cast<int>(k_max) - 3)) + ", 1]");
    out.emplace_back("scaling_k_max", std::to_string(c.count("scaling_k_max", 4)));
  }
  if (c.task == "pc-estimate") {
    if (c.family.rfind("slab-lattice", 0) != 0) throw ConfigError("pc-estimate runs on slab-lattice-dN families");
    const auto extents = c.list("extents", {8, 16});
    require_positive(extents, "task.extents");
    const auto grid = c.list("p_grid", c.p.empty() ? parse_list("0.3:0.7:41", "p_grid") : c.p);
    for (double p : grid) require_probability(p, "task.p_grid");
    if (!std::is_sorted(grid.begin(), grid.end()) || grid.size() < 2)
      throw ConfigError("task.p_grid must be increasing with at least two points");
    out.emplace_back("extents", join(extents));
    out.emplace_back("p_grid", join(grid));
    out.emplace_back("guard_band_half_width", report::num(*std::max_element(extents.begin(), extents.end())));
  }
  if (c.task == "boundary-point") {
    const auto x = c.list("x", {0.5});
    if (family && static_cast<int>(x.size()) != family->dimension() - 1)
      throw ConfigError("task.x needs one coordinate per boundary axis");
    const std::size_t n_max = c.count("n_max", 6);
    if (n_max < 1 || n_max > 40) throw ConfigError("task.n_max must lie in [1, 40]");
    double norm2 = 0.0;
    for (double v : x) norm2 += v * v;
    const double rho = 0.5 * std::sqrt(norm2 + 1.0) * std::ldexp(1.0, 1 - static_cast<int>(n_max));
    const double reach = std::acosh(1.0 + (norm2 + (rho - 1.0) * (rho - 1.0)) / (2.0 * rho));
    out.emplace_back("x", join(x));
    out.emplace_back("n_max", std::to_string(n_max));
    out.emplace_back("guard_band_radius", report::num(reach + 2.0 * family->max_edge_length()));
  }
  out.emplace_back("output.dir", c.out_dir.string());
  return out;
}

}  // namespace hypgrowth::cli
