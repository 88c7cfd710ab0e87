#include "tasks.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include <openssl/evp.h>

#include "cache.hpp"
#include "hypgrowth/decay_fit.hpp"
#include "hypgrowth/ends.hpp"
#include "hypgrowth/errors.hpp"
#include "hypgrowth/gadgets.hpp"
#include "hypgrowth/gp_estimate.hpp"
#include "hypgrowth/graph_io.hpp"
#include "hypgrowth/menshikov.hpp"
#include "hypgrowth/oracle_suite.hpp"
#include "hypgrowth/renewal.hpp"
#include "hypgrowth/rng.hpp"
#include "hypgrowth/thresholds.hpp"
#include "hypgrowth/tiling.hpp"

namespace hypgrowth::cli {

namespace {

using report::CheckRow;
using report::num;
using report::Status;
using report::Table;

CheckRow check(std::string name, std::string instance, bool ok, double margin, std::string witness = {}) {
  return {std::move(name), std::move(instance), ok ? Status::pass : Status::fail, margin,
          ok ? std::string() : std::move(witness)};
}

// Identifies a family by its generation on the ball of radius 3 about o.
std::string family_hash(const graph::GraphFamily& family) {
  return graph::graph_hash(family.generate(geom::Isometry::identity(family.dimension()), graph::Region::ball(3.0)));
}

std::string text_hash(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) h = (h ^ c) * 0x100000001b3ULL;
  char hex[17];
  std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(h));
  return hex;
}

class Task {
 public:
  Task(const ExperimentConfig& c, int threads, std::ostream& log) : c_(c), threads_(threads), log_(log) {}

  RunResult run() {
    if (c_.task == "gp-scan") gp_scan(false);
    else if (c_.task == "decay-fit") gp_scan(true);
    else if (c_.task == "thick-origin") thick_origin();
    else if (c_.task == "recursion") recursion();
    else if (c_.task == "oracle-verify") oracle_verify();
    else if (c_.task == "ends-survey") ends_survey();
    else if (c_.task == "pc-estimate") pc_estimate();
    else if (c_.task == "boundary-point") boundary_point();
    std::string resolved = "# resolved parameters\n";
    for (const auto& [k, v] : validate(c_))
      if (k != "output.dir") resolved += k + " = " + v + "\n";
    out_.files.emplace_back("config.resolved.ini", resolved);
    out_.files.emplace_back("checks.csv", report::checks_table(out_.checks).render(prov_));
    return std::move(out_);
  }

 private:
  const graph::GraphFamily& family() {
    if (!family_) {
      family_ = open_family(c_.family);
      prov_.graph_hash = family_hash(*family_);
    }
    return *family_;
  }

  std::vector<decay::Position> positions(std::size_t fallback = 16) {
    return decay::sample_positions(family().dimension(), c_.count("positions", fallback),
                                   derive_seed(c_.seed, {tag_of("positions")}), c_.number("h_min", 1.0 / 64.0));
  }

  decay::GpOptions gp_options(std::size_t trials) const {
    decay::GpOptions o;
    o.trials = trials;
    o.seed = c_.seed;
    o.threads = threads_;
    o.delta_fraction = c_.number("delta_fraction", 1.0 / 16.0);
    return o;
  }

  void emit(const std::string& name, const Table& t) { out_.files.emplace_back(name, t.render(prov_)); }

  void curve_checks(const decay::GpCurve& curve, const std::string& label) {
    out_.checks.push_back(check("coupling", label + ":p-monotone", curve.coupling_violations == 0,
                                -static_cast<double>(curve.coupling_violations),
                                std::to_string(curve.coupling_violations) + " samples hit at p but not at a larger p"));
    const auto rv = curve.r_monotonicity_violations();
    out_.checks.push_back(check("coupling", label + ":r-monotone", rv == 0, -static_cast<double>(rv),
                                std::to_string(rv) + " cells increase in r"));
  }

  void gp_scan(bool fit) {
    auto p = c_.p;
    std::sort(p.begin(), p.end());
    const auto r_grid = c_.list("r_grid", {1, 2, 3, 4, 5, 6, 7, 8});
    prov_.seed = c_.seed;
    prov_.trials = c_.trials;
    const auto& fam = family();
    log_ << "estimating g_p(r) on " << fam.name() << " with " << c_.trials << " trials per cell\n";
    const auto curve = decay::estimate_gp(fam, p, r_grid, positions(), gp_options(c_.trials));
    emit("gp_curve.csv", report::gp_curve_table(curve));
    emit("positions.csv", report::positions_table(curve));
    curve_checks(curve, "gp");
    if (c_.plot) out_.files.emplace_back("gp_curve.gp", gp_plot());
    if (!fit) return;

    Table fits({"p", "psi_per_deth", "intercept", "alpha", "r_squared", "cells_used"});
    for (std::size_t pi = 0; pi < p.size(); ++pi) {
      const std::string at = "p=" + num(p[pi]);
      decay::DecayFit f;
      try {
        f = decay::fit_decay(curve, pi);
      } catch (const DomainError& e) {
        out_.checks.push_back({"decay-fit", at, Status::fail, 0.0, e.what()});
        continue;
      }
      fits.add({num(p[pi]), num(f.psi), num(f.intercept), num(std::exp(f.intercept)), num(f.r_squared),
                std::to_string(f.cells_used)});
      out_.checks.push_back(check("decay-psi", at, f.psi > 0.0, f.psi, "psi = " + num(f.psi)));
      out_.checks.push_back(check("decay-r2", at, f.r_squared >= 0.9, f.r_squared - 0.9, "R^2 = " + num(f.r_squared)));
      for (double r : c_.list("ratio_r", {2, 3, 4})) {
        const auto idx = [&](double x) {
          return static_cast<std::size_t>(
              std::find_if(r_grid.begin(), r_grid.end(), [&](double g) { return std::abs(g - x) < 1e-12; }) -
              r_grid.begin());
        };
        const double lo = curve.estimate[pi][idx(r)], hi = curve.estimate[pi][idx(2 * r)];
        const double ratio = lo > 0.0 ? hi / lo : std::numeric_limits<double>::infinity();
        out_.checks.push_back(check("decay-ratio", at + ":r=" + num(r), ratio <= 0.6, 0.6 - ratio,
                                    "estimate(2r)/estimate(r) = " + num(ratio)));
      }
    }
    emit("fit.csv", fits);

    // Functional inequality between consecutive p values of the scan.
    for (std::size_t pi = 0; pi + 1 < p.size(); ++pi) {
      if (p[pi] == p[pi + 1]) continue;
      const auto rep = decay::functional_inequality_check(p[pi], p[pi + 1], r_grid, curve.estimate[pi], curve.ci[pi],
                                                          curve.estimate[pi + 1], curve.ci[pi + 1],
                                                          family().projection_bound());
      for (const auto& row : rep.rows) {
        const Status s = row.status == decay::FunctionalRow::Status::pass      ? Status::pass
                         : row.status == decay::FunctionalRow::Status::warning ? Status::warning
                                                                               : Status::fail;
        out_.checks.push_back({"functional", "p=" + num(p[pi]) + "<" + num(p[pi + 1]) + ":r=" + num(row.r), s,
                               row.rhs - row.lhs,
                               s == Status::pass ? "" : "lhs " + num(row.lhs) + " rhs " + num(row.rhs)});
      }
    }
  }

  void thick_origin() {
    const double p = c_.p.front();
    const auto r_grid = c_.list("r_grid", {1, 2, 3, 4, 5, 6, 7, 8});
    const double r0 = c_.number("r0", 1.0);
    prov_.seed = c_.seed;
    prov_.trials = c_.trials;
    const auto& fam = family();
    log_ << "estimating the thick-origin tail on " << fam.name() << "\n";
    const auto t = decay::estimate_thick_origin_tail(fam, p, r0, r_grid, positions(), gp_options(c_.trials));
    emit("thick_tail.csv", report::gp_curve_table(t.curve));
    emit("positions.csv", report::positions_table(t.curve));
    curve_checks(t.curve, "thick");
    out_.checks.push_back(check("thick-domination", "r0=" + num(r0), t.domination_violations == 0,
                                -static_cast<double>(t.domination_violations),
                                std::to_string(t.domination_violations) + " of " +
                                    std::to_string(t.domination_checks) + " hits lack a dominating vertex"));

    const std::size_t samples = c_.count("wald_samples", 0);
    if (samples == 0) return;
    const decay::EmpiricalTail tail(r_grid, t.curve.estimate.front());
    const double a = fam.projection_bound();
    const auto w = decay::renewal_wald_check(tail, a, c_.number("wald_r", 4.0), samples,
                                             derive_seed(c_.seed, {tag_of("wald")}), threads_);
    Table wt({"quantity", "value"});
    wt.add({"samples", num(w.samples)});
    wt.add({"a_deth", num(w.a)});
    wt.add({"r_deth", num(w.r)});
    wt.add({"mean_m_prime", num(w.mean_m_prime)});
    wt.add({"mean_s_k", num(w.mean_s_k)});
    wt.add({"mean_k", num(w.mean_k)});
    wt.add({"residual", num(w.residual)});
    wt.add({"residual_se", num(w.residual_se)});
    wt.add({"se_k", num(w.se_k)});
    emit("wald.csv", wt);
    out_.checks.push_back(check("wald", "r=" + num(w.r), w.wald_ok, 4.0 * w.residual_se - std::abs(w.residual),
                                "residual " + num(w.residual) + " se " + num(w.residual_se)));
    out_.checks.push_back(check("renewal-bound", "r=" + num(w.r), w.bound_ok,
                                w.mean_k - (w.r + w.a) / w.mean_m_prime + 4.0 * w.se_k,
                                "E[K] " + num(w.mean_k) + " below (r+a)/E[M']"));
  }

  void recursion() {
    const std::string model = c_.text("model", "toy");
    const double r1 = c_.number("r1", 1.0);
    const double p1 = c_.number("p1", c_.p.empty() ? 0.5 : c_.p.front());
    const auto floor = c_.maybe_number("p_floor");
    const std::size_t max_steps = c_.count("max_steps", 64);
    decay::GEvaluator g;
    double x1 = 0.0;
    prov_.seed = c_.seed;
    if (model == "toy") {
      x1 = c_.number("x1", 0.1);
      g = decay::squaring_toy_model(x1, r1);
    } else {
      prov_.trials = c_.trials;
      const auto& fam = family();
      const auto pos = positions();
      g = [this, &fam, pos](double p, double r) {
        log_ << "  g(" << p << ", " << r << ")\n";
        return decay::estimate_gp(fam, {p}, {r}, pos, gp_options(c_.trials)).estimate[0][0];
      };
    }
    const auto trace = decay::menshikov_recursion(p1, r1, g, floor, max_steps);
    emit("recursion.csv", report::recursion_table(trace));
    const bool done = trace.status == decay::RecursionTrace::Status::completed;
    out_.checks.push_back({"recursion-status", model, done ? Status::pass : Status::warning, trace.p_next,
                           done ? "" : trace.reason});
    bool squared = true;
    for (const auto& s : trace.steps) squared = squared && s.squared;
    out_.checks.push_back(check("recursion-squaring", model, squared, 0.0, "some g_{i+1} > g_i^2"));
    if (model == "toy") {
      const double budget = p1 - decay::s_of_x1(x1);
      out_.checks.push_back(check("recursion-budget", "x1=" + num(x1), trace.p_next >= budget - 1e-12,
                                  trace.p_next - budget, "p_next " + num(trace.p_next) + " < p1 - s(x1)"));
    }
  }

  void oracle_verify() {
    std::vector<oracle::Gadget> gadgets;
    if (c_.graph_file) {
      std::vector<std::filesystem::path> files;
      if (std::filesystem::is_directory(*c_.graph_file)) {
        for (const auto& e : std::filesystem::directory_iterator(*c_.graph_file))
          if (e.path().extension() == ".json") files.push_back(e.path());
        std::sort(files.begin(), files.end());
      } else {
        files.push_back(*c_.graph_file);
      }
      for (const auto& f : files) gadgets.push_back(oracle::load_gadget(f));
    } else {
      gadgets = c_.text("gadgets", "corpus") == "slab" ? oracle::slab_gadgets() : oracle::gadget_corpus();
    }
    std::string all;
    for (const auto& g : gadgets) all += oracle::gadget_to_json(g);
    prov_.graph_hash = text_hash(all);
    prov_.seed = c_.seed;
    oracle::SuiteOptions o;
    o.seed = c_.seed;
    o.threads = threads_;
    o.bk_pairs = c_.count("bk_pairs", 100);
    o.mc_trials = c_.count("mc_trials", 0);
    o.mc_p = c_.list("mc_p", {0.2, 0.5, 0.8});
    prov_.trials = o.mc_trials;
    const auto ab = c_.list("alpha_beta", {0.1, 0.3, 0.2, 0.4, 0.3, 0.6});
    o.alpha_beta.clear();
    for (std::size_t i = 0; i + 1 < ab.size(); i += 2) o.alpha_beta.emplace_back(ab[i], ab[i + 1]);
    log_ << "verifying " << gadgets.size() << " gadgets\n";
    auto rows = oracle::run_oracle_suite(gadgets, o);
    out_.checks.insert(out_.checks.end(), rows.begin(), rows.end());
  }

  void ends_survey() {
    const double p = c_.p.front();
    const auto deltas = c_.list("deltas", {0.25, 0.5, 1.0, 2.0});
    const double r = c_.number("r", 2.0);
    const int k_max = static_cast<int>(c_.count("k_max", 4));
    prov_.seed = c_.seed;
    prov_.trials = c_.trials;
    const auto& fam = family();

    ends::TailFit fit;
    Table fits({"source", "alpha", "phi_per_deth", "r_squared"});
    if (const auto alpha = c_.maybe_number("fit_alpha")) {
      fit = {*alpha, *c_.maybe_number("fit_phi")};
      fits.add({"config", num(fit.alpha), num(fit.phi), "nan"});
    } else {
      const auto r_grid = c_.list("fit_r_grid", {1, 2, 3, 4, 5, 6});
      log_ << "fitting the decay of g_p(r) for the survey bound\n";
      const auto curve = decay::estimate_gp(fam, {p}, r_grid, positions(8), gp_options(c_.count("fit_trials", c_.trials)));
      const auto f = decay::fit_decay(curve, 0);
      fit = {std::exp(f.intercept), f.psi};
      fits.add({"gp-scan", num(fit.alpha), num(fit.phi), num(f.r_squared)});
    }
    emit("fit.csv", fits);

    log_ << "running the slab tower survey\n";
    const auto s = ends::end_boundary_survey(fam, p, deltas, r, k_max, c_.trials, c_.seed, fit, threads_);
    emit("survey.csv", report::survey_table(s));
    out_.checks.push_back(check("tower-monotone", "per-sample", s.monotonicity_violations == 0,
                                -static_cast<double>(s.monotonicity_violations),
                                std::to_string(s.monotonicity_violations) + " samples qualify deeper but not higher"));
    out_.checks.push_back(check("survey-non-increasing", "all deltas", s.non_increasing, 0.0,
                                "a frequency increases with k"));
    for (double d : deltas) {
      double f0 = 0.0, fk = 0.0;
      for (const auto& row : s.rows)
        if (row.delta == d) {
          if (row.k == 0) f0 = row.frequency;
          if (row.k == k_max) fk = row.frequency;
        }
      out_.checks.push_back(check("survey-deep-vs-top", "delta=" + num(d), fk <= f0, f0 - fk,
                                  "frequency at k_max exceeds k = 0"));
    }

    const auto g = fam.generate(geom::Isometry::identity(fam.dimension()),
                                graph::Region::ball(c_.number("scaling_radius", 6.0)));
    for (int k = 1; k <= static_cast<int>(c_.count("scaling_k_max", 4)); ++k) {
      const auto rep = ends::scaling_equivariance_check(g, k, p, derive_seed(c_.seed, {tag_of("scaling"), std::uint64_t(k)}));
      out_.checks.push_back(check("scaling", "k=" + std::to_string(k), rep.passed,
                                  1e-9 - std::max(rep.max_coordinate_error, rep.max_report_error),
                                  std::to_string(rep.fragment_mismatches) + " fragment mismatches"));
    }
    if (c_.plot) out_.files.emplace_back("survey.gp", survey_plot());
  }

  void pc_estimate() {
    const auto& fam = family();
    const auto extents = c_.list("extents", {8, 16});
    const auto grid = c_.list("p_grid", c_.p.empty() ? parse_list("0.3:0.7:41", "p_grid") : c_.p);
    prov_.graph_hash = graph::graph_hash(
        graph::gen_slab_lattice(fam.dimension(), 1.0, *std::max_element(extents.begin(), extents.end())));
    prov_.seed = c_.seed;
    prov_.trials = c_.trials;
    log_ << "estimating crossing curves\n";
    const auto est = decay::estimate_pc(fam.dimension(), extents, grid, c_.trials, c_.seed, threads_);
    Table cross({"extent", "p", "crossing_prob"});
    Table summary({"quantity", "value"});
    for (const auto& curve : est.curves) {
      bool monotone = true;
      for (std::size_t i = 0; i < curve.p_grid.size(); ++i) {
        cross.add({num(curve.extent), num(curve.p_grid[i]), num(curve.crossing[i])});
        if (i && curve.crossing[i] < curve.crossing[i - 1]) monotone = false;
      }
      summary.add({"median_extent_" + num(curve.extent), num(curve.median)});
      out_.checks.push_back(check("crossing-monotone", "extent=" + num(curve.extent), monotone, 0.0,
                                  "crossing probability decreases in p"));
    }
    summary.add({"pc_lower", num(est.lower)});
    summary.add({"pc_upper", num(est.upper)});
    summary.add({"pc_point", num(est.point)});
    emit("crossing.csv", cross);
    emit("pc.csv", summary);
  }

  void boundary_point() {
    const auto& fam = family();
    const double p = c_.p.front();
    const auto x = c_.list("x", {0.5});
    prov_.seed = c_.seed;
    prov_.trials = c_.trials;
    log_ << "estimating boundary-point hitting probabilities\n";
    const auto rep = decay::estimate_boundary_point_prob(fam, p, x, static_cast<int>(c_.count("n_max", 6)), c_.trials,
                                                         c_.seed, threads_);
    Table t({"n", "halfball_radius", "frequency", "ci_4sigma"});
    bool monotone = true;
    for (std::size_t n = 0; n < rep.frequency.size(); ++n) {
      t.add({std::to_string(n), n == 0 ? "inf" : num(rep.radii[n - 1]), num(rep.frequency[n]), num(rep.ci[n])});
      if (n && rep.frequency[n] > rep.frequency[n - 1]) monotone = false;
    }
    emit("boundary.csv", t);
    out_.checks.push_back(check("coupling", "nested-halfballs", rep.coupling_violations == 0,
                                -static_cast<double>(rep.coupling_violations),
                                std::to_string(rep.coupling_violations) + " samples meet a smaller half-ball only"));
    out_.checks.push_back(check("non-increasing", "frequency in n", monotone, 0.0, "frequency increases with n"));
  }

  static std::string gp_plot() {
    return "set datafile separator ','\nset logscale y\nset xlabel 'r (d_eth)'\nset ylabel 'estimate'\n"
           "plot 'gp_curve.csv' skip 2 using 2:3:4 with yerrorbars title 'g_p(r)'\n";
  }
  static std::string survey_plot() {
    return "set datafile separator ','\nset xlabel 'k'\nset ylabel 'frequency'\n"
           "plot 'survey.csv' skip 2 using 3:4:5 with yerrorbars title 'frequency', "
           "'' skip 2 using 3:6 with points title 'bound from fit'\n";
  }

  const ExperimentConfig& c_;
  int threads_;
  std::ostream& log_;
  std::unique_ptr<graph::GraphFamily> family_;
  report::Provenance prov_;
  RunResult out_;
};

}  // namespace

std::size_t RunResult::failed() const {
  return static_cast<std::size_t>(
      std::count_if(checks.begin(), checks.end(), [](const CheckRow& r) { return r.status == Status::fail; }));
}

RunResult run_task(const ExperimentConfig& config, int threads, std::ostream& log) {
  validate(config);
  return Task(config, threads, log).run();
}

std::string sha256_hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1) throw Error("sha256 failed");
  std::string hex;
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", digest[i]);
    hex += buf;
  }
  return hex;
}

void write_outputs(const std::filesystem::path& dir, const RunResult& result) {
  std::filesystem::create_directories(dir);
  auto files = result.files;
  std::sort(files.begin(), files.end());
  std::string manifest;
  for (const auto& [name, content] : files) {
    report::write_atomic(dir / name, content);
    manifest += sha256_hex(content) + "  " + std::to_string(content.size()) + "  " + name + "\n";
  }
  report::write_atomic(dir / "manifest.txt", manifest);
}

}  // namespace hypgrowth::cli
