// Prints one PASS/FAIL line per acceptance criterion; exits non-zero if any criterion fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "hypgrowth/decay_fit.hpp"
#include "hypgrowth/ends.hpp"
#include "hypgrowth/family.hpp"
#include "hypgrowth/gadgets.hpp"
#include "hypgrowth/gp_estimate.hpp"
#include "hypgrowth/menshikov.hpp"
#include "hypgrowth/oracle_suite.hpp"
#include "hypgrowth/percolation.hpp"
#include "hypgrowth/renewal.hpp"
#include "hypgrowth/rng.hpp"
#include "hypgrowth/thresholds.hpp"

using namespace hypgrowth;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

std::vector<double> grid(double lo, double hi, int n) {
  std::vector<double> g;
  for (int i = 0; i < n; ++i) g.push_back(std::round((lo + (hi - lo) * i / (n - 1)) * 1e12) / 1e12);
  return g;
}

std::vector<report::CheckRow> suite_rows;

const std::vector<report::CheckRow>& oracle_rows() {
  if (suite_rows.empty()) {
    oracle::SuiteOptions o;
    o.mc_trials = 100000;
    o.seed = 2024;
    suite_rows = oracle::run_oracle_suite(oracle::gadget_corpus(), o);
  }
  return suite_rows;
}

// Counts rows of one check, and how many failed.
Verdict tally(const std::string& check, std::size_t min_rows) {
  std::size_t rows = 0, failed = 0, skipped = 0;
  std::string first_failure;
  for (const auto& r : oracle_rows()) {
    if (r.check != check) continue;
    ++rows;
    if (r.status == report::Status::skipped) ++skipped;
    if (r.status == report::Status::fail) {
      if (failed++ == 0) first_failure = r.instance + " " + r.witness;
    }
  }
  Verdict v;
  v.pass = failed == 0 && rows - skipped >= min_rows;
  v.detail = std::to_string(rows) + " rows, " + std::to_string(failed) + " failed, " + std::to_string(skipped) +
             " skipped (need >= " + std::to_string(min_rows) + " checked)";
  if (failed) v.detail += "; first: " + first_failure;
  return v;
}

Verdict mc_agreement() {
  std::map<std::string, int> gadgets;
  for (const auto& r : oracle_rows())
    if (r.check == "mc-agreement") ++gadgets[r.instance.substr(0, r.instance.find(':'))];
  auto v = tally("mc-agreement", 60);
  v.pass = v.pass && gadgets.size() >= 20;
  v.detail = std::to_string(gadgets.size()) + " gadgets x 3 p x 1e5 seeds; " + v.detail;
  return v;
}

Verdict saus() {
  auto v = tally("saus", 3);
  const auto m = tally("menger", 3);
  v.pass = v.pass && m.pass;
  v.detail = "saus " + v.detail + "; menger " + m.detail;
  return v;
}

graph::SlabGraph placed_slab(const graph::GraphFamily& fam, double h, double angle, double half_width) {
  const auto placement = fam.dimension() == 2 ? geom::Isometry::phi(h, geom::rotation2(angle))
                                              : geom::Isometry::scale_translate(h, std::vector<double>(2, 0.0));
  const auto g = fam.generate(placement, graph::Region::band_box(half_width, h / 16, 1.0));
  return graph::clip_to_band(g, h / 16, 1.0);
}

Verdict coupling() {
  std::uint64_t violations = 0, samples = 0;
  for (const std::string spec : {"{5,4}", "{3,7}", "slab-lattice-d3"}) {
    const auto fam = graph::make_family(spec);
    const auto g = placed_slab(*fam, 0.4, 0.9, 3.0);
    const auto o = *g.origin();
    const perc::SphereTarget sphere{std::vector<double>(static_cast<std::size_t>(g.dimension() - 1), 0.0), 2.0};
    for (std::uint64_t t = 0; t < 10000; ++t, ++samples) {
      const auto seed = derive_seed(7, {tag_of("coupling"), t});
      const auto lo = perc::Configuration::sample(g, 0.3, seed), hi = perc::Configuration::sample(g, 0.6, seed);
      for (std::size_t e = 0; e < lo.size(); ++e) violations += lo.is_open(e) && !hi.is_open(e);
      violations += perc::connects(g, lo, {o}, sphere) && !perc::connects(g, hi, {o}, sphere);
      violations += perc::cluster_of(g, lo, o).size_r > perc::cluster_of(g, hi, o).size_r;
    }
  }
  std::uint64_t curve_violations = 0;
  for (const std::string spec : {"{5,4}", "{3,7}"}) {
    const auto fam = graph::make_family(spec);
    decay::GpOptions opt;
    opt.trials = 10000;
    opt.seed = 11;
    const auto curve =
        decay::estimate_gp(*fam, {0.1, 0.3, 0.5}, grid(0.5, 4, 8), decay::sample_positions(2, 8, 5), opt);
    curve_violations += curve.coupling_violations + curve.r_monotonicity_violations();
  }
  return {violations == 0 && curve_violations == 0,
          std::to_string(samples) + " coupled samples over 3 families, " + std::to_string(violations) +
              " violations; GpCurve p/r monotonicity violations " + std::to_string(curve_violations)};
}

Verdict menshikov() {
  const auto start = std::chrono::steady_clock::now();
  const double s01 = decay::s_of_x1(0.1);
  bool increasing = true;
  double prev = 0.0;
  for (int i = 1; i <= 20; ++i) {
    const double s = decay::s_of_x1(i / 21.0);
    increasing = increasing && s > prev;
    prev = s;
  }
  bool above = true;
  for (double x1 : {0.1, 0.01}) {
    const auto trace = decay::menshikov_recursion(0.9, 1.0, decay::squaring_toy_model(x1, 1.0), std::nullopt);
    const double budget = 0.9 - decay::s_of_x1(x1);
    for (const auto& step : trace.steps) above = above && step.p >= budget - 1e-12;
    above = above && trace.p_next >= budget - 1e-12 && trace.status == decay::RecursionTrace::Status::completed;
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {std::abs(s01 - 1.1625) <= 1e-3 && increasing && above && secs < 1.0,
          "s(0.1) = " + fmt(s01) + ", increasing " + (increasing ? "yes" : "no") + ", toy recursion above p1 - s(x1) " +
              (above ? "yes" : "no") + ", " + fmt(secs) + " s"};
}

Verdict wald() {
  const auto fam = graph::make_family("{5,4}");
  decay::GpOptions opt;
  opt.trials = 5000;
  opt.seed = 3;
  const auto r = grid(1, 6, 6);
  const auto curve = decay::estimate_gp(*fam, {0.1}, r, decay::sample_positions(2, 8, 3), opt);
  const decay::EmpiricalTail tail(r, curve.estimate.front());
  const auto w = decay::renewal_wald_check(tail, fam->projection_bound(), 4.0, 1000000, 99);
  return {w.wald_ok && w.bound_ok, "residual " + fmt(w.residual) + " (4 SE " + fmt(4 * w.residual_se) + "), E[K] " +
                                       fmt(w.mean_k) + " vs (r+a)/E[M'] " + fmt((w.r + w.a) / w.mean_m_prime)};
}

Verdict decay_rate() {
  const auto fam = graph::make_family("{5,4}");
  decay::GpOptions opt;
  opt.trials = 50000000;
  opt.seed = 1;
  const auto r = grid(0.25, 8, 32);
  const auto curve = decay::estimate_gp(*fam, {0.1}, r, decay::sample_positions(2, 16, 1), opt);
  const auto fit = decay::fit_decay(curve);
  auto at = [&](double x) {
    const auto it = std::find_if(r.begin(), r.end(), [&](double v) { return std::abs(v - x) < 1e-9; });
    return curve.estimate[0][static_cast<std::size_t>(it - r.begin())];
  };
  bool ratios = true;
  std::string detail = "psi " + fmt(fit.psi) + " per d_eth, R^2 " + fmt(fit.r_squared) + ", " +
                       std::to_string(fit.cells_used) + " cells, 5e7 trials x 16 positions; ratios";
  for (double x : {2.0, 3.0, 4.0}) {
    const double ratio = at(x) > 0 ? at(2 * x) / at(x) : INFINITY;
    ratios = ratios && ratio <= 0.6;
    detail += " r=" + fmt(x) + ":" + fmt(ratio);
  }
  return {fit.psi > 0 && fit.r_squared >= 0.9 && ratios, detail};
}

Verdict scaling() {
  const auto g = graph::make_family("{5,4}")->generate(geom::Isometry::identity(2), graph::Region::ball(6.0));
  std::size_t mismatches = 0, fragments = 0;
  double err = 0.0;
  bool pass = true;
  for (int k = 1; k <= 4; ++k)
    for (std::uint64_t s = 0; s < 5; ++s) {
      const auto rep = ends::scaling_equivariance_check(g, k, 0.5, derive_seed(5, {static_cast<std::uint64_t>(k), s}));
      mismatches += rep.fragment_mismatches;
      fragments += rep.fragments;
      err = std::max({err, rep.max_coordinate_error, rep.max_report_error});
      pass = pass && rep.passed;
    }
  return {pass && mismatches == 0 && err <= 1e-9, std::to_string(fragments) + " fragments, " +
                                                      std::to_string(mismatches) + " mismatches, max rel error " +
                                                      fmt(err)};
}

Verdict pc() {
  const auto est = decay::estimate_pc(3, {16, 32}, grid(0.4, 0.6, 81), 4000, 17);
  return {est.lower >= 0.47 && est.upper <= 0.53 && est.point >= 0.47 && est.point <= 0.53,
          "medians " + fmt(est.curves[0].median) + ", " + fmt(est.curves[1].median) + "; p_c in [" + fmt(est.lower) +
              ", " + fmt(est.upper) + "], point " + fmt(est.point)};
}

Verdict ends_survey() {
  const auto fam = graph::make_family("{5,4}");
  decay::GpOptions opt;
  opt.trials = 1000000;
  opt.seed = 1;
  const auto curve = decay::estimate_gp(*fam, {0.05}, grid(0.25, 3, 12), decay::sample_positions(2, 8, 1), opt);
  const auto fit = decay::fit_decay(curve);
  const auto rep = ends::end_boundary_survey(*fam, 0.05, {0.25, 0.5, 1.0, 2.0}, 2.0, 4, 10000, 1,
                                             ends::TailFit{std::exp(fit.intercept), fit.psi});
  bool deep_below_top = true;
  std::ostringstream d;
  d << "violations " << rep.monotonicity_violations << ";";
  std::map<double, std::map<int, std::pair<double, double>>> by;
  for (const auto& row : rep.rows) by[row.delta][row.k] = {row.frequency, row.ci};
  for (auto& [delta, ks] : by) {
    deep_below_top = deep_below_top && ks[4].first <= ks[0].first;
    d << " delta=" << fmt(delta) << " k0 " << fmt(ks[0].first) << "+-" << fmt(ks[0].second) << " k4 "
      << fmt(ks[4].first) << "+-" << fmt(ks[4].second) << ";";
  }
  return {rep.monotonicity_violations == 0 && rep.non_increasing && deep_below_top, d.str()};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria = {
      {"oracle-engine agreement", mc_agreement},
      {"Russo formula", [] { return tally("russo", 30); }},
      {"BK inequality", [] { return tally("bk", 100); }},
      {"sausage inequality on slab gadgets", saus},
      {"Russo integral inequality", [] { return tally("russo-integral", 1); }},
      {"monotone coupling", coupling},
      {"recursion machinery", menshikov},
      {"Wald identity and renewal bound", wald},
      {"exponential decay at p = 0.1", decay_rate},
      {"scaling equivariance", scaling},
      {"control lattice threshold", pc},
      {"ends survey at p = 0.05", ends_survey},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failed += !v.pass;
    std::printf("%s %2zu %s: %s [%.1f s]\n", v.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                v.detail.c_str(), secs);
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
