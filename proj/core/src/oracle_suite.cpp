#include "hypgrowth/oracle_suite.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>

#include "hypgrowth/errors.hpp"
#include "hypgrowth/parallel.hpp"
#include "hypgrowth/rng.hpp"
#include "hypgrowth/sausage.hpp"

namespace hypgrowth::oracle {

namespace {

using report::CheckRow;
using report::Status;

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", x);
  return buf;
}

CheckRow row(std::string check, std::string instance, bool ok, double margin, std::string witness = {}) {
  return {std::move(check), std::move(instance), ok ? Status::pass : Status::fail, margin,
          ok ? std::string() : std::move(witness)};
}

template <class T>
T pick(const std::vector<T>& v, std::mt19937_64& rng) {
  return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)];
}

}  // namespace

EventSpec random_increasing_event(const Gadget& g, std::mt19937_64& rng) {
  const auto n = static_cast<VertexId>(g.graph.vertex_count());
  const std::size_t m = g.graph.parent_count();
  std::uniform_int_distribution<VertexId> vertex(0, n - 1);
  std::vector<double> radii;
  for (double r : realizable_rho_values(g.graph))
    if (r > 1e-12) radii.push_back(r);
  const int kind = std::uniform_int_distribution<int>(0, radii.empty() ? 1 : 3)(rng);
  switch (kind) {
    case 0: {
      const VertexId u = vertex(rng);
      VertexId v = vertex(rng);
      if (v == u) v = (u + 1) % n;
      return EventSpec::connects({u}, perc::VertexTarget{{v}},
                                 std::to_string(u) + "<->" + std::to_string(v));
    }
    case 1: {
      std::uint64_t subset = 0;
      while (subset == 0) subset = rng() & ((std::uint64_t{1} << m) - 1);
      const int size = std::popcount(subset);
      const int need = std::uniform_int_distribution<int>(1, size)(rng);
      return EventSpec::custom([subset, need](std::uint64_t open) { return std::popcount(open & subset) >= need; },
                               true, ">=" + std::to_string(need) + " open in mask " + std::to_string(subset));
    }
    case 2: {
      const VertexId u = vertex(rng);
      const double r = pick(radii, rng);
      return EventSpec::reaches_sphere(g.graph, u, r, std::to_string(u) + "<->S_" + fmt(r));
    }
    default: {
      const VertexId u = vertex(rng);
      const double r = pick(radii, rng);
      return EventSpec::size_ge(u, r, "size(" + std::to_string(u) + ")>=" + fmt(r));
    }
  }
}

std::vector<EventPair> random_event_pairs(const std::vector<Gadget>& gadgets, std::size_t count, std::uint64_t seed,
                                          std::size_t max_edges) {
  std::vector<std::size_t> eligible;
  for (std::size_t i = 0; i < gadgets.size(); ++i)
    if (gadgets[i].graph.parent_count() <= max_edges && gadgets[i].graph.vertex_count() >= 2) eligible.push_back(i);
  if (eligible.empty() && count > 0) throw DomainError("no gadget is small enough for event pairs");
  std::mt19937_64 rng(derive_seed(seed, {tag_of("bk-pairs")}));
  std::vector<EventPair> out;
  for (std::size_t k = 0; k < count; ++k) {
    EventPair pair;
    pair.gadget = eligible[k % eligible.size()];
    pair.a = random_increasing_event(gadgets[pair.gadget], rng);
    pair.b = random_increasing_event(gadgets[pair.gadget], rng);
    out.push_back(std::move(pair));
  }
  return out;
}

std::vector<CheckRow> run_oracle_suite(const std::vector<Gadget>& gadgets, const SuiteOptions& opt) {
  std::vector<CheckRow> rows;
  const int threads = opt.threads > 0 ? opt.threads : default_thread_count();

  for (const auto& g : gadgets) {
    for (const auto& e : g.events()) {
      const std::string inst = e.label.rfind(g.name + ":", 0) == 0 ? e.label : g.name + ":" + e.label;
      if (opt.monotone && g.graph.parent_count() <= kMonotoneCheckCap) {
        const EventTable t(g.graph, e, kEnumerationCap, threads);
        rows.push_back(row("monotone", inst, t.is_increasing(), 0.0, "event table is not increasing"));
      }
      if (opt.russo) {
        const auto rep = verify_russo(g.graph, e);
        std::string witness;
        for (const auto& d : rep.discrepancies) witness += d + "; ";
        rows.push_back(row("russo", inst, rep.holds, 0.0, witness));
      }
      if (!opt.alpha_beta.empty()) {
        const PolyInP prob = exact_prob(g.graph, e);
        for (const auto& [alpha, beta] : opt.alpha_beta) {
          const std::string ab = inst + "@(" + fmt(alpha) + "," + fmt(beta) + ")";
          if (prob.value(alpha) == 0.0) {
            rows.push_back({"russo-integral", ab, Status::skipped, 0.0, "Pr_alpha(A) = 0"});
            continue;
          }
          const auto rep = verify_russo_integral(g.graph, e, alpha, beta);
          rows.push_back(row("russo-integral", ab, rep.holds, rep.margin,
                             "f_alpha=" + fmt(rep.f_alpha) + " rhs=" + fmt(rep.rhs)));
        }
      }
    }
  }

  if (opt.bk_pairs > 0) {
    const auto pairs = random_event_pairs(gadgets, opt.bk_pairs, opt.seed);
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      const auto& pr = pairs[k];
      const auto& g = gadgets[pr.gadget];
      const auto rep = verify_bk(g.graph, pr.a, pr.b);
      std::string witness;
      for (const auto& f : rep.failures) witness += f + "; ";
      rows.push_back(row("bk", "pair" + std::to_string(k) + ":" + g.name + ":[" + pr.a.label + "]o[" + pr.b.label + "]",
                         rep.violations == 0, rep.min_margin.get_d(), witness));
    }
  }

  if (opt.saus) {
    for (const auto& g : gadgets) {
      if (!g.slab) continue;
      const auto rep = verify_saus(g.graph, g.seed, g.radii, opt.saus_p_grid, gadget_dominating_curve(g.graph));
      std::string witness;
      for (const auto& f : rep.failures) witness += f + "; ";
      rows.push_back(row("saus", g.name + ":tuples=" + std::to_string(rep.tuples_checked), rep.violations == 0,
                         rep.min_margin.get_d(), witness));
      rows.push_back(row("menger", g.name, rep.menger_ok, 0.0, "a sausage carries fewer than two disjoint paths"));
    }
  }

  if (opt.mc_trials > 0) {
    for (std::size_t gi = 0; gi < gadgets.size(); ++gi) {
      const auto& g = gadgets[gi];
      if (g.slab || !g.terminal) continue;
      const auto ev = g.events().front();
      const PolyInP prob = exact_prob(g.graph, ev);
      for (std::size_t pi = 0; pi < opt.mc_p.size(); ++pi) {
        const double p = opt.mc_p[pi];
        constexpr std::size_t kBlock = 4096;
        const std::size_t blocks = (opt.mc_trials + kBlock - 1) / kBlock;
        std::vector<std::uint64_t> hits(blocks, 0);
        parallel_for(blocks, threads, [&](std::size_t b) {
          for (std::size_t t = b * kBlock; t < std::min(opt.mc_trials, (b + 1) * kBlock); ++t) {
            const auto config =
                perc::Configuration::sample(g.graph, p, derive_seed(opt.seed, {tag_of("mc-oracle"), gi, pi, t}));
            hits[b] += event_occurs(g.graph, ev, config);
          }
        });
        std::uint64_t total = 0;
        for (auto h : hits) total += h;
        const double f = static_cast<double>(total) / static_cast<double>(opt.mc_trials);
        const double exact = prob.value(p);
        const double se = std::sqrt(exact * (1.0 - exact) / static_cast<double>(opt.mc_trials));
        const double margin = 4.0 * se - std::abs(f - exact);
        rows.push_back(row("mc-agreement", g.name + ":" + ev.label + "@p=" + fmt(p), margin >= 0.0, margin,
                           "frequency " + fmt(f) + " vs exact " + fmt(exact)));
      }
    }
  }
  return rows;
}

}  // namespace hypgrowth::oracle
