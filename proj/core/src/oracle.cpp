#include "hypgrowth/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "hypgrowth/errors.hpp"
#include "hypgrowth/parallel.hpp"
#include "hypgrowth/union_find.hpp"

namespace hypgrowth::oracle {

namespace {

constexpr double kHitTolerance = 1e-9;
constexpr std::uint64_t kBlock = 1u << 12;

void check_cap(std::size_t m, std::size_t cap) {
  if (m > cap)
    throw OracleCapError("enumeration over " + std::to_string(m) + " edges exceeds the cap of " +
                         std::to_string(cap));
}

std::vector<double> horizontal_of(const SlabGraph& g, VertexId v) {
  const auto h = g.position(v).horizontal();
  return {h.begin(), h.end()};
}

// Decides one event on many masks; holds per-thread scratch.
class Evaluator {
 public:
  Evaluator(const SlabGraph& g, const EventSpec& a) : g_(g), a_(a), uf_(g.vertex_count()) {
    if (a.kind == EventSpec::Kind::connects) {
      if (const auto* vt = std::get_if<perc::VertexTarget>(&a.target)) {
        mode_ = Mode::vertex_set;
        target_.assign(g.vertex_count(), 0);
        for (VertexId v : vt->vertices)
          if (v < g.vertex_count()) target_[v] = 1;
      } else if (const auto* st = std::get_if<perc::SphereTarget>(&a.target)) {
        mode_ = Mode::sphere;
        if (static_cast<int>(st->center.size()) != g.dimension() - 1)
          throw DomainError("target centre has wrong dimension");
        g.require_covered(st->center, st->r);
        radius_ = st->r;
        vd_.resize(g.vertex_count());
        for (VertexId v = 0; v < g.vertex_count(); ++v) vd_[v] = geom::d_eth(g.position(v).horizontal(), st->center);
        fmin_.resize(g.fragment_count());
        for (std::size_t f = 0; f < g.fragment_count(); ++f)
          fmin_[f] = geom::segment_min_linf(g.position(g.fragment(f).u).horizontal(),
                                            g.position(g.fragment(f).v).horizontal(), st->center);
      } else {
        mode_ = Mode::fallback;
      }
      for (VertexId s : a.sources)
        if (s >= g.vertex_count()) throw DomainError("source vertex not in graph");
    } else if (a.kind == EventSpec::Kind::size_ge) {
      mode_ = Mode::size;
      if (a.seed >= g.vertex_count()) throw DomainError("seed vertex not in graph");
    } else {
      mode_ = Mode::custom;
      if (!a.predicate) throw DomainError("custom event without predicate");
    }
    lo_.resize(g.vertex_count());
    hi_.resize(g.vertex_count());
  }

  bool operator()(std::uint64_t mask) {
    switch (mode_) {
      case Mode::custom:
        return a_.predicate(mask);
      case Mode::fallback: {
        const auto config = perc::Configuration::from_mask(g_.parent_count(), mask);
        return perc::connects(g_, config, a_.sources, a_.target);
      }
      default:
        break;
    }
    uf_.reset(g_.vertex_count());
    for (const auto& f : g_.fragments())
      if ((mask >> f.parent) & 1U) uf_.unite(f.u, f.v);
    if (mode_ == Mode::size) {
      const auto root = uf_.find(a_.seed);
      for (VertexId v = 0; v < g_.vertex_count(); ++v)
        if (uf_.find(v) == root && g_.deth_origin(v) >= a_.r - kHitTolerance) return true;
      return false;
    }
    if (mode_ == Mode::vertex_set) {
      for (VertexId s : a_.sources) {
        const auto root = uf_.find(s);
        for (VertexId v = 0; v < g_.vertex_count(); ++v)
          if (target_[v] && uf_.find(v) == root) return true;
      }
      return false;
    }
    std::fill(lo_.begin(), lo_.end(), std::numeric_limits<double>::infinity());
    std::fill(hi_.begin(), hi_.end(), -1.0);
    for (VertexId v = 0; v < g_.vertex_count(); ++v) {
      const auto root = uf_.find(v);
      lo_[root] = std::min(lo_[root], vd_[v]);
      hi_[root] = std::max(hi_[root], vd_[v]);
    }
    for (std::size_t f = 0; f < g_.fragment_count(); ++f)
      if ((mask >> g_.fragment(f).parent) & 1U) {
        const auto root = uf_.find(g_.fragment(f).u);
        lo_[root] = std::min(lo_[root], fmin_[f]);
      }
    for (VertexId s : a_.sources) {
      const auto root = uf_.find(s);
      if (lo_[root] <= radius_ + kHitTolerance && hi_[root] >= radius_ - kHitTolerance) return true;
    }
    return false;
  }

 private:
  enum class Mode { vertex_set, sphere, size, fallback, custom };
  const SlabGraph& g_;
  const EventSpec& a_;
  Mode mode_ = Mode::custom;
  std::vector<char> target_;
  std::vector<double> vd_, fmin_, lo_, hi_;
  double radius_ = 0.0;
  UnionFind uf_;
};

int resolve_threads(int threads) { return threads > 0 ? threads : default_thread_count(); }

void check_increasing(const EventTable& t, const std::string& what) {
  if (!t.is_increasing()) throw DomainError(what + " is not an increasing event");
}

}  // namespace

EventSpec EventSpec::connects(std::vector<VertexId> sources, perc::Target target, std::string label) {
  EventSpec e;
  e.kind = Kind::connects;
  e.sources = std::move(sources);
  e.target = std::move(target);
  e.label = std::move(label);
  return e;
}

EventSpec EventSpec::reaches_sphere(const SlabGraph& g, VertexId seed, double r, std::string label) {
  if (seed >= g.vertex_count()) throw DomainError("seed vertex not in graph");
  return connects({seed}, perc::SphereTarget{horizontal_of(g, seed), r, "S_r"}, std::move(label));
}

EventSpec EventSpec::size_ge(VertexId seed, double r, std::string label) {
  EventSpec e;
  e.kind = Kind::size_ge;
  e.seed = seed;
  e.r = r;
  e.label = std::move(label);
  return e;
}

EventSpec EventSpec::custom(std::function<bool(std::uint64_t)> predicate, bool monotone, std::string label) {
  EventSpec e;
  e.kind = Kind::custom;
  e.predicate = std::move(predicate);
  e.monotone_flag = monotone;
  e.label = std::move(label);
  return e;
}

EventSpec EventSpec::always(std::string label) {
  return custom([](std::uint64_t) { return true; }, true, std::move(label));
}

EventTable::EventTable(const SlabGraph& g, const EventSpec& a, std::size_t cap, int threads) {
  m_ = g.parent_count();
  check_cap(m_, cap);
  bits_.assign(size(), 0);
  const std::uint64_t blocks = (size() + kBlock - 1) / kBlock;
  parallel_for(blocks, resolve_threads(threads), [&](std::size_t b) {
    Evaluator eval(g, a);
    const std::uint64_t end = std::min<std::uint64_t>(size(), (b + 1) * kBlock);
    for (std::uint64_t mask = b * kBlock; mask < end; ++mask) bits_[mask] = eval(mask) ? 1 : 0;
  });
  if (a.monotone_flag && m_ <= kMonotoneCheckCap && !is_increasing())
    throw DomainError("event '" + a.label + "' is flagged increasing but is not");
}

EventTable EventTable::disjoint(const EventTable& a, const EventTable& b, std::size_t cap, int threads) {
  if (a.m_ != b.m_) throw DomainError("events live on different edge sets");
  check_cap(a.m_, cap);
  check_increasing(a, "first event");
  check_increasing(b, "second event");
  EventTable t;
  t.m_ = a.m_;
  t.bits_.assign(t.size(), 0);
  const std::uint64_t blocks = (t.size() + kBlock - 1) / kBlock;
  parallel_for(blocks, resolve_threads(threads), [&](std::size_t blk) {
    const std::uint64_t end = std::min<std::uint64_t>(t.size(), (blk + 1) * kBlock);
    for (std::uint64_t w = blk * kBlock; w < end; ++w) {
      if (!a[w] || !b[w]) continue;
      // For increasing events a split w = K + (w \ K) with K in A and the rest in B suffices.
      for (std::uint64_t k = w;; k = (k - 1) & w) {
        if (a[k] && b[w & ~k]) {
          t.bits_[w] = 1;
          break;
        }
        if (k == 0) break;
      }
    }
  });
  return t;
}

bool EventTable::is_increasing() const {
  for (std::uint64_t w = 0; w < size(); ++w) {
    if (!bits_[w]) continue;
    for (std::size_t e = 0; e < m_; ++e)
      if (!bits_[w | (std::uint64_t{1} << e)]) return false;
  }
  return true;
}

std::vector<std::uint64_t> EventTable::counts() const {
  std::vector<std::uint64_t> c(m_ + 1, 0);
  for (std::uint64_t w = 0; w < size(); ++w)
    if (bits_[w]) ++c[static_cast<std::size_t>(std::popcount(w))];
  return c;
}

bool event_occurs(const SlabGraph& g, const EventSpec& a, const perc::Configuration& config) {
  switch (a.kind) {
    case EventSpec::Kind::connects:
      return perc::connects(g, config, a.sources, a.target);
    case EventSpec::Kind::size_ge: {
      perc::ClusterExplorer explorer(g);
      const VertexId seed[] = {a.seed};
      return explorer.explore(seed, [&](graph::ParentId e) { return config.is_open(e); }) >= a.r - kHitTolerance;
    }
    case EventSpec::Kind::custom: {
      if (config.size() > 64) throw DomainError("custom events hold at most 64 edges");
      std::uint64_t mask = 0;
      for (std::size_t e = 0; e < config.size(); ++e)
        if (config.is_open(static_cast<graph::ParentId>(e))) mask |= std::uint64_t{1} << e;
      return a.predicate(mask);
    }
  }
  return false;
}

PolyInP exact_prob(const EventTable& t) { return PolyInP::from_counts(t.counts(), t.edges()); }

PolyInP exact_prob(const SlabGraph& g, const EventSpec& a, std::size_t cap) {
  return exact_prob(EventTable(g, a, cap));
}

PivotalExpectation pivotal_expectation(const EventTable& t) {
  const std::size_t m = t.edges();
  std::vector<std::uint64_t> n(m + 1, 0), n_on_a(m + 1, 0);
  for (std::uint64_t w = 0; w < t.size(); ++w) {
    std::uint64_t pivots = 0;
    for (std::size_t e = 0; e < m; ++e) pivots += t[w] != t[w ^ (std::uint64_t{1} << e)];
    const auto j = static_cast<std::size_t>(std::popcount(w));
    n[j] += pivots;
    if (t[w]) n_on_a[j] += pivots;
  }
  return {PolyInP::from_counts(n, m), PolyInP::from_counts(n_on_a, m)};
}

PivotalExpectation pivotal_expectation(const SlabGraph& g, const EventSpec& a, std::size_t cap) {
  return pivotal_expectation(EventTable(g, a, cap));
}

RussoReport verify_russo(const SlabGraph& g, const EventSpec& a, std::size_t cap) {
  const EventTable t(g, a, cap);
  check_increasing(t, "event '" + a.label + "'");
  RussoReport rep;
  rep.derivative = exact_prob(t).derivative();
  rep.expectation = pivotal_expectation(t).expected_n;
  const auto& d = rep.derivative.coefficients();
  const auto& e = rep.expectation.coefficients();
  for (std::size_t i = 0; i < std::max(d.size(), e.size()); ++i) {
    const mpq_class di = i < d.size() ? d[i] : mpq_class(0);
    const mpq_class ei = i < e.size() ? e[i] : mpq_class(0);
    if (di != ei)
      rep.discrepancies.push_back("p^" + std::to_string(i) + ": " + di.get_str() + " vs " + ei.get_str());
  }
  rep.holds = rep.discrepancies.empty();
  return rep;
}

EventSpec disjoint_occurrence(const SlabGraph& g, const EventSpec& a, const EventSpec& b, std::size_t cap) {
  check_cap(g.parent_count(), cap);
  auto table = std::make_shared<EventTable>(
      EventTable::disjoint(EventTable(g, a, cap), EventTable(g, b, cap), cap));
  return EventSpec::custom([table](std::uint64_t w) { return (*table)[w]; }, true,
                           "(" + a.label + ") o (" + b.label + ")");
}

BkReport verify_bk(const SlabGraph& g, const EventSpec& a, const EventSpec& b, std::size_t cap) {
  check_cap(g.parent_count(), cap);
  const EventTable ta(g, a, cap), tb(g, b, cap);
  const EventTable tab = EventTable::disjoint(ta, tb, cap);
  BkReport rep;
  rep.prob_a = exact_prob(ta);
  rep.prob_b = exact_prob(tb);
  rep.prob_ab = exact_prob(tab);
  bool first = true;
  for (int k = 1; k <= 99; ++k) {
    const mpq_class p(k, 100);
    const mpq_class margin = rep.prob_a(p) * rep.prob_b(p) - rep.prob_ab(p);
    if (first || margin < rep.min_margin) rep.min_margin = margin;
    first = false;
    ++rep.points_checked;
    if (margin < 0) {
      ++rep.violations;
      rep.failures.push_back("p=" + p.get_str() + " margin " + margin.get_str());
    }
  }
  return rep;
}

RussoIntegralReport verify_russo_integral(const SlabGraph& g, const EventSpec& a, double alpha, double beta,
                                          std::size_t cap) {
  if (!(0.0 < alpha && alpha < beta && beta <= 1.0)) throw DomainError("need 0 < alpha < beta <= 1");
  const EventTable t(g, a, cap);
  check_increasing(t, "event '" + a.label + "'");
  const PolyInP f = exact_prob(t);
  const PolyInP n_on_a = pivotal_expectation(t).expected_n_on_a;
  RussoIntegralReport rep;
  rep.alpha = alpha;
  rep.beta = beta;
  rep.f_alpha = f.value(alpha);
  rep.f_beta = f.value(beta);
  if (!(rep.f_alpha > 0.0)) throw DomainError("event '" + a.label + "' has probability 0 at alpha");
  auto integrand = [&](double p) -> double { return mpq_class(n_on_a(mpq_class(p)) / f(mpq_class(p))).get_d(); };
  using boost::math::quadrature::gauss_kronrod;
  rep.integral = gauss_kronrod<double, 31>::integrate(integrand, alpha, beta, 15, 1e-13, &rep.quadrature_error);
  rep.rhs = rep.f_beta * std::exp(-rep.integral);
  rep.margin = rep.rhs - rep.f_alpha;
  rep.holds = rep.margin >= -1e-9;
  return rep;
}

}  // namespace hypgrowth::oracle
