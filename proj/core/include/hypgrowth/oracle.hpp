#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "hypgrowth/percolation.hpp"
#include "hypgrowth/polynomial.hpp"
#include "hypgrowth/slab_graph.hpp"

namespace hypgrowth::oracle {

using graph::SlabGraph;
using graph::VertexId;

inline constexpr std::size_t kEnumerationCap = 22;
inline constexpr std::size_t kDisjointCap = 14;
inline constexpr std::size_t kMonotoneCheckCap = 16;

// An event over the parent-edge states of a fixed graph.  Custom predicates receive the open set
// as a bit mask (bit e = parent e).
struct EventSpec {
  enum class Kind { connects, size_ge, custom };
  Kind kind = Kind::custom;
  std::vector<VertexId> sources;
  perc::Target target;
  VertexId seed = 0;
  double r = 0.0;
  std::function<bool(std::uint64_t)> predicate;
  bool monotone_flag = true;
  std::string label;

  static EventSpec connects(std::vector<VertexId> sources, perc::Target target, std::string label = {});
  // seed <-> S_r(seed), the sphere centred on the seed's own vertical line
  static EventSpec reaches_sphere(const SlabGraph& g, VertexId seed, double r, std::string label = {});
  static EventSpec size_ge(VertexId seed, double r, std::string label = {});
  static EventSpec custom(std::function<bool(std::uint64_t)> predicate, bool monotone, std::string label = {});
  static EventSpec always(std::string label = "always");
};

// Indicator of an event on each of the 2^m open sets.
class EventTable {
 public:
  EventTable(const SlabGraph& g, const EventSpec& a, std::size_t cap = kEnumerationCap, int threads = 0);
  // Table of A o B (disjoint occurrence) from the tables of two increasing events.
  static EventTable disjoint(const EventTable& a, const EventTable& b, std::size_t cap = kDisjointCap,
                             int threads = 0);

  std::size_t edges() const { return m_; }
  std::uint64_t size() const { return std::uint64_t{1} << m_; }
  bool operator[](std::uint64_t mask) const { return bits_[mask] != 0; }
  bool is_increasing() const;
  // Number of open sets in A, by number of open edges.
  std::vector<std::uint64_t> counts() const;

 private:
  EventTable() = default;
  std::size_t m_ = 0;
  std::vector<std::uint8_t> bits_;
};

// Evaluates one event on one configuration without enumerating (used by Monte Carlo cross-checks).
bool event_occurs(const SlabGraph& g, const EventSpec& a, const perc::Configuration& config);

PolyInP exact_prob(const EventTable& t);
PolyInP exact_prob(const SlabGraph& g, const EventSpec& a, std::size_t cap = kEnumerationCap);

struct PivotalExpectation {
  PolyInP expected_n;       // E_p[N(A)]
  PolyInP expected_n_on_a;  // E_p[N(A) 1_A]
};

PivotalExpectation pivotal_expectation(const EventTable& t);
PivotalExpectation pivotal_expectation(const SlabGraph& g, const EventSpec& a, std::size_t cap = kEnumerationCap);

struct RussoReport {
  bool holds = false;
  PolyInP derivative;
  PolyInP expectation;
  std::vector<std::string> discrepancies;
};

RussoReport verify_russo(const SlabGraph& g, const EventSpec& a, std::size_t cap = kEnumerationCap);

EventSpec disjoint_occurrence(const SlabGraph& g, const EventSpec& a, const EventSpec& b,
                              std::size_t cap = kDisjointCap);

struct BkReport {
  std::size_t points_checked = 0;
  std::size_t violations = 0;
  mpq_class min_margin = 1;  // min over the grid of Pr(A)Pr(B) - Pr(A o B)
  std::vector<std::string> failures;
  PolyInP prob_a, prob_b, prob_ab;
};

// Checked at p = 1/100, ..., 99/100 in exact arithmetic.
BkReport verify_bk(const SlabGraph& g, const EventSpec& a, const EventSpec& b, std::size_t cap = kDisjointCap);

struct RussoIntegralReport {
  double alpha = 0.0, beta = 0.0;
  double f_alpha = 0.0, f_beta = 0.0;
  double integral = 0.0;        // int_alpha^beta E_p[N | A] dp
  double quadrature_error = 0.0;
  double rhs = 0.0;             // f_beta exp(-integral)
  double margin = 0.0;          // rhs - f_alpha
  bool holds = false;           // margin >= -1e-9
};

RussoIntegralReport verify_russo_integral(const SlabGraph& g, const EventSpec& a, double alpha, double beta,
                                          std::size_t cap = kEnumerationCap);

}  // namespace hypgrowth::oracle
