#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "hypgrowth/oracle.hpp"
#include "hypgrowth/slab_graph.hpp"

namespace hypgrowth::oracle {

// A small graph with a seed vertex and the standard increasing events built on it.
struct Gadget {
  std::string name;
  SlabGraph graph;
  VertexId seed = 0;
  std::optional<VertexId> terminal;
  std::vector<double> radii;  // sphere radii for seed <-> S_r(seed)
  bool slab = false;          // cut from a placed tiling rather than drawn by hand

  // seed <-> terminal, then seed <-> S_r for each radius.
  std::vector<EventSpec> events() const;
};

std::vector<Gadget> gadget_corpus();
Gadget find_gadget(const std::string& name);

// The three gadgets cut from placed tilings.
std::vector<Gadget> slab_gadgets();

// Graph file format plus gadget_name, seed_index, terminal_index, radii and a parents array
// (one parent id per edge, so fragments of one parent keep sharing a state).
std::string gadget_to_json(const Gadget& g);
Gadget gadget_from_json(const std::string& text);
void save_gadget(const Gadget& g, const std::filesystem::path& path);
Gadget load_gadget(const std::filesystem::path& path);

// Builds a hand-drawn gadget in H^2 from (x, height) positions; every edge is its own parent.
Gadget make_gadget(std::string name, const std::vector<std::pair<double, double>>& positions,
                   const std::vector<std::pair<VertexId, VertexId>>& edges, std::optional<VertexId> terminal,
                   std::vector<double> radii);

// The first `parents` parent edges met by a breadth-first search from the origin of a clip of
// the {p,q} tiling placed by Phi^(h, rotation(angle)) and cut to [delta, 1].
Gadget cut_tiling_gadget(std::string name, int p, int q, double h, double angle, double delta,
                         std::size_t parents);

}  // namespace hypgrowth::oracle
