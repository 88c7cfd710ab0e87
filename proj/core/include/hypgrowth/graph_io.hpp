#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "hypgrowth/embedded_graph.hpp"

namespace hypgrowth::graph {

// JSON text: {dimension, vertices, edges, origin_index, meta}; numbers use 17 significant digits
// so that load(save(g)) reproduces every coordinate bit for bit.
std::string to_json(const EmbeddedGraph& g, const std::optional<std::string>& gadget_name = std::nullopt);
EmbeddedGraph from_json(const std::string& text);

void save_graph(const EmbeddedGraph& g, const std::filesystem::path& path);
EmbeddedGraph load_graph(const std::filesystem::path& path);

std::string format_double(double x);

// 64-bit FNV-1a of the serialized graph, as 16 hex digits.
std::string graph_hash(const EmbeddedGraph& g);

}  // namespace hypgrowth::graph
