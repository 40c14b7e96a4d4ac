#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "copnum/graph.hpp"

namespace copnum {

// Edge-list text: one "u v" pair per line, '#' starts a comment, blank lines
// ignored. The order is 1 + the largest index mentioned.
Graph parse_edge_list(std::string_view text);

// JSON descriptor {"n": int, "edges": [[u, v], ...]}.
Graph parse_graph_json(std::string_view text);

// Dispatches on the first non-blank character: '{' selects JSON.
Graph load_graph(std::string_view text);
Graph load_graph_file(const std::filesystem::path& path);

std::string to_edge_list(const Graph& g);
std::string to_graph_json(const Graph& g);

// Distance serialization: kInfinity becomes the string "inf".
std::string format_distance(std::uint32_t d);

}  // namespace copnum
