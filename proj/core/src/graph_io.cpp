#include "copnum/graph_io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "copnum/error.hpp"

namespace copnum {

namespace {

std::string_view trim(std::string_view s) {
  auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

Vertex parse_index(std::string_view token, std::size_t line) {
  Vertex value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size()) {
    throw ParseError("expected a non-negative vertex index, got '" + std::string(token) + "'",
                     line);
  }
  if (value == kInfinity) throw ParseError("vertex index too large", line);
  return value;
}

}  // namespace

Graph parse_edge_list(std::string_view text) {
  std::vector<Edge> edges;
  std::size_t n = 0;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    std::vector<std::string_view> tokens;
    while (!line.empty()) {
      auto end = line.find_first_of(" \t");
      tokens.push_back(line.substr(0, end));
      line = end == std::string_view::npos ? std::string_view{} : trim(line.substr(end));
    }
    if (tokens.size() != 2) {
      throw ParseError("expected two vertex indices, got " + std::to_string(tokens.size()) +
                           " tokens",
                       line_no);
    }
    Vertex u = parse_index(tokens[0], line_no);
    Vertex v = parse_index(tokens[1], line_no);
    if (u == v) throw ParseError("self-loop at vertex " + std::to_string(u), line_no);
    edges.push_back({u, v});
    n = std::max<std::size_t>(n, std::max(u, v) + std::size_t{1});
  }
  return Graph::from_edges(n, edges);
}

Graph parse_graph_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid graph JSON: ") + e.what(), 0);
  }
  if (!doc.is_object() || !doc.contains("n") || !doc.contains("edges")) {
    throw ParseError("graph JSON needs fields \"n\" and \"edges\"", 0);
  }
  if (!doc["n"].is_number_unsigned() && !(doc["n"].is_number_integer() && doc["n"].get<long long>() >= 0)) {
    throw ParseError("\"n\" must be a non-negative integer", 0);
  }
  auto n = doc["n"].get<std::size_t>();
  std::vector<Edge> edges;
  std::size_t index = 0;
  for (const auto& e : doc["edges"]) {
    ++index;
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_unsigned() || !e[1].is_number_unsigned()) {
      throw ParseError("edge #" + std::to_string(index) + " must be a pair of vertex indices", 0);
    }
    Edge edge{e[0].get<Vertex>(), e[1].get<Vertex>()};
    if (edge.u == edge.v) {
      throw ParseError("self-loop at vertex " + std::to_string(edge.u) + " in edge #" +
                           std::to_string(index),
                       0);
    }
    edges.push_back(edge);
  }
  try {
    return Graph::from_edges(n, edges);
  } catch (const PreconditionError& e) {
    throw ParseError(e.what(), 0);
  }
}

Graph load_graph(std::string_view text) {
  auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '{') return parse_graph_json(text);
  return parse_edge_list(text);
}

Graph load_graph_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open graph file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return load_graph(buffer.str());
}

std::string to_edge_list(const Graph& g) {
  std::string out;
  out += "# n=" + std::to_string(g.order()) + " m=" + std::to_string(g.size()) + "\n";
  for (const Edge& e : g.edges()) {
    out += std::to_string(e.u);
    out += ' ';
    out += std::to_string(e.v);
    out += '\n';
  }
  return out;
}

std::string to_graph_json(const Graph& g) {
  nlohmann::json doc;
  doc["n"] = g.order();
  auto& edges = doc["edges"] = nlohmann::json::array();
  for (const Edge& e : g.edges()) edges.push_back({e.u, e.v});
  return doc.dump();
}

std::string format_distance(std::uint32_t d) {
  return d == kInfinity ? std::string("inf") : std::to_string(d);
}

}  // namespace copnum
