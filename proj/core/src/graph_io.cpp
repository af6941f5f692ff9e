#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "pinctl/error.hpp"
#include "pinctl/graph.hpp"

namespace pinctl {

namespace {

using nlohmann::json;

NodeId to_index(const json& v, long long base, std::size_t n, std::size_t edge_no) {
  if (!v.is_number_integer()) {
    throw Error(ErrorCode::Parse, "edge " + std::to_string(edge_no) + ": node labels must be integers");
  }
  const long long raw = v.get<long long>();
  const long long idx = raw - base;
  if (idx < 0 || idx >= static_cast<long long>(n)) {
    throw Error(ErrorCode::IndexOutOfRange,
                "edge " + std::to_string(edge_no) + ": node " + std::to_string(raw) +
                    " outside " + std::to_string(base) + ".." +
                    std::to_string(base + static_cast<long long>(n) - 1));
  }
  return static_cast<NodeId>(idx);
}

}  // namespace

Graph load_graph(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::Parse, std::string("graph document is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw Error(ErrorCode::Parse, "graph document must be a JSON object");

  const auto nodes = doc.find("nodes");
  if (nodes == doc.end() || !nodes->is_number_integer() || nodes->get<long long>() <= 0) {
    throw Error(ErrorCode::Parse, "\"nodes\" must be a positive integer");
  }
  const auto n = static_cast<std::size_t>(nodes->get<long long>());

  long long base = 1;
  if (const auto b = doc.find("index_base"); b != doc.end()) {
    if (!b->is_number_integer()) throw Error(ErrorCode::Parse, "\"index_base\" must be an integer");
    base = b->get<long long>();
  }

  const auto edges_it = doc.find("edges");
  if (edges_it == doc.end() || !edges_it->is_array()) {
    throw Error(ErrorCode::Parse, "\"edges\" must be an array");
  }

  std::vector<Edge> edges;
  edges.reserve(edges_it->size());
  std::size_t edge_no = 0;
  for (const json& e : *edges_it) {
    ++edge_no;
    if (!e.is_array() || e.size() < 2 || e.size() > 3) {
      throw Error(ErrorCode::Parse,
                  "edge " + std::to_string(edge_no) + ": expected [u, v] or [u, v, w]");
    }
    Edge edge{to_index(e[0], base, n, edge_no), to_index(e[1], base, n, edge_no), 1.0};
    if (e.size() == 3) {
      if (!e[2].is_number()) {
        throw Error(ErrorCode::Parse, "edge " + std::to_string(edge_no) + ": weight must be a number");
      }
      edge.weight = e[2].get<double>();
    }
    edges.push_back(edge);
  }
  return Graph(n, std::move(edges));
}

Graph load_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Parse, "cannot open graph file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_graph(buf.str());
}

}  // namespace pinctl
