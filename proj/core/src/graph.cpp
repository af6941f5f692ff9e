#include "pinctl/graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <string>

#include "pinctl/error.hpp"

namespace pinctl {

namespace {

constexpr std::size_t kUnreached = std::numeric_limits<std::size_t>::max();

std::string label(NodeId i) { return std::to_string(i + 1); }

}  // namespace

Graph::Graph(std::size_t n, std::vector<Edge> edges)
    : n_(n), edges_(std::move(edges)), adjacency_(n, n), neighbors_(n), degree_(n, 0.0) {
  if (n_ == 0) throw Error(ErrorCode::InvalidArgument, "graph must have at least one node");
  for (const Edge& e : edges_) {
    if (e.u >= n_ || e.v >= n_) {
      throw Error(ErrorCode::IndexOutOfRange,
                  "edge (" + label(e.u) + ", " + label(e.v) + ") references a node outside 1.." +
                      std::to_string(n_));
    }
    if (e.u == e.v) throw Error(ErrorCode::SelfLoop, "self-loop at node " + label(e.u));
    if (!std::isfinite(e.weight) || e.weight <= 0.0) {
      throw Error(ErrorCode::NonPositiveWeight, "edge (" + label(e.u) + ", " + label(e.v) +
                                                    ") has non-positive weight " +
                                                    std::to_string(e.weight));
    }
    if (adjacency_(e.u, e.v) != 0.0) {
      throw Error(ErrorCode::DuplicateEdge,
                  "duplicate edge (" + label(e.u) + ", " + label(e.v) + ")");
    }
    adjacency_(e.u, e.v) = e.weight;
    adjacency_(e.v, e.u) = e.weight;
    neighbors_[e.u].push_back(e.v);
    neighbors_[e.v].push_back(e.u);
    degree_[e.u] += e.weight;
    degree_[e.v] += e.weight;
  }
  for (auto& nb : neighbors_) std::sort(nb.begin(), nb.end());
}

double Graph::max_degree() const { return *std::max_element(degree_.begin(), degree_.end()); }

Matrix laplacian(const Graph& g) {
  const std::size_t n = g.size();
  Matrix l(n, n);
  for (NodeId i = 0; i < n; ++i) {
    double row = 0.0;
    for (NodeId j : g.neighbors(i)) {
      l(i, j) = -g.weight(i, j);
      row += g.weight(i, j);
    }
    // Summing the same terms as the off-diagonals keeps L 1 = 0 exact for
    // integer weights.
    l(i, i) = row;
  }
  return l;
}

std::vector<std::size_t> bfs_hops(const Graph& g, NodeId source) {
  std::vector<std::size_t> dist(g.size(), kUnreached);
  std::queue<NodeId> frontier;
  dist[source] = 0;
  frontier.push(source);
  while (!frontier.empty()) {
    const NodeId u = frontier.front();
    frontier.pop();
    for (NodeId v : g.neighbors(u)) {
      if (dist[v] == kUnreached) {
        dist[v] = dist[u] + 1;
        frontier.push(v);
      }
    }
  }
  return dist;
}

bool is_connected(const Graph& g) {
  const auto dist = bfs_hops(g, 0);
  return std::none_of(dist.begin(), dist.end(), [](std::size_t d) { return d == kUnreached; });
}

DistanceMatrix hop_distances(const Graph& g) {
  const std::size_t n = g.size();
  DistanceMatrix d(n);
  for (NodeId s = 0; s < n; ++s) {
    const auto row = bfs_hops(g, s);
    for (NodeId t = 0; t < n; ++t) {
      if (row[t] == kUnreached) {
        throw Error(ErrorCode::Disconnected,
                    "graph is disconnected: node " + label(t) + " unreachable from " + label(s));
      }
      d(s, t) = row[t];
    }
  }
  return d;
}

NodeSet make_node_set(std::span<const NodeId> nodes, std::size_t n) {
  NodeSet s(nodes.begin(), nodes.end());
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  if (!s.empty() && s.back() >= n) {
    throw Error(ErrorCode::IndexOutOfRange,
                "node " + label(s.back()) + " outside 1.." + std::to_string(n));
  }
  return s;
}

std::vector<std::size_t> distance_to_set(const Graph& g, std::span<const NodeId> set) {
  if (set.empty()) throw Error(ErrorCode::EmptySet, "distance to an empty node set is undefined");
  const NodeSet sources = make_node_set(set, g.size());

  // Multi-source BFS.
  std::vector<std::size_t> dist(g.size(), kUnreached);
  std::queue<NodeId> frontier;
  for (NodeId s : sources) {
    dist[s] = 0;
    frontier.push(s);
  }
  while (!frontier.empty()) {
    const NodeId u = frontier.front();
    frontier.pop();
    for (NodeId v : g.neighbors(u)) {
      if (dist[v] == kUnreached) {
        dist[v] = dist[u] + 1;
        frontier.push(v);
      }
    }
  }
  for (NodeId i = 0; i < g.size(); ++i) {
    if (dist[i] == kUnreached) {
      throw Error(ErrorCode::Disconnected,
                  "graph is disconnected: node " + label(i) + " unreachable from the set");
    }
  }
  return dist;
}

std::vector<NodeId> LayeredPartition::ordering() const {
  std::vector<NodeId> order;
  for (const auto& layer : layers) order.insert(order.end(), layer.begin(), layer.end());
  return order;
}

LayeredPartition layer_partition(const Graph& g, std::span<const NodeId> pins) {
  if (pins.empty()) throw Error(ErrorCode::EmptySet, "layer partition needs a nonempty pinning set");
  const auto dist = distance_to_set(g, pins);
  const std::size_t depth = *std::max_element(dist.begin(), dist.end());

  LayeredPartition p;
  p.layers.resize(depth + 1);
  for (NodeId i = 0; i < g.size(); ++i) p.layers[dist[i]].push_back(i);

  for (std::size_t j = 0; j < depth; ++j) {
    const NodeSet& from = p.layers[j];
    const NodeSet& to = p.layers[j + 1];
    Matrix c(from.size(), to.size());
    std::vector<double> out(from.size(), 0.0);
    std::vector<double> in(to.size(), 0.0);
    for (std::size_t r = 0; r < from.size(); ++r) {
      for (std::size_t s = 0; s < to.size(); ++s) {
        const double w = g.weight(from[r], to[s]);
        c(r, s) = w;
        out[r] += w;
        in[s] += w;
      }
    }
    p.couplings.push_back(std::move(c));
    p.out_sums.push_back(std::move(out));
    p.in_sums.push_back(std::move(in));
  }
  return p;
}

}  // namespace pinctl
