#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "pinctl/matrix.hpp"

namespace pinctl {

/// Internal 0-based node index. External documents and CLI I/O use 1-based labels.
using NodeId = std::size_t;
/// Sorted, duplicate-free list of node indices.
using NodeSet = std::vector<NodeId>;

struct Edge {
  NodeId u;
  NodeId v;
  double weight = 1.0;
};

/// Weighted undirected simple graph.
///
/// Construction validates the edge list: indices in range, strictly positive
/// weights, no self-loops, no duplicate (unordered) pairs. The adjacency
/// matrix is symmetric with a zero diagonal.
class Graph {
 public:
  Graph(std::size_t n, std::vector<Edge> edges);

  std::size_t size() const noexcept { return n_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const Matrix& adjacency() const noexcept { return adjacency_; }
  double weight(NodeId i, NodeId j) const { return adjacency_(i, j); }
  std::span<const NodeId> neighbors(NodeId i) const { return neighbors_[i]; }

  /// Weighted degree (row sum of the adjacency matrix).
  double degree(NodeId i) const { return degree_[i]; }
  /// Number of incident edges, ignoring weights.
  std::size_t hop_degree(NodeId i) const { return neighbors_[i].size(); }
  std::vector<double> degrees() const { return degree_; }
  double max_degree() const;

 private:
  std::size_t n_;
  std::vector<Edge> edges_;
  Matrix adjacency_;
  std::vector<std::vector<NodeId>> neighbors_;
  std::vector<double> degree_;
};

/// Parses a JSON graph document:
///   {"nodes": N, "index_base": 1, "edges": [[u, v, w], ...]}
/// `index_base` defaults to 1 and the weight defaults to 1.0.
Graph load_graph(std::string_view text);
Graph load_graph_file(const std::string& path);

/// L = diag(A 1) - A.
Matrix laplacian(const Graph& g);

bool is_connected(const Graph& g);

/// All-pairs unweighted hop counts (row-major, n x n).
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  explicit DistanceMatrix(std::size_t n) : n_(n), d_(n * n, 0) {}

  std::size_t size() const noexcept { return n_; }
  std::size_t operator()(NodeId i, NodeId j) const { return d_[i * n_ + j]; }
  std::size_t& operator()(NodeId i, NodeId j) { return d_[i * n_ + j]; }

 private:
  std::size_t n_ = 0;
  std::vector<std::size_t> d_;
};

/// Throws Error(Disconnected) when some pair is unreachable.
DistanceMatrix hop_distances(const Graph& g);

/// Single-source BFS hop counts; unreachable nodes map to npos.
std::vector<std::size_t> bfs_hops(const Graph& g, NodeId source);

/// Entry i is min over j in S of hop distance(i, j).
std::vector<std::size_t> distance_to_set(const Graph& g, std::span<const NodeId> set);

/// BFS layering of the node set relative to a pinning set.
///
/// Layer 0 is the pinning set, layer j holds the nodes at hop distance j.
/// `couplings[j]` is the block of the adjacency matrix with rows in layer j and
/// columns in layer j+1; `out_sums[j]` are its row sums (one entry per node of
/// layer j) and `in_sums[j]` its column sums (one per node of layer j+1).
struct LayeredPartition {
  std::vector<NodeSet> layers;
  std::vector<Matrix> couplings;
  std::vector<std::vector<double>> out_sums;
  std::vector<std::vector<double>> in_sums;

  /// Eccentricity of the pinning set: index of the last layer.
  std::size_t depth() const noexcept { return layers.empty() ? 0 : layers.size() - 1; }
  /// Concatenation of the layers: the node ordering that yields the banded form.
  std::vector<NodeId> ordering() const;
};

LayeredPartition layer_partition(const Graph& g, std::span<const NodeId> pins);

/// (n-1) / sum_j d(i, j). Requires a connected graph.
std::vector<double> closeness_centrality(const Graph& g);

/// Unnormalised shortest-path betweenness over unordered pairs, endpoints
/// excluded, all hop-shortest paths counted (Brandes accumulation).
std::vector<double> betweenness_centrality(const Graph& g);

/// Sorts and deduplicates; throws IndexOutOfRange for indices >= n.
NodeSet make_node_set(std::span<const NodeId> nodes, std::size_t n);

}  // namespace pinctl
