#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "pinctl/graph.hpp"

namespace pinctl::testing {

inline std::string data_path(const std::string& name) { return std::string(PINCTL_DATA_DIR) + "/" + name; }

/// 14-node network with degree sequence {1,7,3,4,5,4,2,4,4,5,4,5,2,8} (nodes 1..14).
inline Graph microgrid14() { return load_graph_file(data_path("microgrid14.json")); }

inline Graph path_graph(std::size_t n, double w = 1.0) {
  std::vector<Edge> e;
  for (NodeId i = 0; i + 1 < n; ++i) e.push_back({i, i + 1, w});
  return Graph(n, std::move(e));
}

/// Hub is node 0.
inline Graph star_graph(std::size_t n) {
  std::vector<Edge> e;
  for (NodeId i = 1; i < n; ++i) e.push_back({0, i, 1.0});
  return Graph(n, std::move(e));
}

inline Graph complete_graph(std::size_t n) {
  std::vector<Edge> e;
  for (NodeId i = 0; i < n; ++i)
    for (NodeId j = i + 1; j < n; ++j) e.push_back({i, j, 1.0});
  return Graph(n, std::move(e));
}

/// Erdos-Renyi G(n, p) conditioned on connectivity (rejection sampling).
inline Graph random_connected_graph(std::size_t n, double p, std::mt19937_64& rng,
                                    bool weighted = false) {
  std::bernoulli_distribution coin(p);
  std::uniform_real_distribution<double> weight(0.5, 2.0);
  while (true) {
    std::vector<Edge> e;
    for (NodeId i = 0; i < n; ++i)
      for (NodeId j = i + 1; j < n; ++j)
        if (coin(rng)) e.push_back({i, j, weighted ? weight(rng) : 1.0});
    Graph g(n, std::move(e));
    if (is_connected(g)) return g;
  }
}

/// Uniform random k-subset of {0..n-1}, sorted.
inline NodeSet random_subset(std::size_t n, std::size_t k, std::mt19937_64& rng) {
  std::vector<NodeId> all(n);
  for (NodeId i = 0; i < n; ++i) all[i] = i;
  std::shuffle(all.begin(), all.end(), rng);
  NodeSet s(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(k));
  std::sort(s.begin(), s.end());
  return s;
}

}  // namespace pinctl::testing
