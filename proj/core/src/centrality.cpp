#include <queue>
#include <stack>
#include <vector>

#include "pinctl/error.hpp"
#include "pinctl/graph.hpp"

namespace pinctl {

std::vector<double> closeness_centrality(const Graph& g) {
  const std::size_t n = g.size();
  const DistanceMatrix d = hop_distances(g);
  std::vector<double> c(n, 0.0);
  if (n == 1) return c;
  for (NodeId i = 0; i < n; ++i) {
    std::size_t total = 0;
    for (NodeId j = 0; j < n; ++j) total += d(i, j);
    c[i] = static_cast<double>(n - 1) / static_cast<double>(total);
  }
  return c;
}

std::vector<double> betweenness_centrality(const Graph& g) {
  if (!is_connected(g)) throw Error(ErrorCode::Disconnected, "betweenness requires a connected graph");
  const std::size_t n = g.size();
  std::vector<double> bc(n, 0.0);

  std::vector<std::vector<NodeId>> preds(n);
  std::vector<double> sigma(n);
  std::vector<long long> dist(n);
  std::vector<double> delta(n);

  for (NodeId s = 0; s < n; ++s) {
    for (auto& p : preds) p.clear();
    std::fill(sigma.begin(), sigma.end(), 0.0);
    std::fill(dist.begin(), dist.end(), -1);
    std::fill(delta.begin(), delta.end(), 0.0);

    std::stack<NodeId> order;
    std::queue<NodeId> q;
    sigma[s] = 1.0;
    dist[s] = 0;
    q.push(s);
    while (!q.empty()) {
      const NodeId v = q.front();
      q.pop();
      order.push(v);
      for (NodeId w : g.neighbors(v)) {
        if (dist[w] < 0) {
          dist[w] = dist[v] + 1;
          q.push(w);
        }
        if (dist[w] == dist[v] + 1) {
          sigma[w] += sigma[v];
          preds[w].push_back(v);
        }
      }
    }
    while (!order.empty()) {
      const NodeId w = order.top();
      order.pop();
      for (NodeId v : preds[w]) delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
      if (w != s) bc[w] += delta[w];
    }
  }
  // Each unordered pair was visited from both endpoints.
  for (double& b : bc) b *= 0.5;
  return bc;
}

}  // namespace pinctl
