#include <doctest.h>

#include <algorithm>
#include <random>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "pinctl/error.hpp"
#include "pinctl/graph.hpp"

using namespace pinctl;
using pinctl::testing::floyd_warshall_hops;

namespace {

ErrorCode code_of(const auto& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected pinctl::Error");
  return ErrorCode::Parse;
}

}  // namespace

TEST_CASE("load_graph parses the two-node document") {
  const Graph g = load_graph(R"({"nodes":2,"edges":[[1,2,1.0]]})");
  CHECK(g.size() == 2);
  CHECK(g.degree(0) == 1.0);
  CHECK(g.degree(1) == 1.0);
  CHECK(g.weight(0, 1) == g.weight(1, 0));
}

TEST_CASE("load_graph honours index_base and default weights") {
  const Graph g = load_graph(R"({"nodes":3,"index_base":0,"edges":[[0,1],[1,2,2.5]]})");
  CHECK(g.weight(0, 1) == 1.0);
  CHECK(g.weight(2, 1) == 2.5);
  CHECK(g.degree(1) == 3.5);
  CHECK(g.hop_degree(1) == 2);
}

TEST_CASE("load_graph rejects malformed input with distinct codes") {
  CHECK(code_of([] { load_graph(R"({"nodes":3,"edges":[[1,2,1.0],[1,2,1.0]]})"); }) == ErrorCode::DuplicateEdge);
  CHECK(code_of([] { load_graph(R"({"nodes":3,"edges":[[1,2],[2,1]]})"); }) == ErrorCode::DuplicateEdge);
  CHECK(code_of([] { load_graph(R"({"nodes":3,"edges":[[1,4]]})"); }) == ErrorCode::IndexOutOfRange);
  CHECK(code_of([] { load_graph(R"({"nodes":3,"edges":[[0,1]]})"); }) == ErrorCode::IndexOutOfRange);
  CHECK(code_of([] { load_graph(R"({"nodes":3,"edges":[[1,2,0]]})"); }) == ErrorCode::NonPositiveWeight);
  CHECK(code_of([] { load_graph(R"({"nodes":3,"edges":[[1,2,-1]]})"); }) == ErrorCode::NonPositiveWeight);
  CHECK(code_of([] { load_graph(R"({"nodes":3,"edges":[[2,2]]})"); }) == ErrorCode::SelfLoop);
  CHECK(code_of([] { load_graph(R"({"nodes":3,"edges":[[1,2})"); }) == ErrorCode::Parse);
  CHECK(code_of([] { load_graph(R"({"edges":[]})"); }) == ErrorCode::Parse);
  CHECK(code_of([] { load_graph(R"({"nodes":3,"edges":[[1]]})"); }) == ErrorCode::Parse);
  CHECK(code_of([] { load_graph_file("/nonexistent/graph.json"); }) == ErrorCode::Parse);
}

TEST_CASE("fixture network realises the published degree sequence") {
  const Graph g = pinctl::testing::microgrid14();
  REQUIRE(g.size() == 14);
  const std::vector<double> expected{1, 7, 3, 4, 5, 4, 2, 4, 4, 5, 4, 5, 2, 8};
  CHECK(g.degrees() == expected);
  auto sorted = g.degrees();
  std::sort(sorted.begin(), sorted.end());
  CHECK(sorted == std::vector<double>{1, 2, 2, 3, 4, 4, 4, 4, 4, 5, 5, 5, 7, 8});
  CHECK(is_connected(g));
  CHECK(g.max_degree() == 8.0);
}

TEST_CASE("laplacian examples") {
  CHECK(laplacian(pinctl::testing::path_graph(2)) == Matrix{{1, -1}, {-1, 1}});
  CHECK(laplacian(pinctl::testing::complete_graph(3)) == Matrix{{2, -1, -1}, {-1, 2, -1}, {-1, -1, 2}});
  const Matrix l = laplacian(pinctl::testing::star_graph(4));
  for (std::size_t i = 0; i < 4; ++i) {
    double s = 0.0;
    for (double v : l.row(i)) s += v;
    CHECK(s == 0.0);
  }
}

TEST_CASE("laplacian is positive semidefinite with zero row sums") {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> gauss;
  for (int trial = 0; trial < 20; ++trial) {
    const Graph g = pinctl::testing::random_connected_graph(9, 0.4, rng, /*weighted=*/true);
    const Matrix l = laplacian(g);
    const auto ones = l.apply(std::vector<double>(9, 1.0));
    for (double v : ones) CHECK(std::abs(v) <= 1e-12);
    for (int k = 0; k < 50; ++k) {
      std::vector<double> x(9);
      for (double& v : x) v = gauss(rng);
      const auto lx = l.apply(x);
      double q = 0.0;
      for (std::size_t i = 0; i < 9; ++i) q += x[i] * lx[i];
      CHECK(q >= -1e-12);
    }
  }
}

TEST_CASE("is_connected") {
  CHECK(is_connected(pinctl::testing::path_graph(2)));
  CHECK_FALSE(is_connected(Graph(2, {})));
  CHECK(is_connected(Graph(1, {})));
}

TEST_CASE("hop_distances") {
  const DistanceMatrix d = hop_distances(pinctl::testing::path_graph(3));
  CHECK(d(0, 2) == 2);
  CHECK(d(1, 1) == 0);
  CHECK(code_of([] { hop_distances(Graph(3, {{0, 1, 1.0}})); }) == ErrorCode::Disconnected);

  SUBCASE("weights are ignored") {
    const DistanceMatrix w = hop_distances(Graph(3, {{0, 1, 5.0}, {1, 2, 0.1}, {0, 2, 9.0}}));
    CHECK(w(0, 2) == 1);
  }
}

TEST_CASE("hop_distances matches Floyd-Warshall and the triangle inequality") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    const Graph g = pinctl::testing::random_connected_graph(8, 0.35, rng);
    const DistanceMatrix d = hop_distances(g);
    const auto ref = floyd_warshall_hops(g);
    for (NodeId i = 0; i < 8; ++i) {
      for (NodeId j = 0; j < 8; ++j) {
        CHECK(d(i, j) == ref[i][j]);
        CHECK(d(i, j) == d(j, i));
        for (NodeId m = 0; m < 8; ++m) CHECK(d(i, j) <= d(i, m) + d(m, j));
      }
    }
  }
}

TEST_CASE("distance_to_set") {
  const Graph p3 = pinctl::testing::path_graph(3);
  CHECK(distance_to_set(p3, std::vector<NodeId>{0}) == std::vector<std::size_t>{0, 1, 2});
  CHECK(distance_to_set(p3, std::vector<NodeId>{0, 1, 2}) == std::vector<std::size_t>{0, 0, 0});
  CHECK(distance_to_set(pinctl::testing::star_graph(5), std::vector<NodeId>{0}) ==
        std::vector<std::size_t>{0, 1, 1, 1, 1});
  CHECK(code_of([&] { distance_to_set(p3, std::vector<NodeId>{}); }) == ErrorCode::EmptySet);
}

TEST_CASE("layer_partition on small graphs") {
  SUBCASE("path from one end") {
    const LayeredPartition lp = layer_partition(pinctl::testing::path_graph(3), std::vector<NodeId>{0});
    CHECK(lp.depth() == 2);
    CHECK(lp.layers == std::vector<NodeSet>{{0}, {1}, {2}});
    for (std::size_t j = 0; j < 2; ++j) {
      CHECK(lp.out_sums[j] == std::vector<double>{1.0});
      CHECK(lp.in_sums[j] == std::vector<double>{1.0});
    }
  }
  SUBCASE("star from the hub") {
    const LayeredPartition lp = layer_partition(pinctl::testing::star_graph(5), std::vector<NodeId>{0});
    CHECK(lp.depth() == 1);
    CHECK(lp.out_sums[0] == std::vector<double>{4.0});
    CHECK(lp.in_sums[0] == std::vector<double>{1, 1, 1, 1});
  }
  SUBCASE("errors") {
    const Graph p3 = pinctl::testing::path_graph(3);
    CHECK(code_of([&] { layer_partition(p3, std::vector<NodeId>{}); }) == ErrorCode::EmptySet);
    CHECK(code_of([] { layer_partition(Graph(3, {{0, 1, 1.0}}), std::vector<NodeId>{0}); }) ==
          ErrorCode::Disconnected);
  }
}

TEST_CASE("layer ordering gives a block-tridiagonal permutation of the Laplacian") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 25; ++trial) {
    const Graph g = pinctl::testing::random_connected_graph(10, 0.3, rng, /*weighted=*/true);
    const NodeSet pins = pinctl::testing::random_subset(10, 2, rng);
    const LayeredPartition lp = layer_partition(g, pins);
    const auto order = lp.ordering();
    REQUIRE(order.size() == 10);

    // Permutation matrix P with P(r, order[r]) = 1; the permuted Laplacian is P L P^T.
    Matrix perm(10, 10);
    for (std::size_t r = 0; r < 10; ++r) perm(r, order[r]) = 1.0;
    const Matrix l = laplacian(g);
    const Matrix permuted = perm * l * perm.transpose();

    std::vector<std::size_t> layer_of(10);
    for (std::size_t j = 0; j < lp.layers.size(); ++j)
      for (NodeId v : lp.layers[j]) layer_of[v] = j;

    const auto dist = distance_to_set(g, pins);
    for (NodeId v = 0; v < 10; ++v) CHECK(layer_of[v] == dist[v]);

    // Rebuild P L P^T block by block from the partition.
    Matrix rebuilt(10, 10);
    std::vector<std::size_t> pos(10);
    for (std::size_t r = 0; r < 10; ++r) pos[order[r]] = r;
    for (NodeId v = 0; v < 10; ++v) rebuilt(pos[v], pos[v]) = g.degree(v);
    for (std::size_t j = 0; j < lp.layers.size(); ++j) {
      const auto& layer = lp.layers[j];
      for (NodeId a : layer)
        for (NodeId b : layer)
          if (a != b) rebuilt(pos[a], pos[b]) = -g.weight(a, b);
      if (j + 1 < lp.layers.size()) {
        const Matrix& c = lp.couplings[j];
        const auto& next = lp.layers[j + 1];
        for (std::size_t r = 0; r < layer.size(); ++r) {
          double out = 0.0;
          for (std::size_t s = 0; s < next.size(); ++s) {
            rebuilt(pos[layer[r]], pos[next[s]]) = -c(r, s);
            rebuilt(pos[next[s]], pos[layer[r]]) = -c(r, s);
            out += c(r, s);
          }
          CHECK(lp.out_sums[j][r] == doctest::Approx(out));
        }
        for (std::size_t s = 0; s < next.size(); ++s) CHECK(lp.in_sums[j][s] > 0.0);
      }
    }
    CHECK(rebuilt == permuted);
  }
}

TEST_CASE("make_node_set") {
  CHECK(make_node_set(std::vector<NodeId>{3, 1, 3, 0}, 4) == NodeSet{0, 1, 3});
  CHECK(code_of([] { make_node_set(std::vector<NodeId>{4}, 4); }) == ErrorCode::IndexOutOfRange);
}
