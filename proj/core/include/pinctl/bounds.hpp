#pragma once

#include <cstddef>
#include <optional>
#include <span>

#include "pinctl/graph.hpp"

namespace pinctl {

/// Closed-form upper bound on lambda_min(L + g e_p e_p^T) for a single pinned
/// node of degree `degree` in an N-node connected network.
double upper_bound_single(std::size_t n, double degree, double gain);

struct SinglePinLimit {
  double ceiling;  // degree / (N - 1): no single pin can do better
  double approx;   // m g / (N m + (N - 1) g), accurate when g >> m or g << m
};

SinglePinLimit single_pin_limit(std::size_t n, double degree, double gain);

/// Graph statistics of a pinning set consumed by the multi-pin upper bound.
struct PinningSetStats {
  std::size_t n = 0;          // network size N
  std::size_t pinned = 0;     // m0
  double max_out = 0.0;       // largest pinned-node weight toward the unpinned nodes
  double total_out = 0.0;     // total weight of edges leaving the pinning set
  double sum_sq_out = 0.0;    // sum over pinned nodes of (out weight)^2
  double internal_ceiling = 0.0;  // upper bound on lambda_max of the pinned-set Laplacian
};

PinningSetStats pinning_set_stats(const Graph& g, std::span<const NodeId> pins);

/// Multi-pin closed-form upper bound.
///
/// Solves (S - (N - m0) mu)(g + d_max + c0 - mu) = Q for its smaller root,
/// where S is the edge weight leaving the set, Q the sum of squared pinned-node
/// out-weights and c0 a ceiling on lambda_max of the Laplacian induced on the
/// pinning set. c0 = min(m0 * w_max, 2 * max internal degree), which is 0 for a
/// single pin and for sets without internal edges.
double upper_bound_multi(const PinningSetStats& stats, double gain);
double upper_bound_multi(const Graph& g, std::span<const NodeId> pins, double gain);

/// Largest mu such that the layered recursion
///   a_k(mu) = min in_k-1 - mu
///   a_j(mu) = min in_j-1 + min out_j - mu - max in_j * max out_j / a_j+1(mu)
///   a_0(mu) = g + min out_0 - mu - max in_0 * max out_0 / a_1(mu)
/// stays positive on [0, mu). Returns 0 when some a_j(0) <= 0.
double lower_bound(const Graph& g, std::span<const NodeId> pins, double gain);
double lower_bound(const LayeredPartition& layers, double gain);

/// Evaluates the recursion at mu. Returns nullopt when some a_j(mu) <= 0.
std::optional<double> lower_bound_chain(const LayeredPartition& layers, double gain, double mu);

/// floor(mu) + 1: no set of fewer nodes can reach connectivity mu.
std::size_t pin_count_ceiling(double mu);

/// Bounds and diagnostics for one pinning set.
struct BoundsReport {
  NodeSet pins;
  double gain = 0.0;
  double mu_l = 0.0;
  double mu_u = 0.0;
  std::optional<double> mu_exact;
  std::size_t depth = 0;   // eccentricity of the pinning set
  double mean_dist = 0.0;  // mean over unpinned j of d(j, P)

  /// mu_u + mu_l - mean_dist
  double objective() const noexcept { return mu_u + mu_l - mean_dist; }
};

/// Throws Error(FullSet) when every node is pinned (lambda_min is exactly g).
BoundsReport bounds_report(const Graph& g, std::span<const NodeId> pins, double gain,
                           bool with_exact = true);

}  // namespace pinctl
