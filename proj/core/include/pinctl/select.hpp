#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pinctl/bounds.hpp"
#include "pinctl/graph.hpp"
#include "pinctl/matrix.hpp"
#include "pinctl/spectral.hpp"

namespace pinctl {

/// Default cap on the number of subsets optimal_select may enumerate.
inline constexpr std::uint64_t kDefaultSubsetBudget = 1'000'000;

struct SelectionResult {
  std::string method;
  std::vector<NodeId> pins;    // insertion order (greedy), rank order (baselines), ascending (optimal)
  std::vector<double> scores;  // per-step objective values (greedy / target modes)
  std::uint64_t evaluations = 0;
  double lambda_min = 0.0;     // lambda_min(L + g Z) of the final set
  double gain = 0.0;
  /// Absent when every node is pinned (the bounds do not apply there).
  std::optional<BoundsReport> report;

  NodeSet pin_set() const;
};

/// f_i = mu_u(P + i) + mu_l(P + i) - mean_{j in N \ (P + i)} d(i, j).
///
/// Throws FullSet when P + i would cover the whole network; greedy_select
/// scores that final step as 2g (both bounds are exact there) with no distance term.
double objective_f(const Graph& g, std::span<const NodeId> pins, NodeId candidate, double gain);
double objective_f(const Graph& g, const DistanceMatrix& dist, std::span<const NodeId> pins,
                   NodeId candidate, double gain);

/// Greedy maximisation of objective_f, one node per step, ties to the lowest
/// index. Performs exactly m0 (N - (m0 - 1) / 2) objective evaluations.
SelectionResult greedy_select(const Graph& g, std::size_t m0, double gain);

/// Smallest greedy set certified to reach lambda_min(L + g Z) >= mu_star,
/// starting from floor(mu_star) + 1 pins.
SelectionResult target_select(const Graph& g, double mu_star, double gain);

/// Exhaustive argmax of lambda_min over all m0-subsets; ties go to the
/// lexicographically smallest subset. Refuses with BudgetExceeded when
/// C(N, m0) > budget.
SelectionResult optimal_select(const Graph& g, std::size_t m0, double gain,
                               std::uint64_t budget = kDefaultSubsetBudget);

enum class Baseline { HighestDegree, LowestDegree, Closeness, Betweenness };

Baseline parse_baseline(std::string_view name);
std::string_view to_string(Baseline b) noexcept;

/// Top (or bottom, for LowestDegree) m0 nodes by the named score; ties go to
/// the lower index. `gain` only feeds the attached report.
SelectionResult baseline_select(const Graph& g, std::size_t m0, Baseline method, double gain);

/// C(n, k), saturating at UINT64_MAX.
std::uint64_t binomial(std::size_t n, std::size_t k);

/// lambda_min(I_N (x) F - (c L + Z G) (x) H_s) with H_s the symmetric part of H.
double phi(const Graph& g, const PinningPlan& plan, const SymmetricMatrix& f, const Matrix& h,
           double c = 1.0);

}  // namespace pinctl
