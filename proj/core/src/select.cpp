#include "pinctl/select.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "pinctl/error.hpp"

namespace pinctl {

namespace {

// Relative slack under which two objective or eigenvalue values count as tied.
// Permutation-equivalent candidates can differ in the last few bits.
constexpr double kTieTolerance = 1e-12;

bool strictly_better(double candidate, double incumbent) {
  return candidate > incumbent + kTieTolerance * std::max(1.0, std::abs(incumbent));
}

void require_connected(const Graph& g) {
  if (!is_connected(g)) throw Error(ErrorCode::Disconnected, "pinning selection requires a connected graph");
}

void require_gain(double gain) {
  if (!std::isfinite(gain) || gain <= 0.0) {
    throw Error(ErrorCode::InvalidArgument, "pinning gain must be positive");
  }
}

void finish(const Graph& g, SelectionResult& r) {
  const NodeSet set = r.pin_set();
  r.lambda_min = lambda_min_pinned(g, set, r.gain);
  if (set.size() < g.size()) {
    BoundsReport rep = bounds_report(g, set, r.gain, /*with_exact=*/false);
    rep.mu_exact = r.lambda_min;
    r.report = std::move(rep);
  } else {
    r.report.reset();
  }
}

// Adds argmax-f nodes until `pins` holds `target` nodes.
void greedy_extend(const Graph& g, const DistanceMatrix& dist, std::size_t target, double gain,
                   SelectionResult& r) {
  const std::size_t n = g.size();
  std::vector<char> pinned(n, 0);
  for (NodeId p : r.pins) pinned[p] = 1;

  while (r.pins.size() < target) {
    NodeId best = n;
    double best_f = -std::numeric_limits<double>::infinity();
    const bool last = r.pins.size() + 1 == n;
    for (NodeId i = 0; i < n; ++i) {
      if (pinned[i]) continue;
      ++r.evaluations;
      // Pinning the final node: both bounds collapse to the exact value g and
      // no unpinned node remains for the distance term.
      const double f = last ? 2.0 * gain : objective_f(g, dist, r.pins, i, gain);
      if (best == n || strictly_better(f, best_f)) {
        best = i;
        best_f = f;
      }
    }
    r.pins.push_back(best);
    r.scores.push_back(best_f);
    pinned[best] = 1;
  }
}

}  // namespace

NodeSet SelectionResult::pin_set() const {
  NodeSet s(pins.begin(), pins.end());
  std::sort(s.begin(), s.end());
  return s;
}

double objective_f(const Graph& g, const DistanceMatrix& dist, std::span<const NodeId> pins,
                   NodeId candidate, double gain) {
  const std::size_t n = g.size();
  if (candidate >= n) {
    throw Error(ErrorCode::IndexOutOfRange, "candidate node " + std::to_string(candidate + 1) +
                                                " outside 1.." + std::to_string(n));
  }
  if (std::find(pins.begin(), pins.end(), candidate) != pins.end()) {
    throw Error(ErrorCode::InvalidArgument,
                "candidate node " + std::to_string(candidate + 1) + " is already pinned");
  }
  NodeSet set(pins.begin(), pins.end());
  set.push_back(candidate);
  set = make_node_set(set, n);
  if (set.size() == n) {
    throw Error(ErrorCode::FullSet,
                "pinning node " + std::to_string(candidate + 1) + " would leave no unpinned node");
  }

  const double mu_u = upper_bound_multi(g, set, gain);
  const double mu_l = lower_bound(g, set, gain);

  std::vector<char> in_set(n, 0);
  for (NodeId p : set) in_set[p] = 1;
  std::size_t total = 0;
  for (NodeId j = 0; j < n; ++j) {
    if (!in_set[j]) total += dist(candidate, j);
  }
  const double mean = static_cast<double>(total) / static_cast<double>(n - set.size());
  return mu_u + mu_l - mean;
}

double objective_f(const Graph& g, std::span<const NodeId> pins, NodeId candidate, double gain) {
  return objective_f(g, hop_distances(g), pins, candidate, gain);
}

SelectionResult greedy_select(const Graph& g, std::size_t m0, double gain) {
  require_gain(gain);
  require_connected(g);
  if (m0 < 1 || m0 >= g.size()) {
    throw Error(ErrorCode::InvalidArgument, "greedy selection needs 1 <= m0 <= N-1, got m0 = " +
                                                std::to_string(m0) + ", N = " + std::to_string(g.size()));
  }
  SelectionResult r;
  r.method = "greedy";
  r.gain = gain;
  greedy_extend(g, hop_distances(g), m0, gain, r);
  finish(g, r);
  return r;
}

SelectionResult target_select(const Graph& g, double mu_star, double gain) {
  require_gain(gain);
  if (!std::isfinite(mu_star) || mu_star <= 0.0) {
    throw Error(ErrorCode::InvalidArgument, "target connectivity must be positive");
  }
  if (mu_star >= gain) {
    throw Error(ErrorCode::Infeasible,
                "target connectivity " + std::to_string(mu_star) + " is not below the gain " +
                    std::to_string(gain) + "; even pinning every node gives exactly g");
  }
  require_connected(g);

  SelectionResult r;
  r.method = "greedy-target";
  r.gain = gain;
  const DistanceMatrix dist = hop_distances(g);
  // Greedy sets are nested, so growing one set is the same as rerunning the
  // greedy pass for each candidate size.
  std::size_t size = std::min(pin_count_ceiling(mu_star), g.size());
  greedy_extend(g, dist, size, gain, r);
  while (lambda_min_pinned(g, r.pin_set(), gain) < mu_star) {
    greedy_extend(g, dist, ++size, gain, r);
  }
  finish(g, r);
  return r;
}

std::uint64_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t acc = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    const std::uint64_t factor = n - k + i;
    // acc * factor is always divisible by i; saturate before it can overflow.
    if (acc > kMax / factor) return kMax;
    acc = acc * factor / i;
  }
  return acc;
}

SelectionResult optimal_select(const Graph& g, std::size_t m0, double gain, std::uint64_t budget) {
  require_gain(gain);
  require_connected(g);
  const std::size_t n = g.size();
  if (m0 < 1 || m0 > n) {
    throw Error(ErrorCode::InvalidArgument, "optimal selection needs 1 <= m0 <= N");
  }
  const std::uint64_t count = binomial(n, m0);
  if (count > budget) {
    throw Error(ErrorCode::BudgetExceeded,
                "exhaustive search over C(" + std::to_string(n) + ", " + std::to_string(m0) + ") = " +
                    std::to_string(count) + " subsets exceeds the budget of " + std::to_string(budget));
  }

  SelectionResult r;
  r.method = "optimal";
  r.gain = gain;

  const Matrix base = laplacian(g);
  std::vector<NodeId> subset(m0);
  std::iota(subset.begin(), subset.end(), 0);
  double best = -std::numeric_limits<double>::infinity();
  while (true) {
    Matrix m = base;
    for (NodeId p : subset) m(p, p) += gain;
    const double lam = lambda_min(SymmetricMatrix(m));
    ++r.evaluations;
    if (r.pins.empty() || strictly_better(lam, best)) {
      best = lam;
      r.pins = subset;
    }
    // Next combination in lexicographic order.
    std::size_t i = m0;
    while (i > 0 && subset[i - 1] == n - m0 + i - 1) --i;
    if (i == 0) break;
    ++subset[i - 1];
    for (std::size_t j = i; j < m0; ++j) subset[j] = subset[j - 1] + 1;
  }
  finish(g, r);
  return r;
}

Baseline parse_baseline(std::string_view name) {
  if (name == "highest-degree") return Baseline::HighestDegree;
  if (name == "lowest-degree") return Baseline::LowestDegree;
  if (name == "closeness") return Baseline::Closeness;
  if (name == "betweenness") return Baseline::Betweenness;
  throw Error(ErrorCode::InvalidArgument,
              "unknown baseline method '" + std::string(name) +
                  "' (expected highest-degree, lowest-degree, closeness or betweenness)");
}

std::string_view to_string(Baseline b) noexcept {
  switch (b) {
    case Baseline::HighestDegree: return "highest-degree";
    case Baseline::LowestDegree: return "lowest-degree";
    case Baseline::Closeness: return "closeness";
    case Baseline::Betweenness: return "betweenness";
  }
  return "unknown";
}

SelectionResult baseline_select(const Graph& g, std::size_t m0, Baseline method, double gain) {
  require_gain(gain);
  require_connected(g);
  const std::size_t n = g.size();
  if (m0 < 1 || m0 > n) throw Error(ErrorCode::InvalidArgument, "baseline selection needs 1 <= m0 <= N");

  std::vector<double> score;
  switch (method) {
    case Baseline::HighestDegree: score = g.degrees(); break;
    case Baseline::LowestDegree:
      score = g.degrees();
      for (double& s : score) s = -s;
      break;
    case Baseline::Closeness: score = closeness_centrality(g); break;
    case Baseline::Betweenness: score = betweenness_centrality(g); break;
  }
  // Quantise so that scores equal up to rounding noise tie exactly.
  for (double& s : score) s = std::round(s * 1e9) / 1e9;

  std::vector<NodeId> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](NodeId a, NodeId b) { return score[a] > score[b]; });

  SelectionResult r;
  r.method = std::string(to_string(method));
  r.gain = gain;
  r.pins.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(m0));
  r.evaluations = n;
  finish(g, r);
  return r;
}

double phi(const Graph& g, const PinningPlan& plan, const SymmetricMatrix& f, const Matrix& h,
           double c) {
  if (!h.square() || h.rows() != f.order()) {
    throw Error(ErrorCode::DimensionMismatch, "F and H must be square matrices of equal order");
  }
  const Matrix coupling = pinned_matrix(g, plan, c);
  const Matrix m = kron(Matrix::identity(g.size()), f.matrix()) - kron(coupling, h.symmetric_part());
  return lambda_min(SymmetricMatrix(m));
}

}  // namespace pinctl
