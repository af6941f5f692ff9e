#include "pinctl/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pinctl/error.hpp"
#include "pinctl/spectral.hpp"

namespace pinctl {

namespace {

void require_gain(double gain) {
  if (!std::isfinite(gain) || gain <= 0.0) {
    throw Error(ErrorCode::InvalidArgument, "pinning gain must be positive, got " + std::to_string(gain));
  }
}

double min_of(const std::vector<double>& v) { return *std::min_element(v.begin(), v.end()); }
double max_of(const std::vector<double>& v) { return *std::max_element(v.begin(), v.end()); }

// Smaller root of x^2 - sum x + product = 0 given the larger root, via
// Vieta's product. Avoids cancellation when the roots differ by orders of
// magnitude (g >> degree).
double smaller_root(double product, double larger) { return product / larger; }

[[noreturn]] void throw_full_set() {
  throw Error(ErrorCode::FullSet,
              "every node is pinned: lambda_min(L + g I) equals g exactly; "
              "use the exact eigenvalue instead of the bound");
}

}  // namespace

double upper_bound_single(std::size_t n, double degree, double gain) {
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "single-pin bound needs N >= 2");
  if (!(degree >= 1.0) || degree > static_cast<double>(n - 1)) {
    throw Error(ErrorCode::InvalidArgument,
                "pinned-node degree must lie in [1, N-1], got " + std::to_string(degree));
  }
  require_gain(gain);

  const double a = degree / static_cast<double>(n - 1);
  const double sum = degree + gain + a;
  const double disc = 1.0 - 4.0 * a * gain / (sum * sum);
  const double larger = 0.5 * sum * (1.0 + std::sqrt(disc));
  return smaller_root(a * gain, larger);
}

SinglePinLimit single_pin_limit(std::size_t n, double degree, double gain) {
  // Shares the argument contract with upper_bound_single.
  (void)upper_bound_single(n, degree, gain);
  const double nn = static_cast<double>(n);
  return {degree / (nn - 1.0), degree * gain / (nn * degree + (nn - 1.0) * gain)};
}

PinningSetStats pinning_set_stats(const Graph& g, std::span<const NodeId> pins) {
  const NodeSet set = make_node_set(pins, g.size());
  if (set.empty()) throw Error(ErrorCode::EmptySet, "pinning set is empty");
  if (!is_connected(g)) throw Error(ErrorCode::Disconnected, "bounds require a connected graph");

  std::vector<char> pinned(g.size(), 0);
  for (NodeId p : set) pinned[p] = 1;

  PinningSetStats s;
  s.n = g.size();
  s.pinned = set.size();
  double w_max_internal = 0.0;
  double max_internal_degree = 0.0;
  for (NodeId p : set) {
    double out = 0.0;
    double internal = 0.0;
    for (NodeId j : g.neighbors(p)) {
      const double w = g.weight(p, j);
      if (pinned[j]) {
        internal += w;
        w_max_internal = std::max(w_max_internal, w);
      } else {
        out += w;
      }
    }
    s.max_out = std::max(s.max_out, out);
    s.total_out += out;
    s.sum_sq_out += out * out;
    max_internal_degree = std::max(max_internal_degree, internal);
  }
  s.internal_ceiling = std::min(static_cast<double>(s.pinned) * w_max_internal,
                                2.0 * max_internal_degree);
  return s;
}

double upper_bound_multi(const PinningSetStats& s, double gain) {
  require_gain(gain);
  if (s.pinned == 0) throw Error(ErrorCode::EmptySet, "pinning set is empty");
  if (s.pinned >= s.n) throw_full_set();

  const double rest = static_cast<double>(s.n - s.pinned);
  const double cap = gain + s.max_out + s.internal_ceiling;
  const double mid = (rest * cap + s.total_out) / (2.0 * rest);
  const double half_gap = (rest * cap - s.total_out) / (2.0 * rest);
  const double radius = std::sqrt(half_gap * half_gap + s.sum_sq_out / rest);
  const double product = (s.total_out * cap - s.sum_sq_out) / rest;
  return smaller_root(product, mid + radius);
}

double upper_bound_multi(const Graph& g, std::span<const NodeId> pins, double gain) {
  return upper_bound_multi(pinning_set_stats(g, pins), gain);
}

std::optional<double> lower_bound_chain(const LayeredPartition& lp, double gain, double mu) {
  const std::size_t k = lp.depth();
  if (k == 0) {
    const double a0 = gain - mu;
    return a0 > 0.0 ? std::optional<double>(a0) : std::nullopt;
  }

  double a = min_of(lp.in_sums[k - 1]) - mu;
  if (a <= 0.0) return std::nullopt;
  for (std::size_t j = k - 1; j >= 1; --j) {
    a = min_of(lp.in_sums[j - 1]) + min_of(lp.out_sums[j]) - mu -
        max_of(lp.in_sums[j]) * max_of(lp.out_sums[j]) / a;
    if (a <= 0.0) return std::nullopt;
  }
  a = gain + min_of(lp.out_sums[0]) - mu - max_of(lp.in_sums[0]) * max_of(lp.out_sums[0]) / a;
  if (a <= 0.0) return std::nullopt;
  return a;
}

double lower_bound(const LayeredPartition& lp, double gain) {
  require_gain(gain);
  if (!lower_bound_chain(lp, gain, 0.0)) return 0.0;

  // Every a_j is decreasing in mu, so the feasible set is [0, mu_l).
  double max_coupling = 0.0;
  for (const auto& out : lp.out_sums) max_coupling = std::max(max_coupling, max_of(out));
  for (const auto& in : lp.in_sums) max_coupling = std::max(max_coupling, max_of(in));
  double lo = 0.0;
  double hi = gain + max_coupling;
  for (int step = 0; step < 64; ++step) {
    const double mid = 0.5 * (lo + hi);
    if (lower_bound_chain(lp, gain, mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

double lower_bound(const Graph& g, std::span<const NodeId> pins, double gain) {
  require_gain(gain);
  return lower_bound(layer_partition(g, pins), gain);
}

std::size_t pin_count_ceiling(double mu) {
  if (!std::isfinite(mu) || mu < 0.0) {
    throw Error(ErrorCode::InvalidArgument, "connectivity target must be a finite nonnegative number");
  }
  return static_cast<std::size_t>(std::floor(mu)) + 1;
}

BoundsReport bounds_report(const Graph& g, std::span<const NodeId> pins, double gain,
                           bool with_exact) {
  BoundsReport r;
  r.pins = make_node_set(pins, g.size());
  if (r.pins.empty()) throw Error(ErrorCode::EmptySet, "pinning set is empty");
  if (r.pins.size() == g.size()) throw_full_set();
  r.gain = gain;

  const LayeredPartition lp = layer_partition(g, r.pins);
  r.mu_u = upper_bound_multi(g, r.pins, gain);
  r.mu_l = lower_bound(lp, gain);
  r.depth = lp.depth();

  std::size_t total = 0;
  for (std::size_t j = 1; j < lp.layers.size(); ++j) total += j * lp.layers[j].size();
  r.mean_dist = static_cast<double>(total) / static_cast<double>(g.size() - r.pins.size());

  if (with_exact) r.mu_exact = lambda_min_pinned(g, r.pins, gain);
  return r;
}

}  // namespace pinctl
