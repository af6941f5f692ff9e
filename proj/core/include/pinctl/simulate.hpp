#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "pinctl/graph.hpp"

namespace pinctl {

/// Secondary voltage control scenario.
///
/// The controller u_i = -k (sum_j a_ij (v_i - v_j) + (g/k) z_i (v_i - v_ref))
/// gives error dynamics e' = -k (L + (g/k) Z) e with e = v - v_ref.
struct SimConfig {
  double k = 10.0;      // distributed controller gain
  double g = 100.0;     // pinning gain
  double v_ref = 380.0; // volts rms
  std::vector<double> e0;
  double dt = 1e-4;
  double t_end = 5.0;
  NodeSet pins;

  /// g / k, the gain multiplying Z once k is factored out.
  double effective_gain() const noexcept { return g / k; }
};

/// Uniform -10 V offset with +-2 V per-node uniform perturbation.
std::vector<double> default_initial_error(std::size_t n, std::uint64_t seed);

struct Trace {
  std::vector<double> times;
  std::vector<std::vector<double>> errors;
  std::vector<double> norms;
  double rate = 0.0;  // filled by simulate_secondary with estimate_rate(trace, 0.5)
};

/// Classical RK4 on e' = -(k L + g Z) e.
/// Throws StepTooLarge when dt * lambda_max(k L + g Z) > 2.5.
Trace simulate_secondary(const Graph& g, const SimConfig& cfg);

/// Negated least-squares slope of ln ||e(t)|| over the samples after
/// burn_in_fraction of the horizon.
double estimate_rate(const Trace& trace, double burn_in_fraction = 0.5);

/// k * lambda_min(L + (g/k) Z): the predicted asymptotic decay rate.
double predicted_rate(const Graph& g, const SimConfig& cfg);

/// Relay window: voltages must settle in [-5%, +10%] of v_ref by 0.30 s.
struct RelayCheck {
  bool trip = false;       // some node outside the band at some t >= deadline
  double settle_time = 0;  // earliest t after which all nodes stay inside the band
};

inline constexpr double kRelayDeadline = 0.30;
inline constexpr double kRelayLow = -0.05;
inline constexpr double kRelayHigh = 0.10;

RelayCheck relay_check(const Trace& trace, double v_ref, double deadline = kRelayDeadline);

/// CSV with header "t,e_1,...,e_N,norm", 12 significant digits, LF endings.
void write_trace_csv(std::ostream& out, const Trace& trace);

}  // namespace pinctl
