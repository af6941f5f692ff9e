#pragma once

#include <cstddef>
#include <optional>

#include "pinctl/graph.hpp"
#include "pinctl/matrix.hpp"
#include "pinctl/spectral.hpp"

namespace pinctl {

struct StabilityCertificate {
  bool stable = false;
  /// max_i lambda_max(F - mu_i H_s) over the eigenvalues mu_i of c L + Z G.
  double worst_margin = 0.0;
  /// Index (ascending order) of the worst mu_i; set only when unstable.
  std::optional<std::size_t> worst_mode;
  /// min_i (mu_i lambda_min(H_s) - lambda_max(F)) when stable, else 0.
  /// A conservative exponential rate, not the exact decay rate.
  double rate_bound = 0.0;
};

/// Sufficient condition for the pinned error dynamics to converge to zero:
/// F - mu_i H_s negative definite for every eigenvalue mu_i of c L + Z G.
/// F must be positive semidefinite; H is symmetrised internally.
StabilityCertificate check_stability(const SymmetricMatrix& f, const Matrix& h, double c,
                                     const Graph& g, const PinningPlan& plan);

/// Uniform gain (alpha + lambda_max(F)) / lambda_min(H_s) that, with every
/// node pinned, guarantees convergence rate at least alpha.
double design_uniform_gain(const SymmetricMatrix& f, const Matrix& h, double alpha);

}  // namespace pinctl
