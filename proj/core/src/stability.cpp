#include "pinctl/stability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pinctl/error.hpp"

namespace pinctl {

namespace {

void require_same_order(const SymmetricMatrix& f, const Matrix& h) {
  if (!h.square() || h.rows() != f.order()) {
    throw Error(ErrorCode::DimensionMismatch, "F and H must be square matrices of equal order");
  }
}

}  // namespace

StabilityCertificate check_stability(const SymmetricMatrix& f, const Matrix& h, double c,
                                     const Graph& g, const PinningPlan& plan) {
  require_same_order(f, h);
  if (!std::isfinite(c) || c <= 0.0) throw Error(ErrorCode::InvalidArgument, "coupling strength c must be positive");
  const auto f_spec = eigenvalues_sym(f);
  if (f_spec.front() < -1e-10 * (1.0 + f.matrix().norm_inf())) {
    throw Error(ErrorCode::NotPositiveSemidefinite,
                "F must be positive semidefinite (one-sided Lipschitz bound on the node dynamics)");
  }
  if (!is_connected(g)) throw Error(ErrorCode::Disconnected, "stability certificate requires a connected graph");

  const SymmetricMatrix hs(h.symmetric_part());
  const auto modes = eigenvalues_sym(SymmetricMatrix(pinned_matrix(g, plan, c)));

  StabilityCertificate cert;
  cert.worst_margin = -std::numeric_limits<double>::infinity();
  std::size_t worst = 0;
  for (std::size_t i = 0; i < modes.size(); ++i) {
    const double margin = lambda_max(SymmetricMatrix(f.matrix() - hs.matrix() * modes[i]));
    if (margin > cert.worst_margin) {
      cert.worst_margin = margin;
      worst = i;
    }
  }
  // A margin within rounding of zero is a kernel mode (e.g. no pins), not a stable one.
  const double scale = 1.0 + f.matrix().norm_inf() + (modes.back() + std::abs(modes.front())) * hs.matrix().norm_inf();
  if (std::abs(cert.worst_margin) <= 1e-12 * scale) cert.worst_margin = 0.0;
  cert.stable = cert.worst_margin < 0.0;
  if (!cert.stable) {
    cert.worst_mode = worst;
    return cert;
  }

  const double h_min = lambda_min(hs);
  const double f_max = f_spec.back();
  double rate = std::numeric_limits<double>::infinity();
  for (double mu : modes) rate = std::min(rate, mu * h_min - f_max);
  cert.rate_bound = std::max(0.0, rate);
  return cert;
}

double design_uniform_gain(const SymmetricMatrix& f, const Matrix& h, double alpha) {
  require_same_order(f, h);
  if (!std::isfinite(alpha) || alpha <= 0.0) {
    throw Error(ErrorCode::InvalidArgument, "desired convergence rate must be positive");
  }
  const double h_min = lambda_min(SymmetricMatrix(h.symmetric_part()));
  if (h_min <= 0.0) {
    throw Error(ErrorCode::NotPositiveDefinite, "symmetric part of H must be positive definite");
  }
  const double gain = (alpha + lambda_max(f)) / h_min;
  if (gain <= 0.0) {
    throw Error(ErrorCode::NotPositiveSemidefinite, "F must be positive semidefinite");
  }
  return gain;
}

}  // namespace pinctl
