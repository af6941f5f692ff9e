#include "pinctl/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "pinctl/error.hpp"

namespace pinctl {

SymmetricMatrix::SymmetricMatrix(const Matrix& m) {
  if (!m.square() || m.rows() == 0) {
    throw Error(ErrorCode::DimensionMismatch, "symmetric matrix must be square and nonempty");
  }
  const std::size_t n = m.rows();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (!std::isfinite(m(i, j))) {
        throw Error(ErrorCode::NonFinite, "matrix entry (" + std::to_string(i) + ", " +
                                              std::to_string(j) + ") is not finite");
      }
      if (j > i && std::abs(m(i, j) - m(j, i)) > kSymmetryTolerance) {
        throw Error(ErrorCode::NotSymmetric, "matrix is not symmetric at (" + std::to_string(i) +
                                                 ", " + std::to_string(j) + ")");
      }
    }
  }
  m_ = m.symmetric_part();
}

namespace {

constexpr int kMaxSweeps = 100;

// Row-major square storage with a padded leading dimension. Rotations walk
// columns, and a power-of-two row stride maps a whole column onto a handful
// of cache sets.
class Padded {
 public:
  explicit Padded(std::size_t n) : ld_(n % 2 == 0 ? n + 1 : n), d_(n * ld_, 0.0) {}
  double& operator()(std::size_t i, std::size_t j) { return d_[i * ld_ + j]; }

 private:
  std::size_t ld_;
  std::vector<double> d_;
};

// Cyclic-by-row Jacobi on the n x n matrix held in `a`, which ends up diagonal;
// when `v` is non-null it accumulates the rotations.
void jacobi(std::size_t n, Padded& a, Padded* v) {
  double frob = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) frob += a(i, j) * a(i, j);
  // Off-diagonal entries below this floor cannot move any eigenvalue by more
  // than a few ulps of the norm; near-zero diagonals would otherwise never
  // satisfy the relative drop test and the sweeps churn through subnormals.
  const double floor = 1e-18 * std::sqrt(frob);

  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
    if (off <= floor * floor) return;

    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double app = a(p, p);
        const double aqq = a(q, q);
        const double guard = 100.0 * std::abs(apq);
        // Once the element no longer perturbs either diagonal entry it is
        // below working precision and can be dropped.
        if (std::abs(apq) < floor || (sweep > 3 && std::abs(app) + guard == std::abs(app) &&
                                      std::abs(aqq) + guard == std::abs(aqq))) {
          a(p, q) = 0.0;
          a(q, p) = 0.0;
          continue;
        }

        const double theta = (aqq - app) / (2.0 * apq);
        double t;
        if (std::abs(theta) > 1e150) {
          t = 0.5 / theta;
        } else {
          t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
          if (theta < 0.0) t = -t;
        }
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const double tau = s / (1.0 + c);

        a(p, p) = app - t * apq;
        a(q, q) = aqq + t * apq;
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        for (std::size_t r = 0; r < n; ++r) {
          if (r == p || r == q) continue;
          const double arp = a(r, p);
          const double arq = a(r, q);
          const double nrp = arp - s * (arq + arp * tau);
          const double nrq = arq + s * (arp - arq * tau);
          a(r, p) = nrp;
          a(p, r) = nrp;
          a(r, q) = nrq;
          a(q, r) = nrq;
        }
        if (v != nullptr) {
          for (std::size_t r = 0; r < n; ++r) {
            const double vrp = (*v)(r, p);
            const double vrq = (*v)(r, q);
            (*v)(r, p) = vrp - s * (vrq + vrp * tau);
            (*v)(r, q) = vrq + s * (vrp - vrq * tau);
          }
        }
      }
    }
  }
}

Padded pad(const Matrix& m) {
  Padded p(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) p(i, j) = m(i, j);
  return p;
}

}  // namespace

EigenDecomposition eigen_sym(const SymmetricMatrix& m) {
  const std::size_t n = m.order();
  Padded a = pad(m.matrix());
  Padded v(n);
  for (std::size_t i = 0; i < n; ++i) v(i, i) = 1.0;
  jacobi(n, a, &v);

  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t x, std::size_t y) { return a(x, x) < a(y, y); });

  EigenDecomposition out{std::vector<double>(n), Matrix(n, n)};
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = a(idx[k], idx[k]);
    for (std::size_t r = 0; r < n; ++r) out.vectors(r, k) = v(r, idx[k]);
  }
  return out;
}

std::vector<double> eigenvalues_sym(const SymmetricMatrix& m) {
  Padded a = pad(m.matrix());
  jacobi(m.order(), a, nullptr);
  std::vector<double> values(m.order());
  for (std::size_t i = 0; i < values.size(); ++i) values[i] = a(i, i);
  std::sort(values.begin(), values.end());
  return values;
}

double lambda_min(const SymmetricMatrix& m) { return eigenvalues_sym(m).front(); }
double lambda_max(const SymmetricMatrix& m) { return eigenvalues_sym(m).back(); }

Definiteness is_negative_definite(const SymmetricMatrix& m) {
  const double top = lambda_max(m);
  return {top < 0.0, top};
}

PinningPlan PinningPlan::uniform(std::size_t n, std::span<const NodeId> pins, double gain) {
  if (!pins.empty() && (!std::isfinite(gain) || gain <= 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "pinning gain must be positive");
  }
  NodeSet set = make_node_set(pins, n);
  std::vector<double> gains(n, 0.0);
  for (NodeId p : set) gains[p] = gain;
  return PinningPlan(std::move(set), std::move(gains));
}

PinningPlan PinningPlan::per_node(std::size_t n, std::span<const NodeId> pins,
                                  std::span<const double> gains) {
  if (pins.size() != gains.size()) {
    throw Error(ErrorCode::DimensionMismatch, "one gain per pinned node required");
  }
  std::vector<double> diag(n, 0.0);
  for (std::size_t k = 0; k < pins.size(); ++k) {
    if (pins[k] >= n) {
      throw Error(ErrorCode::IndexOutOfRange, "pinned node " + std::to_string(pins[k] + 1) +
                                                  " outside 1.." + std::to_string(n));
    }
    if (!std::isfinite(gains[k]) || gains[k] <= 0.0) {
      throw Error(ErrorCode::InvalidArgument, "pinning gains must be positive");
    }
    if (diag[pins[k]] != 0.0) {
      throw Error(ErrorCode::InvalidArgument,
                  "node " + std::to_string(pins[k] + 1) + " pinned twice");
    }
    diag[pins[k]] = gains[k];
  }
  return PinningPlan(make_node_set(pins, n), std::move(diag));
}

std::vector<int> PinningPlan::indicator() const {
  std::vector<int> z(gains_.size(), 0);
  for (NodeId p : pins_) z[p] = 1;
  return z;
}

Matrix pinned_matrix(const Graph& g, const PinningPlan& plan, double c) {
  if (plan.size() != g.size()) {
    throw Error(ErrorCode::DimensionMismatch, "pinning plan size does not match the graph");
  }
  Matrix m = laplacian(g) * c;
  for (NodeId i = 0; i < g.size(); ++i) m(i, i) += plan.gains()[i];
  return m;
}

double lambda_min_pinned(const Graph& g, const PinningPlan& plan, double c) {
  return lambda_min(SymmetricMatrix(pinned_matrix(g, plan, c)));
}

double lambda_min_pinned(const Graph& g, std::span<const NodeId> pins, double gain) {
  return lambda_min_pinned(g, PinningPlan::uniform(g.size(), pins, gain), 1.0);
}

}  // namespace pinctl
