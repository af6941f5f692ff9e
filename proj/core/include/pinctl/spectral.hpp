#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "pinctl/graph.hpp"
#include "pinctl/matrix.hpp"

namespace pinctl {

/// Absolute tolerance for |M(i,j) - M(j,i)| accepted as symmetric.
inline constexpr double kSymmetryTolerance = 1e-12;

/// Real symmetric matrix with finite entries.
///
/// The constructor checks symmetry within kSymmetryTolerance and stores the
/// exactly symmetrised (M + M^T) / 2.
class SymmetricMatrix {
 public:
  explicit SymmetricMatrix(const Matrix& m);

  std::size_t order() const noexcept { return m_.rows(); }
  const Matrix& matrix() const noexcept { return m_; }
  double operator()(std::size_t i, std::size_t j) const { return m_(i, j); }

 private:
  Matrix m_;
};

struct EigenDecomposition {
  std::vector<double> values;  // ascending
  Matrix vectors;              // column k pairs with values[k]
};

/// Full spectrum, ascending. Cyclic Jacobi rotations with a fixed sweep order,
/// so identical inputs give bitwise-identical output.
std::vector<double> eigenvalues_sym(const SymmetricMatrix& m);
EigenDecomposition eigen_sym(const SymmetricMatrix& m);

double lambda_min(const SymmetricMatrix& m);
double lambda_max(const SymmetricMatrix& m);

struct Definiteness {
  bool holds;
  double margin;  // lambda_max for negative definiteness, lambda_min for PSD checks
};

/// holds iff lambda_max(M) < 0.
Definiteness is_negative_definite(const SymmetricMatrix& m);

/// Where the reference is injected and how strongly.
///
/// Invariant: indicator[i] == 1 iff i is in pins; gains are strictly positive
/// on pins and zero elsewhere.
class PinningPlan {
 public:
  static PinningPlan uniform(std::size_t n, std::span<const NodeId> pins, double gain);
  static PinningPlan per_node(std::size_t n, std::span<const NodeId> pins,
                              std::span<const double> gains);
  static PinningPlan none(std::size_t n) { return uniform(n, {}, 1.0); }

  std::size_t size() const noexcept { return gains_.size(); }
  const NodeSet& pins() const noexcept { return pins_; }
  /// Diagonal of Z G.
  const std::vector<double>& gains() const noexcept { return gains_; }
  std::vector<int> indicator() const;

 private:
  PinningPlan(NodeSet pins, std::vector<double> gains)
      : pins_(std::move(pins)), gains_(std::move(gains)) {}

  NodeSet pins_;
  std::vector<double> gains_;
};

/// c L + Z G
Matrix pinned_matrix(const Graph& g, const PinningPlan& plan, double c = 1.0);

/// lambda_min(c L + Z G).
double lambda_min_pinned(const Graph& g, const PinningPlan& plan, double c = 1.0);

/// Convenience for the uniform-gain case lambda_min(L + g Z_P).
double lambda_min_pinned(const Graph& g, std::span<const NodeId> pins, double gain);

}  // namespace pinctl
