#pragma once

#include "saddle/hilbert.hpp"

#include <Eigen/Cholesky>

#include <optional>
#include <vector>

namespace saddle {

/// Ordered list of previously found solutions u_1..u_{n-1} spanning the
/// support space L, with their Gram matrix and G*u_i cached.
///
/// Immutable; copies share nothing mutable, so one instance can back any
/// number of concurrent solves.
class SupportSpace {
 public:
  static constexpr double kPivotFloor = 1e-12;

  /// The trivial support space {0}.
  explicit SupportSpace(const GridSpec& grid);

  /// Throws ConditioningError when the diagonally scaled Gram matrix has a
  /// Cholesky pivot or determinant below 1e-12.
  SupportSpace(std::vector<GridFunction> basis, const GramOperator& G);

  const GridSpec& grid() const { return grid_; }
  std::size_t size() const { return basis_.size(); }
  bool empty() const { return basis_.empty(); }
  const std::vector<GridFunction>& basis() const { return basis_; }
  const GridFunction& operator[](std::size_t i) const { return basis_[i]; }
  /// G * u_i.
  const GridFunction& applied(std::size_t i) const { return applied_[i]; }
  const Eigen::MatrixXd& gram() const { return gram_; }

  /// Solves gram() * c = b.
  Eigen::VectorXd solve(const Eigen::VectorXd& b) const;

  /// (u_i, v)_G for every basis element.
  Eigen::VectorXd project_coefficients(const GridFunction& v) const;

  /// Copy carrying v0's L-coefficients, used to report tau along a run.
  SupportSpace with_reference(const GridFunction& v0) const;
  const std::optional<Eigen::VectorXd>& reference() const { return reference_; }

  /// sum_i c[i] * u_i.
  GridFunction combine(const Eigen::VectorXd& c) const;

 private:
  GridSpec grid_;
  std::vector<GridFunction> basis_;
  std::vector<GridFunction> applied_;
  Eigen::MatrixXd gram_;
  Eigen::VectorXd scale_;
  Eigen::LLT<Eigen::MatrixXd> factor_;
  std::optional<Eigen::VectorXd> reference_;
  std::optional<GramOperator> op_;
};

}  // namespace saddle
