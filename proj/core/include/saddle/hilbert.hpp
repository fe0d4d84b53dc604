#pragma once

#include "saddle/grid.hpp"

#include <Eigen/SparseCore>

#include <memory>
#include <vector>

namespace saddle {

class SupportSpace;

/// Symmetric positive-definite sparse operator G realizing the inner product
/// (u, v)_G = u^T G v on grid functions, together with a cached factorization
/// for G^{-1}.
///
/// Copies share the factorization; apply() and solve() are const and
/// reentrant. Grids above `kIterativeThreshold` nodes use preconditioned CG
/// (relative tolerance 1e-12) instead of sparse Cholesky.
class GramOperator {
 public:
  static constexpr std::size_t kIterativeThreshold = 1'000'000;

  /// Throws SolverError if `matrix` is not positive definite.
  GramOperator(const GridSpec& grid, Eigen::SparseMatrix<double> matrix);

  const GridSpec& grid() const { return grid_; }
  const Eigen::SparseMatrix<double>& matrix() const;

  /// u^T G v accumulated in extended precision from edge differences, so
  /// energies resolve changes far below the rounding level of u . (G v).
  double form(const Eigen::VectorXd& u, const Eigen::VectorXd& v) const;

  GridFunction apply(const GridFunction& u) const;
  GridFunction solve(const GridFunction& rhs) const;

 private:
  struct State;
  GridSpec grid_;
  std::shared_ptr<const State> state_;
};

/// (u, v)_G. Throws DimensionError on grid mismatch.
double inner(const GridFunction& u, const GridFunction& v, const GramOperator& G);
double norm(const GridFunction& u, const GramOperator& G);

/// A grid function with unit Gram norm. Construction renormalizes until
/// | ||v||_G - 1 | <= 1e-12.
class UnitVector {
 public:
  static constexpr double kNormTolerance = 1e-12;

  /// Throws RetractionError if ||u||_G <= 1e-14.
  static UnitVector normalize(const GridFunction& u, const GramOperator& G);

  const GridFunction& get() const { return v_; }
  operator const GridFunction&() const { return v_; }
  double norm_residual() const { return norm_residual_; }

 private:
  UnitVector(GridFunction v, double residual) : v_(std::move(v)), norm_residual_(residual) {}

  GridFunction v_;
  double norm_residual_;
};

/// v(alpha) = (v - alpha g) / ||v - alpha g||_G, the sphere retraction used by
/// the outer iteration. The denominator is always evaluated directly.
/// Throws RetractionError when ||v - alpha g||_G <= 1e-14.
UnitVector retract(const UnitVector& v, const GridFunction& g, double alpha, const GramOperator& G);

/// P_v u = u - (u, v)_G v.
GridFunction tangent_project(const UnitVector& v, const GridFunction& u, const GramOperator& G);

struct SupportDecomposition {
  double perp_norm = 1.0;       ///< ||v^perp||_G
  double tau = 0.0;             ///< v^L = tau * v0^L; 0 when v0 has no L component
  Eigen::VectorXd coeffs;       ///< v^L = sum_i coeffs[i] * u_i
  GridFunction perp;            ///< v^perp itself
};

/// Splits v = v^perp + v^L against span(L). tau is only meaningful when L
/// carries a reference direction (SupportSpace::with_reference).
SupportDecomposition decompose_against_support(const GridFunction& v, const SupportSpace& L,
                                               const GramOperator& G);

}  // namespace saddle
