#include "saddle/hilbert.hpp"

#include "saddle/error.hpp"
#include "saddle/support.hpp"

#include <Eigen/IterativeLinearSolvers>
#include <Eigen/SparseCholesky>
#include <fmt/format.h>

#include <cmath>

namespace saddle {

struct GramOperator::State {
  Eigen::SparseMatrix<double> matrix;
  // u^T G v = sum_e w_e (u_i - u_j)(v_i - v_j) + sum_i r_i u_i v_i over the
  // off-diagonal pairs e = (i, j), w_e = -G_ij, r_i = row sums of G. For a
  // stiffness matrix the terms carry no cancellation, unlike u . (G v).
  std::vector<Eigen::Index> edge_i, edge_j;
  std::vector<double> edge_w;
  Eigen::VectorXd row_sum;
  std::unique_ptr<Eigen::SimplicialLLT<Eigen::SparseMatrix<double>>> cholesky;
  std::unique_ptr<Eigen::ConjugateGradient<Eigen::SparseMatrix<double>, Eigen::Lower | Eigen::Upper,
                                           Eigen::IncompleteCholesky<double>>>
      cg;
};

GramOperator::GramOperator(const GridSpec& grid, Eigen::SparseMatrix<double> matrix) : grid_(grid) {
  const auto n = static_cast<Eigen::Index>(grid.node_count());
  if (matrix.rows() != n || matrix.cols() != n)
    throw DimensionError(fmt::format("Gram operator is {}x{} but grid {} has {} nodes", matrix.rows(),
                                     matrix.cols(), grid.describe(), n));
  auto state = std::make_shared<State>();
  state->matrix = std::move(matrix);
  state->matrix.makeCompressed();
  state->row_sum = Eigen::VectorXd::Zero(n);
  for (Eigen::Index col = 0; col < state->matrix.outerSize(); ++col) {
    long double sum = 0.0L;
    for (Eigen::SparseMatrix<double>::InnerIterator it(state->matrix, col); it; ++it) {
      sum += it.value();
      if (it.row() < col && it.value() != 0.0) {
        state->edge_i.push_back(it.row());
        state->edge_j.push_back(col);
        state->edge_w.push_back(-it.value());
      }
    }
    state->row_sum[col] = static_cast<double>(sum);
  }
  if (grid.node_count() <= kIterativeThreshold) {
    state->cholesky = std::make_unique<Eigen::SimplicialLLT<Eigen::SparseMatrix<double>>>(state->matrix);
    if (state->cholesky->info() != Eigen::Success)
      throw SolverError("sparse Cholesky factorization failed: Gram operator is not positive definite");
  } else {
    state->cg = std::make_unique<std::remove_reference_t<decltype(*state->cg)>>();
    state->cg->setTolerance(1e-12);
    state->cg->compute(state->matrix);
    if (state->cg->info() != Eigen::Success) throw SolverError("CG preconditioner setup failed");
  }
  state_ = std::move(state);
}

const Eigen::SparseMatrix<double>& GramOperator::matrix() const { return state_->matrix; }

double GramOperator::form(const Eigen::VectorXd& u, const Eigen::VectorXd& v) const {
  const State& s = *state_;
  long double sum = 0.0L;
  for (std::size_t e = 0; e < s.edge_w.size(); ++e) {
    const Eigen::Index i = s.edge_i[e], j = s.edge_j[e];
    sum += static_cast<long double>(s.edge_w[e]) * (u[i] - u[j]) * (v[i] - v[j]);
  }
  for (Eigen::Index i = 0; i < u.size(); ++i)
    if (s.row_sum[i] != 0.0) sum += static_cast<long double>(s.row_sum[i]) * u[i] * v[i];
  return static_cast<double>(sum);
}

GridFunction GramOperator::apply(const GridFunction& u) const {
  require_same_grid(grid_, u.grid(), "Gram apply");
  return GridFunction(grid_, state_->matrix * u.values());
}

GridFunction GramOperator::solve(const GridFunction& rhs) const {
  require_same_grid(grid_, rhs.grid(), "Gram solve");
  Eigen::VectorXd x;
  if (state_->cholesky) {
    x = state_->cholesky->solve(rhs.values());
    if (state_->cholesky->info() != Eigen::Success) throw SolverError("sparse Cholesky solve failed");
  } else {
    x = state_->cg->solve(rhs.values());
    if (state_->cg->info() != Eigen::Success)
      throw SolverError(fmt::format("CG did not reach tolerance 1e-12 ({} iterations, error {:.3e})",
                                    state_->cg->iterations(), state_->cg->error()));
  }
  return GridFunction(grid_, std::move(x));
}

double inner(const GridFunction& u, const GridFunction& v, const GramOperator& G) {
  require_same_grid(u.grid(), v.grid(), "inner product");
  require_same_grid(u.grid(), G.grid(), "inner product");
  return G.form(u.values(), v.values());
}

double norm(const GridFunction& u, const GramOperator& G) { return std::sqrt(std::max(0.0, inner(u, u, G))); }

UnitVector UnitVector::normalize(const GridFunction& u, const GramOperator& G) {
  double n = norm(u, G);
  if (!(n > 1e-14)) throw RetractionError(fmt::format("cannot normalize vector of norm {:.3e}", n));
  GridFunction v = (1.0 / n) * u;
  double residual = std::abs(norm(v, G) - 1.0);
  // Rounding in the first pass can leave a few ulps of drift.
  for (int pass = 0; pass < 3 && residual > kNormTolerance; ++pass) {
    v *= 1.0 / norm(v, G);
    residual = std::abs(norm(v, G) - 1.0);
  }
  return UnitVector(std::move(v), residual);
}

UnitVector retract(const UnitVector& v, const GridFunction& g, double alpha, const GramOperator& G) {
  if (alpha == 0.0) return v;
  GridFunction d = GridFunction::axpy(v.get(), -alpha, g);
  const double n = norm(d, G);
  if (!(n > 1e-14))
    throw RetractionError(fmt::format("retraction denominator ||v - alpha g|| = {:.3e} at alpha = {:.3e}", n, alpha));
  return UnitVector::normalize(d, G);
}

GridFunction tangent_project(const UnitVector& v, const GridFunction& u, const GramOperator& G) {
  return GridFunction::axpy(u, -inner(u, v.get(), G), v.get());
}

SupportDecomposition decompose_against_support(const GridFunction& v, const SupportSpace& L,
                                               const GramOperator& G) {
  require_same_grid(v.grid(), L.grid(), "support decomposition");
  SupportDecomposition out{1.0, 0.0, Eigen::VectorXd(), v};
  if (L.empty()) {
    out.perp_norm = norm(v, G);
    return out;
  }
  out.coeffs = L.solve(L.project_coefficients(v));
  out.perp = v - L.combine(out.coeffs);
  out.perp_norm = norm(out.perp, G);
  if (const auto& ref = L.reference()) {
    const double ref_sq = ref->dot(L.gram() * *ref);
    // v0 with no L component: v_k^L stays at rounding level, tau is undefined.
    if (ref_sq > 1e-20) out.tau = out.coeffs.dot(L.gram() * *ref) / ref_sq;
  }
  return out;
}

}  // namespace saddle
