#include "saddle/support.hpp"

#include "saddle/error.hpp"

#include <fmt/format.h>

#include <cmath>

namespace saddle {

SupportSpace::SupportSpace(const GridSpec& grid) : grid_(grid) {}

SupportSpace::SupportSpace(std::vector<GridFunction> basis, const GramOperator& G)
    : grid_(G.grid()), basis_(std::move(basis)), op_(G) {
  const auto k = static_cast<Eigen::Index>(basis_.size());
  applied_.reserve(basis_.size());
  for (const auto& u : basis_) {
    require_same_grid(u.grid(), grid_, "support space");
    applied_.push_back(G.apply(u));
  }
  gram_.resize(k, k);
  for (Eigen::Index i = 0; i < k; ++i)
    for (Eigen::Index j = 0; j <= i; ++j) {
      const double s = G.form(basis_[i].values(), basis_[j].values());
      gram_(i, j) = s;
      gram_(j, i) = s;
    }
  if (k == 0) return;

  scale_.resize(k);
  for (Eigen::Index i = 0; i < k; ++i) {
    if (!(gram_(i, i) > 0.0)) throw ConditioningError(fmt::format("support element {} has zero norm", i + 1));
    scale_[i] = 1.0 / std::sqrt(gram_(i, i));
  }
  const Eigen::MatrixXd scaled = scale_.asDiagonal() * gram_ * scale_.asDiagonal();
  factor_.compute(scaled);
  if (factor_.info() != Eigen::Success)
    throw ConditioningError("support Gram matrix is not positive definite");
  const Eigen::VectorXd pivots = factor_.matrixLLT().diagonal().array().square();
  const double det = pivots.prod();
  if (pivots.minCoeff() < kPivotFloor || det <= kPivotFloor)
    throw ConditioningError(fmt::format(
        "support basis is nearly linearly dependent (scaled Gram determinant {:.3e}, min pivot {:.3e})", det,
        pivots.minCoeff()));
}

Eigen::VectorXd SupportSpace::solve(const Eigen::VectorXd& b) const {
  if (basis_.empty()) return {};
  return scale_.asDiagonal() * factor_.solve(scale_.asDiagonal() * b);
}

Eigen::VectorXd SupportSpace::project_coefficients(const GridFunction& v) const {
  require_same_grid(v.grid(), grid_, "support projection");
  Eigen::VectorXd b(static_cast<Eigen::Index>(basis_.size()));
  for (std::size_t i = 0; i < basis_.size(); ++i) b[static_cast<Eigen::Index>(i)] = op_->form(basis_[i].values(), v.values());
  return b;
}

SupportSpace SupportSpace::with_reference(const GridFunction& v0) const {
  SupportSpace copy = *this;
  copy.reference_ = solve(project_coefficients(v0));
  return copy;
}

GridFunction SupportSpace::combine(const Eigen::VectorXd& c) const {
  Eigen::VectorXd acc = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(grid_.node_count()));
  for (std::size_t i = 0; i < basis_.size(); ++i) acc += c[static_cast<Eigen::Index>(i)] * basis_[i].values();
  return GridFunction(grid_, std::move(acc));
}

}  // namespace saddle
