#include "saddle/grid.hpp"

#include "saddle/error.hpp"

#include <fmt/format.h>

#include <cmath>

namespace saddle {

GridSpec GridSpec::interval(double x_lo, double x_hi, int n) {
  if (n < 4) throw InputError(fmt::format("grid needs at least 4 subdivisions, got {}", n));
  if (!(x_hi > x_lo)) throw InputError(fmt::format("empty interval [{}, {}]", x_lo, x_hi));
  return GridSpec(x_lo, x_hi, 0.0, 0.0, n, 0);
}

GridSpec GridSpec::rectangle(double x_lo, double x_hi, double y_lo, double y_hi, int nx, int ny) {
  if (nx < 4 || ny < 4)
    throw InputError(fmt::format("grid needs at least 4 subdivisions per axis, got {}x{}", nx, ny));
  if (!(x_hi > x_lo) || !(y_hi > y_lo))
    throw InputError(fmt::format("empty rectangle [{}, {}]x[{}, {}]", x_lo, x_hi, y_lo, y_hi));
  return GridSpec(x_lo, x_hi, y_lo, y_hi, nx, ny);
}

Point GridSpec::node(std::size_t k) const {
  const int i = column(k);
  if (ny_ == 0) return {x_lo_ + i * hx(), 0.0};
  const int j = row(k);
  // Pin the far edge exactly so that symmetric domains give symmetric nodes.
  const double x = i == nx_ ? x_hi_ : x_lo_ + i * hx();
  const double y = j == ny_ ? y_hi_ : y_lo_ + j * hy();
  return {x, y};
}

bool GridSpec::on_boundary(std::size_t k) const {
  const int i = column(k);
  if (i == 0 || i == nx_) return true;
  if (ny_ == 0) return false;
  const int j = row(k);
  return j == 0 || j == ny_;
}

std::string GridSpec::describe() const {
  if (ny_ == 0) return fmt::format("{} cells on [{},{}]", nx_, x_lo_, x_hi_);
  return fmt::format("{}x{} cells on [{},{}]x[{},{}]", nx_, ny_, x_lo_, x_hi_, y_lo_, y_hi_);
}

void require_same_grid(const GridSpec& a, const GridSpec& b, const char* what) {
  if (!(a == b))
    throw DimensionError(fmt::format("{}: grid mismatch ({} vs {})", what, a.describe(), b.describe()));
}

GridFunction::GridFunction(const GridSpec& grid)
    : grid_(grid), values_(Eigen::VectorXd::Zero(static_cast<Eigen::Index>(grid.node_count()))) {}

GridFunction::GridFunction(const GridSpec& grid, Eigen::VectorXd values)
    : grid_(grid), values_(std::move(values)) {
  if (static_cast<std::size_t>(values_.size()) != grid_.node_count())
    throw DimensionError(fmt::format("grid function has {} values but grid {} has {} nodes",
                                     values_.size(), grid_.describe(), grid_.node_count()));
  if (!values_.allFinite()) throw InputError("grid function contains non-finite values");
}

GridFunction& GridFunction::operator+=(const GridFunction& other) {
  require_same_grid(grid_, other.grid_, "addition");
  values_ += other.values_;
  return *this;
}

GridFunction& GridFunction::operator-=(const GridFunction& other) {
  require_same_grid(grid_, other.grid_, "subtraction");
  values_ -= other.values_;
  return *this;
}

GridFunction& GridFunction::operator*=(double s) {
  values_ *= s;
  return *this;
}

GridFunction GridFunction::axpy(const GridFunction& a, double s, const GridFunction& b) {
  require_same_grid(a.grid_, b.grid_, "axpy");
  GridFunction out(a.grid_);
  out.values_ = a.values_ + s * b.values_;
  return out;
}

}  // namespace saddle
