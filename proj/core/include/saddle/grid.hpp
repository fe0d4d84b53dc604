#pragma once

#include <Eigen/Core>

#include <cstddef>
#include <string>

namespace saddle {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

/// Uniform tensor grid over an interval (dim 1) or a rectangle (dim 2).
///
/// Nodes are numbered row-major: node (i, j) with 0 <= i <= nx along x and
/// 0 <= j <= ny along y has index j*(nx+1) + i. In 1D, ny == 0 and the
/// y-bounds are zero.
class GridSpec {
 public:
  /// Throws InputError unless every axis has at least 4 subdivisions and a
  /// positive extent.
  static GridSpec interval(double x_lo, double x_hi, int n);
  static GridSpec rectangle(double x_lo, double x_hi, double y_lo, double y_hi, int nx, int ny);
  static GridSpec square(double lo, double hi, int n) { return rectangle(lo, hi, lo, hi, n, n); }

  int dim() const { return ny_ == 0 ? 1 : 2; }
  int nx() const { return nx_; }
  int ny() const { return ny_; }
  double x_lo() const { return x_lo_; }
  double x_hi() const { return x_hi_; }
  double y_lo() const { return y_lo_; }
  double y_hi() const { return y_hi_; }
  double hx() const { return (x_hi_ - x_lo_) / nx_; }
  double hy() const { return ny_ == 0 ? 0.0 : (y_hi_ - y_lo_) / ny_; }

  std::size_t node_count() const { return static_cast<std::size_t>(nx_ + 1) * (ny_ + 1); }
  std::size_t index(int i, int j) const { return static_cast<std::size_t>(j) * (nx_ + 1) + i; }
  int column(std::size_t k) const { return static_cast<int>(k % (nx_ + 1)); }
  int row(std::size_t k) const { return static_cast<int>(k / (nx_ + 1)); }
  Point node(std::size_t k) const;
  bool on_boundary(std::size_t k) const;

  /// Human-readable form used in error messages, e.g. "128x128 on [-1,1]x[-1,1]".
  std::string describe() const;

  friend bool operator==(const GridSpec&, const GridSpec&) = default;

 private:
  GridSpec(double x_lo, double x_hi, double y_lo, double y_hi, int nx, int ny)
      : x_lo_(x_lo), x_hi_(x_hi), y_lo_(y_lo), y_hi_(y_hi), nx_(nx), ny_(ny) {}

  double x_lo_, x_hi_, y_lo_, y_hi_;
  int nx_, ny_;
};

/// Nodal values of a function on a GridSpec; the concrete Hilbert-space vector.
///
/// Every entry is finite. Arithmetic between functions on different grids
/// throws DimensionError.
class GridFunction {
 public:
  explicit GridFunction(const GridSpec& grid);
  GridFunction(const GridSpec& grid, Eigen::VectorXd values);

  const GridSpec& grid() const { return grid_; }
  const Eigen::VectorXd& values() const { return values_; }
  std::size_t size() const { return static_cast<std::size_t>(values_.size()); }
  double operator[](std::size_t k) const { return values_[static_cast<Eigen::Index>(k)]; }

  GridFunction& operator+=(const GridFunction& other);
  GridFunction& operator-=(const GridFunction& other);
  GridFunction& operator*=(double s);

  friend GridFunction operator+(GridFunction a, const GridFunction& b) { return a += b; }
  friend GridFunction operator-(GridFunction a, const GridFunction& b) { return a -= b; }
  friend GridFunction operator*(double s, GridFunction a) { return a *= s; }
  friend GridFunction operator*(GridFunction a, double s) { return a *= s; }

  /// Returns a + s*b without an intermediate temporary.
  static GridFunction axpy(const GridFunction& a, double s, const GridFunction& b);

  double max_abs() const { return values_.size() ? values_.cwiseAbs().maxCoeff() : 0.0; }

 private:
  GridSpec grid_;
  Eigen::VectorXd values_;
};

/// Throws DimensionError naming both grids when they differ.
void require_same_grid(const GridSpec& a, const GridSpec& b, const char* what);

}  // namespace saddle
