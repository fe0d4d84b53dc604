#pragma once

#include "saddle/hilbert.hpp"
#include "saddle/region.hpp"

#include <functional>
#include <variant>
#include <vector>

namespace saddle {

enum class ProblemKind { Dirichlet, Neumann };

/// f(x, u) = |x|^ell |u|^(gamma-1) u, the Lane-Emden (ell = 0) / Henon family.
/// For the Neumann problem it is the boundary flux q(x, u).
struct PowerNonlinearity {
  double ell = 0.0;
  double gamma = 3.0;
};

/// Right-hand side 1_{positive} - 1_{negative} for the Dirichlet initial
/// direction; the two regions must not overlap.
struct RegionIndicator {
  Region positive = Region::all();
  Region negative = Region::none();
};

/// Boundary data rho0(theta) for the Neumann initial direction, theta running
/// counterclockwise from the lower-left corner with scaled arc length.
struct BoundaryIndicator {
  BoundaryDensity density;
};

using IndicatorSpec = std::variant<RegionIndicator, BoundaryIndicator>;

/// Lumped quadrature of the nonlinear term restricted to the nodes where it
/// acts (interior nodes for Dirichlet, boundary nodes for Neumann).
///
///   potential(w) = sum_i coeff_i |w_i|^(gamma+1)/(gamma+1) + source_i w_i
///   load(w)_i    = coeff_i |w_i|^(gamma-1) w_i + source_i
class NonlinearTerm {
 public:
  NonlinearTerm(std::vector<Eigen::Index> nodes, Eigen::VectorXd coeff, Eigen::VectorXd source, double gamma);

  const std::vector<Eigen::Index>& nodes() const { return nodes_; }
  const Eigen::VectorXd& coeff() const { return coeff_; }
  double gamma() const { return gamma_; }
  bool odd() const { return source_.size() == 0; }

  /// Gathers w at nodes().
  Eigen::VectorXd restrict(const Eigen::VectorXd& w) const;
  /// Arguments are restricted vectors (length nodes().size()).
  double potential(const Eigen::VectorXd& w_active) const;
  void load(const Eigen::VectorXd& w_active, Eigen::VectorXd& out) const;

 private:
  std::vector<Eigen::Index> nodes_;
  Eigen::VectorXd coeff_;
  Eigen::VectorXd source_;  // empty unless a manufactured source is installed
  double gamma_;
};

/// Immutable discretized variational problem on a uniform grid.
///
/// The stiffness operator is the P1 stiffness on the right-triangle mesh of
/// the grid (equivalently the 5-point Laplacian) and all mass terms are
/// lumped. The Gram operator G realizes the inner product of the Hilbert
/// space X, and
///
///   E(w)          = 1/2 (w, w)_G - potential(w)
///   <E'(w), phi>  = (w, phi)_G - load(w) . phi
///   grad E(w)     = w - G^{-1} load(w)
///
/// Dirichlet: X = H^1_0, G = stiffness on interior nodes (identity rows on
/// the boundary, where every member of X vanishes).
/// Neumann: X = discrete a-harmonic functions, G = stiffness + a * mass on
/// all nodes, nonlinear flux integrated with the boundary mass.
class Problem {
 public:
  /// -Laplace u = |x|^ell |u|^(gamma-1) u, u = 0 on the boundary. Works on
  /// intervals (3-point stencil) and rectangles.
  static Problem dirichlet(const GridSpec& grid, PowerNonlinearity f);

  /// -Laplace u = source(x), u = 0 on the boundary; used for manufactured
  /// solution checks.
  static Problem dirichlet_with_source(const GridSpec& grid, const std::function<double(Point)>& source);

  /// -Laplace u + a u = 0 inside, du/dn = |u|^(gamma-1) u on the boundary of
  /// a square.
  static Problem neumann(const GridSpec& grid, double a, PowerNonlinearity q);

  ProblemKind kind() const { return kind_; }
  const GridSpec& grid() const { return grid_; }
  const GramOperator& gram() const { return gram_; }
  const NonlinearTerm& nonlinear() const { return nonlinear_; }
  const PowerNonlinearity& power() const { return power_; }
  double a() const { return a_; }

  /// Throws InputError when a Dirichlet argument has nonzero boundary values.
  double energy(const GridFunction& w) const;
  double pairing(const GridFunction& w, const GridFunction& phi) const;
  GridFunction gradient(const GridFunction& w) const;
  GridFunction load(const GridFunction& w) const;
  double potential(const GridFunction& w) const;

  /// Max-norm of the strong-form residual: |Laplace_h w + f(x, w)| over
  /// interior nodes (Dirichlet) or |dw/dn - q(x, w)| over boundary nodes,
  /// taken as the weak defect divided by the boundary weight (Neumann).
  double residual_inf(const GridFunction& w) const;

  /// Dirichlet: max |w| on the boundary. Neumann: max |(A_a w)_i| over
  /// interior rows, i.e. the distance from the a-harmonic subspace.
  double constraint_defect(const GridFunction& w) const;

  /// Normalized solution of G v = load of the indicator. Throws InputError
  /// for a zero right-hand side or overlapping regions.
  UnitVector initial_direction(const IndicatorSpec& spec) const;

  /// Boundary parameter theta in [0, 2 pi) of a boundary node of a square.
  double boundary_theta(std::size_t node) const;

 private:
  Problem(ProblemKind kind, const GridSpec& grid, GramOperator gram, NonlinearTerm nonlinear,
          std::vector<Eigen::Index> residual_nodes, Eigen::VectorXd residual_weights, PowerNonlinearity power,
          double a);

  void require_admissible(const GridFunction& w) const;

  ProblemKind kind_;
  GridSpec grid_;
  GramOperator gram_;
  NonlinearTerm nonlinear_;
  std::vector<Eigen::Index> residual_nodes_;
  Eigen::VectorXd residual_weights_;
  PowerNonlinearity power_;
  double a_;
};

}  // namespace saddle
