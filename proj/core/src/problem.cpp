#include "saddle/problem.hpp"

#include "saddle/error.hpp"

#include <fmt/format.h>

#include <array>
#include <cmath>
#include <numbers>

namespace saddle {

namespace {

using Triplets = std::vector<Eigen::Triplet<double>>;

/// Adds w * (e_i - e_j)(e_i - e_j)^T.
void add_edge(Triplets& t, Eigen::Index i, Eigen::Index j, double w) {
  t.emplace_back(i, i, w);
  t.emplace_back(j, j, w);
  t.emplace_back(i, j, -w);
  t.emplace_back(j, i, -w);
}

Eigen::SparseMatrix<double> assemble(Eigen::Index n, const Triplets& t) {
  Eigen::SparseMatrix<double> m(n, n);
  m.setFromTriplets(t.begin(), t.end());
  return m;
}

/// P1 stiffness (right-triangle mesh) and lumped mass on every node.
struct FullAssembly {
  Triplets stiffness;
  Eigen::VectorXd mass;
};

FullAssembly assemble_full(const GridSpec& grid) {
  FullAssembly out;
  out.mass = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(grid.node_count()));
  if (grid.dim() == 1) {
    const double h = grid.hx();
    for (int i = 0; i < grid.nx(); ++i) {
      add_edge(out.stiffness, i, i + 1, 1.0 / h);
      out.mass[i] += h / 2;
      out.mass[i + 1] += h / 2;
    }
    return out;
  }
  const double hx = grid.hx(), hy = grid.hy();
  // Each cell contributes half the 5-point coupling to each of its four edges;
  // the diagonal edges of the triangulation carry zero weight.
  const double wx = hy / (2 * hx), wy = hx / (2 * hy), cell_mass = hx * hy / 4;
  for (int j = 0; j < grid.ny(); ++j)
    for (int i = 0; i < grid.nx(); ++i) {
      const auto sw = static_cast<Eigen::Index>(grid.index(i, j));
      const auto se = static_cast<Eigen::Index>(grid.index(i + 1, j));
      const auto nw = static_cast<Eigen::Index>(grid.index(i, j + 1));
      const auto ne = static_cast<Eigen::Index>(grid.index(i + 1, j + 1));
      add_edge(out.stiffness, sw, se, wx);
      add_edge(out.stiffness, nw, ne, wx);
      add_edge(out.stiffness, sw, nw, wy);
      add_edge(out.stiffness, se, ne, wy);
      for (auto k : {sw, se, nw, ne}) out.mass[k] += cell_mass;
    }
  return out;
}

/// Sample offsets inside a node's dual cell. The 2D set is invariant under
/// the symmetries of the square and avoids the axes and diagonals through the
/// node, so indicators of half-planes through grid lines come out odd.
std::vector<Point> indicator_samples(const GridSpec& grid) {
  std::vector<Point> out;
  if (grid.dim() == 1) {
    const double r = grid.hx() / 4;
    return {{-r, 0.0}, {r, 0.0}};
  }
  const double r = std::min(grid.hx(), grid.hy()) / 4;
  for (int k = 0; k < 8; ++k) {
    const double angle = std::numbers::pi / 8 + k * std::numbers::pi / 4;
    out.push_back({r * std::cos(angle), r * std::sin(angle)});
  }
  return out;
}

double radial_weight(Point p, int dim, double ell) {
  if (ell == 0.0) return 1.0;
  const double r = dim == 1 ? std::abs(p.x) : std::hypot(p.x, p.y);
  return std::pow(r, ell);
}

}  // namespace

NonlinearTerm::NonlinearTerm(std::vector<Eigen::Index> nodes, Eigen::VectorXd coeff, Eigen::VectorXd source,
                             double gamma)
    : nodes_(std::move(nodes)), coeff_(std::move(coeff)), source_(std::move(source)), gamma_(gamma) {}

Eigen::VectorXd NonlinearTerm::restrict(const Eigen::VectorXd& w) const {
  Eigen::VectorXd out(static_cast<Eigen::Index>(nodes_.size()));
  for (std::size_t i = 0; i < nodes_.size(); ++i) out[static_cast<Eigen::Index>(i)] = w[nodes_[i]];
  return out;
}

double NonlinearTerm::potential(const Eigen::VectorXd& w) const {
  // Extended accumulation keeps the sum accurate to a few ulps; the outer
  // line searches compare energies that differ in the 13th digit.
  long double sum = 0.0L;
  if (gamma_ == 3.0) {
    for (Eigen::Index i = 0; i < w.size(); ++i) {
      const long double sq = static_cast<long double>(w[i]) * w[i];
      sum += coeff_[i] * sq * sq;
    }
    sum *= 0.25L;
  } else {
    for (Eigen::Index i = 0; i < w.size(); ++i) sum += coeff_[i] * std::pow(std::abs(w[i]), gamma_ + 1);
    sum /= gamma_ + 1;
  }
  for (Eigen::Index i = 0; i < source_.size(); ++i) sum += static_cast<long double>(source_[i]) * w[i];
  return static_cast<double>(sum);
}

void NonlinearTerm::load(const Eigen::VectorXd& w, Eigen::VectorXd& out) const {
  out.resize(w.size());
  if (gamma_ == 3.0) {
    for (Eigen::Index i = 0; i < w.size(); ++i) out[i] = coeff_[i] * w[i] * w[i] * w[i];
  } else {
    for (Eigen::Index i = 0; i < w.size(); ++i)
      out[i] = coeff_[i] * std::pow(std::abs(w[i]), gamma_ - 1) * w[i];
  }
  if (source_.size()) out += source_;
}

Problem::Problem(ProblemKind kind, const GridSpec& grid, GramOperator gram, NonlinearTerm nonlinear,
                 std::vector<Eigen::Index> residual_nodes, Eigen::VectorXd residual_weights, PowerNonlinearity power,
                 double a)
    : kind_(kind),
      grid_(grid),
      gram_(std::move(gram)),
      nonlinear_(std::move(nonlinear)),
      residual_nodes_(std::move(residual_nodes)),
      residual_weights_(std::move(residual_weights)),
      power_(power),
      a_(a) {}

namespace {

struct DirichletParts {
  Eigen::SparseMatrix<double> gram;
  std::vector<Eigen::Index> interior;
  Eigen::VectorXd mass;  // restricted to interior
};

DirichletParts dirichlet_parts(const GridSpec& grid) {
  FullAssembly full = assemble_full(grid);
  const auto n = static_cast<Eigen::Index>(grid.node_count());
  const Eigen::SparseMatrix<double> k = assemble(n, full.stiffness);
  Triplets t;
  DirichletParts out;
  for (Eigen::Index col = 0; col < k.outerSize(); ++col)
    for (Eigen::SparseMatrix<double>::InnerIterator it(k, col); it; ++it) {
      if (grid.on_boundary(static_cast<std::size_t>(it.row())) || grid.on_boundary(static_cast<std::size_t>(it.col())))
        continue;
      t.emplace_back(it.row(), it.col(), it.value());
    }
  std::vector<double> mass;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (grid.on_boundary(static_cast<std::size_t>(i))) {
      t.emplace_back(i, i, 1.0);
    } else {
      out.interior.push_back(i);
      mass.push_back(full.mass[i]);
    }
  }
  out.gram = assemble(n, t);
  out.mass = Eigen::Map<Eigen::VectorXd>(mass.data(), static_cast<Eigen::Index>(mass.size()));
  return out;
}

}  // namespace

Problem Problem::dirichlet(const GridSpec& grid, PowerNonlinearity f) {
  if (!(f.gamma > 1.0)) throw InputError(fmt::format("nonlinearity power must exceed 1, got {}", f.gamma));
  if (!(f.ell >= 0.0)) throw InputError(fmt::format("Henon exponent must be nonnegative, got {}", f.ell));
  DirichletParts parts = dirichlet_parts(grid);
  Eigen::VectorXd coeff(parts.mass.size());
  for (std::size_t i = 0; i < parts.interior.size(); ++i) {
    const auto k = static_cast<Eigen::Index>(i);
    coeff[k] = parts.mass[k] * radial_weight(grid.node(static_cast<std::size_t>(parts.interior[i])), grid.dim(), f.ell);
  }
  GramOperator gram(grid, std::move(parts.gram));
  NonlinearTerm term(parts.interior, std::move(coeff), Eigen::VectorXd(), f.gamma);
  return Problem(ProblemKind::Dirichlet, grid, std::move(gram), std::move(term), parts.interior,
                 std::move(parts.mass), f, 0.0);
}

Problem Problem::dirichlet_with_source(const GridSpec& grid, const std::function<double(Point)>& source) {
  DirichletParts parts = dirichlet_parts(grid);
  Eigen::VectorXd load(parts.mass.size());
  for (std::size_t i = 0; i < parts.interior.size(); ++i) {
    const auto k = static_cast<Eigen::Index>(i);
    load[k] = parts.mass[k] * source(grid.node(static_cast<std::size_t>(parts.interior[i])));
  }
  GramOperator gram(grid, std::move(parts.gram));
  NonlinearTerm term(parts.interior, Eigen::VectorXd::Zero(parts.mass.size()), std::move(load), 3.0);
  return Problem(ProblemKind::Dirichlet, grid, std::move(gram), std::move(term), parts.interior,
                 std::move(parts.mass), PowerNonlinearity{}, 0.0);
}

Problem Problem::neumann(const GridSpec& grid, double a, PowerNonlinearity q) {
  if (grid.dim() != 2 || grid.nx() != grid.ny() || grid.x_hi() - grid.x_lo() != grid.y_hi() - grid.y_lo())
    throw InputError(fmt::format("Neumann problem needs a square grid, got {}", grid.describe()));
  if (!(a > 0.0)) throw InputError(fmt::format("Neumann coefficient a must be positive, got {}", a));
  if (!(q.gamma > 1.0)) throw InputError(fmt::format("nonlinearity power must exceed 1, got {}", q.gamma));
  FullAssembly full = assemble_full(grid);
  const auto n = static_cast<Eigen::Index>(grid.node_count());
  Triplets t = std::move(full.stiffness);
  for (Eigen::Index i = 0; i < n; ++i) t.emplace_back(i, i, a * full.mass[i]);

  // Lumped boundary mass: every boundary node owns half of each adjacent
  // boundary segment, which is h for edge and corner nodes alike.
  const double h = grid.hx();
  std::vector<Eigen::Index> boundary;
  std::vector<double> weights, coeff;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!grid.on_boundary(static_cast<std::size_t>(i))) continue;
    boundary.push_back(i);
    weights.push_back(h);
    coeff.push_back(h * radial_weight(grid.node(static_cast<std::size_t>(i)), 2, q.ell));
  }
  GramOperator gram(grid, assemble(n, t));
  const auto nb = static_cast<Eigen::Index>(boundary.size());
  NonlinearTerm term(boundary, Eigen::Map<Eigen::VectorXd>(coeff.data(), nb), Eigen::VectorXd(), q.gamma);
  return Problem(ProblemKind::Neumann, grid, std::move(gram), std::move(term), boundary,
                 Eigen::Map<Eigen::VectorXd>(weights.data(), nb), q, a);
}

void Problem::require_admissible(const GridFunction& w) const {
  require_same_grid(w.grid(), grid_, "problem evaluation");
  if (kind_ != ProblemKind::Dirichlet) return;
  const double scale = 1.0 + w.max_abs();
  for (std::size_t k = 0; k < grid_.node_count(); ++k)
    if (grid_.on_boundary(k) && std::abs(w[k]) > 1e-12 * scale)
      throw InputError(fmt::format("Dirichlet argument has boundary value {:.3e} at node {}", w[k], k));
}

double Problem::potential(const GridFunction& w) const {
  require_same_grid(w.grid(), grid_, "potential");
  return nonlinear_.potential(nonlinear_.restrict(w.values()));
}

GridFunction Problem::load(const GridFunction& w) const {
  require_same_grid(w.grid(), grid_, "load");
  Eigen::VectorXd active;
  nonlinear_.load(nonlinear_.restrict(w.values()), active);
  Eigen::VectorXd full = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(grid_.node_count()));
  const auto& nodes = nonlinear_.nodes();
  for (std::size_t i = 0; i < nodes.size(); ++i) full[nodes[i]] = active[static_cast<Eigen::Index>(i)];
  return GridFunction(grid_, std::move(full));
}

double Problem::energy(const GridFunction& w) const {
  require_admissible(w);
  return 0.5 * inner(w, w, gram_) - potential(w);
}

double Problem::pairing(const GridFunction& w, const GridFunction& phi) const {
  require_same_grid(w.grid(), grid_, "pairing");
  require_same_grid(phi.grid(), grid_, "pairing");
  return inner(w, phi, gram_) - load(w).values().dot(phi.values());
}

GridFunction Problem::gradient(const GridFunction& w) const {
  require_same_grid(w.grid(), grid_, "gradient");
  return w - gram_.solve(load(w));
}

double Problem::residual_inf(const GridFunction& w) const {
  require_same_grid(w.grid(), grid_, "residual");
  const Eigen::VectorXd gw = gram_.matrix() * w.values();
  Eigen::VectorXd active;
  nonlinear_.load(nonlinear_.restrict(w.values()), active);
  const auto& nodes = nonlinear_.nodes();
  double worst = 0.0;
  for (std::size_t i = 0; i < residual_nodes_.size(); ++i) {
    const auto k = static_cast<Eigen::Index>(i);
    // residual_nodes_ and nonlinear_.nodes() enumerate the same node set.
    worst = std::max(worst, std::abs(gw[nodes[i]] - active[k]) / residual_weights_[k]);
  }
  return worst;
}

double Problem::constraint_defect(const GridFunction& w) const {
  require_same_grid(w.grid(), grid_, "constraint defect");
  if (kind_ == ProblemKind::Dirichlet) {
    double worst = 0.0;
    for (std::size_t k = 0; k < grid_.node_count(); ++k)
      if (grid_.on_boundary(k)) worst = std::max(worst, std::abs(w[k]));
    return worst;
  }
  const Eigen::VectorXd aw = gram_.matrix() * w.values();
  double worst = 0.0;
  for (std::size_t k = 0; k < grid_.node_count(); ++k)
    if (!grid_.on_boundary(k)) worst = std::max(worst, std::abs(aw[static_cast<Eigen::Index>(k)]));
  return worst;
}

double Problem::boundary_theta(std::size_t node) const {
  if (grid_.dim() != 2 || !grid_.on_boundary(node))
    throw InputError(fmt::format("node {} is not on the boundary of a 2D grid", node));
  const int i = grid_.column(node), j = grid_.row(node), n = grid_.nx();
  int s = 0;  // arc position in units of h, counterclockwise from (x_lo, y_lo)
  if (j == 0)
    s = i;
  else if (i == n)
    s = n + j;
  else if (j == n)
    s = 2 * n + (n - i);
  else
    s = 3 * n + (n - j);
  return 2.0 * std::numbers::pi * s / (4.0 * n);
}

UnitVector Problem::initial_direction(const IndicatorSpec& spec) const {
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(grid_.node_count()));
  if (const auto* regions = std::get_if<RegionIndicator>(&spec)) {
    if (kind_ != ProblemKind::Dirichlet)
      throw InputError("region indicators define Dirichlet initial directions; use a boundary density");
    const auto samples = indicator_samples(grid_);
    const auto& nodes = residual_nodes_;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      const Point x = grid_.node(static_cast<std::size_t>(nodes[i]));
      double value = 0.0;
      for (const Point& d : samples) {
        const Point p{x.x + d.x, x.y + d.y};
        const bool pos = regions->positive.contains(p), neg = regions->negative.contains(p);
        if (pos && neg)
          throw InputError(fmt::format("regions '{}' and '{}' overlap near ({}, {})", regions->positive.text(),
                                       regions->negative.text(), x.x, x.y));
        value += (pos ? 1.0 : 0.0) - (neg ? 1.0 : 0.0);
      }
      rhs[nodes[i]] = residual_weights_[static_cast<Eigen::Index>(i)] * value / static_cast<double>(samples.size());
    }
  } else {
    const auto& boundary = std::get<BoundaryIndicator>(spec);
    if (kind_ != ProblemKind::Neumann)
      throw InputError("boundary densities define Neumann initial directions; use region indicators");
    const auto& nodes = residual_nodes_;
    for (std::size_t i = 0; i < nodes.size(); ++i)
      rhs[nodes[i]] = residual_weights_[static_cast<Eigen::Index>(i)] *
                      boundary.density(boundary_theta(static_cast<std::size_t>(nodes[i])));
  }
  if (!rhs.allFinite()) throw InputError("initial direction data is not finite");
  if (rhs.cwiseAbs().maxCoeff() == 0.0) throw InputError("initial direction right-hand side is identically zero");
  return UnitVector::normalize(gram_.solve(GridFunction(grid_, std::move(rhs))), gram_);
}

}  // namespace saddle
