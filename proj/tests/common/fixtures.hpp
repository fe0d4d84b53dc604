#pragma once

#include "saddle/solver.hpp"

#include <random>

namespace saddle::testing {

inline Problem lane_emden(int n, double ell = 0.0) {
  return Problem::dirichlet(GridSpec::square(-1.0, 1.0, n), PowerNonlinearity{ell, 3.0});
}

inline RegionIndicator split(const Region& positive) { return {positive, Region::complement(positive)}; }

inline SolverConfig method(StepRule rule, TrialSource trial = TrialSource::Fixed) {
  SolverConfig cfg;
  cfg.rule = rule;
  cfg.trial = trial;
  cfg.record_time = false;
  return cfg;
}

/// Grid function with independent N(0,1) interior values and zero boundary.
inline GridFunction random_interior(const GridSpec& grid, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Eigen::VectorXd v = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(grid.node_count()));
  for (std::size_t k = 0; k < grid.node_count(); ++k)
    if (!grid.on_boundary(k)) v[static_cast<Eigen::Index>(k)] = normal(rng);
  return GridFunction(grid, std::move(v));
}

inline GridFunction sample(const GridSpec& grid, const std::function<double(Point)>& f) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(grid.node_count()));
  for (std::size_t k = 0; k < grid.node_count(); ++k) v[static_cast<Eigen::Index>(k)] = f(grid.node(k));
  return GridFunction(grid, std::move(v));
}

}  // namespace saddle::testing
