#pragma once

#include "saddle/problem.hpp"
#include "saddle/solver.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace saddle {

struct ProblemConfig {
  ProblemKind kind = ProblemKind::Dirichlet;
  int dim = 2;
  double x_lo = -1.0, x_hi = 1.0, y_lo = -1.0, y_hi = 1.0;
  int n = 128;
  PowerNonlinearity power;
  double a = 1.0;

  GridSpec grid() const;
  Problem build() const;
};

/// Initial direction recipe: region pair (Dirichlet) or rho0 (Neumann).
struct InitialConfig {
  std::string positive = "all";
  std::string negative = "none";  ///< "rest" means the complement of positive
  std::string rho0 = "1";

  IndicatorSpec indicator(ProblemKind kind) const;
};

/// One element of a support list: a grid file, or "@name" for the solution of
/// another comparison target.
struct SupportRef {
  std::string text;
  bool is_target() const { return !text.empty() && text.front() == '@'; }
  std::string target() const { return text.substr(1); }
};

struct RunConfig {
  std::filesystem::path source;  ///< config file, base for relative paths
  ProblemConfig problem;
  std::vector<std::filesystem::path> support;
  InitialConfig initial;
  SolverConfig solver;
  std::filesystem::path output = "out";
};

struct CompareTarget {
  std::string name;
  std::vector<SupportRef> support;
  InitialConfig initial;
};

/// Named solver variant in a comparison, e.g. "bb1", "zh(eta=0)",
/// "gll(M=1)" or "pbb2(rule=gll, M=5)".
struct Method {
  std::string label;
  SolverConfig solver;
};

struct CompareConfig {
  std::filesystem::path source;
  ProblemConfig problem;
  SolverConfig base;
  std::vector<Method> methods;
  std::vector<CompareTarget> targets;
  std::string reference_method = "armijo";
  int jobs = 1;
  std::filesystem::path output = "compare.csv";
};

/// Parses "<name>(key=value, ...)" on top of `base`. Throws InputError.
Method parse_method(const std::string& text, const SolverConfig& base);

/// INI parsers; throw InputError naming the offending key or constraint.
RunConfig load_run_config(const std::filesystem::path& path);
CompareConfig load_compare_config(const std::filesystem::path& path);

}  // namespace saddle
