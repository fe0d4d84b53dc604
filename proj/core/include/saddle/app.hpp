#pragma once

#include "saddle/config.hpp"

#include <filesystem>
#include <iosfwd>

namespace saddle {

/// Process exit codes of the command-line front end.
enum ExitCode : int { kExitConverged = 0, kExitNotConverged = 1, kExitInvalidInput = 2 };

inline constexpr const char* kTraceHeader = "k,lambda,m,alpha,energy,reference,gradnorm,t,tau,vperp,residual,seconds";

void write_trace(const SolverTrace& trace, const std::filesystem::path& path);
void write_summary(const SolverTrace& trace, double constraint_defect, const std::filesystem::path& path);

struct CompareRow {
  std::string method;
  std::string target;
  int iterations = 0;
  double seconds = 0.0;
  double final_energy = 0.0;
  double final_gradnorm = 0.0;
  bool converged = false;
  int peak_evals = 0;  ///< not written to the CSV
};

/// Executes a RunConfig: writes solution.grid, trace.csv and summary into the
/// output directory. Returns kExitConverged or kExitNotConverged; invalid
/// input surfaces as saddle::Error.
int run_solve(const RunConfig& cfg, std::ostream& log);

/// Runs every (target, method) pair, `cfg.jobs` at a time. Rows come back in
/// target-major, method-minor config order regardless of scheduling.
std::vector<CompareRow> run_compare(const CompareConfig& cfg, std::ostream& log);
void write_compare_csv(const std::vector<CompareRow>& rows, const std::filesystem::path& path);

/// Config-file entry points; map saddle::Error to kExitInvalidInput.
int solve_command(const std::filesystem::path& config, std::ostream& out, std::ostream& err);
int compare_command(const std::filesystem::path& config, std::ostream& out, std::ostream& err);
int info_command(const std::filesystem::path& grid_file, std::ostream& out, std::ostream& err);

}  // namespace saddle
