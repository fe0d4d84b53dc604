#include "saddle/app.hpp"

#include "saddle/error.hpp"
#include "saddle/grid_io.hpp"

#include <fmt/format.h>
#include <fmt/os.h>
#include <fmt/ostream.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <mutex>
#include <optional>
#include <ostream>
#include <set>
#include <thread>

namespace saddle {

namespace {

std::string num(double x) { return fmt::format("{:.17g}", x); }

SupportSpace load_support(const std::vector<std::filesystem::path>& files, const Problem& P) {
  std::vector<GridFunction> basis;
  for (const auto& f : files) basis.push_back(import_solution(f, P.grid()));
  return basis.empty() ? SupportSpace(P.grid()) : SupportSpace(std::move(basis), P.gram());
}

void prepare_directory(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw InputError(fmt::format("cannot create output directory '{}': {}", dir.string(), ec.message()));
}

}  // namespace

void write_trace(const SolverTrace& trace, const std::filesystem::path& path) {
  auto out = fmt::output_file(path.string());
  out.print("{}\n", kTraceHeader);
  for (const TraceRow& r : trace.rows)
    out.print("{},{},{},{},{},{},{},{},{},{},{},{}\n", r.k, num(r.lambda), r.m, num(r.alpha), num(r.energy),
              num(r.reference), num(r.gradnorm), num(r.t), num(r.tau), num(r.vperp), num(r.residual),
              num(r.seconds));
}

void write_summary(const SolverTrace& trace, double constraint_defect, const std::filesystem::path& path) {
  auto out = fmt::output_file(path.string());
  out.print("termination={}\n", to_string(trace.termination));
  out.print("iterations={}\n", trace.iterations());
  if (!trace.rows.empty()) {
    const TraceRow& r = trace.rows.back();
    out.print("energy={}\ngradnorm={}\nresidual={}\nt={}\ntau={}\nvperp={}\nseconds={}\n", num(r.energy),
              num(r.gradnorm), num(r.residual), num(r.t), num(r.tau), num(r.vperp), num(r.seconds));
  }
  out.print("constraint_defect={}\n", num(constraint_defect));
  out.print("peak_selections={}\n", trace.peak_evals());
  out.print("message={}\n", trace.message);
}

int run_solve(const RunConfig& cfg, std::ostream& log) {
  const Problem P = cfg.problem.build();
  const SupportSpace L = load_support(cfg.support, P);
  const UnitVector v0 = P.initial_direction(cfg.initial.indicator(P.kind()));
  prepare_directory(cfg.output);

  SolverTrace trace;
  double defect = 0.0;
  try {
    SolveResult result = lmm_solve(P, L, v0, cfg.solver);
    export_solution(result.solution, cfg.output / "solution.grid");
    defect = P.constraint_defect(result.solution);
    trace = std::move(result.trace);
  } catch (const PeakSelectionError& e) {
    trace.termination = Termination::Failure;
    trace.message = fmt::format("initial peak selection failed: {}", e.what());
  }
  write_trace(trace, cfg.output / "trace.csv");
  write_summary(trace, defect, cfg.output / "summary");

  if (trace.rows.empty()) {
    fmt::print(log, "{}: {}\n", to_string(trace.termination), trace.message);
  } else {
    const TraceRow& r = trace.rows.back();
    fmt::print(log, "{} after {} iterations: E = {:.10g}, |g| = {:.3e}, residual = {:.3e}\n",
               to_string(trace.termination), r.k, r.energy, r.gradnorm, r.residual);
    if (!trace.converged()) fmt::print(log, "  {}\n", trace.message);
  }
  fmt::print(log, "wrote {}\n", cfg.output.string());
  return trace.converged() ? kExitConverged : kExitNotConverged;
}

std::vector<CompareRow> run_compare(const CompareConfig& cfg, std::ostream& log) {
  const Problem P = cfg.problem.build();
  const std::size_t nt = cfg.targets.size(), nm = cfg.methods.size();

  // Targets referenced through "@name" are solved once, in config order, by
  // the reference method; every pair then shares the resulting support space.
  std::set<std::string> referenced;
  for (const auto& t : cfg.targets)
    for (const auto& ref : t.support)
      if (ref.is_target()) referenced.insert(ref.target());
  const Method reference = parse_method(cfg.reference_method, cfg.base);

  std::map<std::string, GridFunction> solved;
  std::vector<std::optional<SupportSpace>> supports(nt);
  std::vector<std::optional<UnitVector>> directions(nt);
  std::vector<std::string> setup_error(nt);
  for (std::size_t i = 0; i < nt; ++i) {
    const CompareTarget& target = cfg.targets[i];
    try {
      std::vector<GridFunction> basis;
      for (const auto& ref : target.support) {
        if (!ref.is_target()) {
          basis.push_back(import_solution(ref.text, P.grid()));
          continue;
        }
        auto it = solved.find(ref.target());
        if (it == solved.end()) throw SolverError(fmt::format("support target '{}' has no solution", ref.target()));
        basis.push_back(it->second);
      }
      supports[i] = basis.empty() ? SupportSpace(P.grid()) : SupportSpace(std::move(basis), P.gram());
      directions[i] = P.initial_direction(target.initial.indicator(P.kind()));
      if (referenced.contains(target.name)) {
        SolveResult r = lmm_solve(P, *supports[i], *directions[i], reference.solver);
        fmt::print(log, "reference {} / {}: {} after {} iterations, E = {:.10g}\n", target.name, reference.label,
                   to_string(r.trace.termination), r.trace.iterations(), r.trace.rows.back().energy);
        if (!r.trace.converged())
          throw SolverError(fmt::format("reference solve did not converge: {}", r.trace.message));
        solved.emplace(target.name, std::move(r.solution));
      }
    } catch (const Error& e) {
      setup_error[i] = e.what();
      fmt::print(log, "target {}: {}\n", target.name, e.what());
    }
  }

  std::vector<CompareRow> rows(nt * nm);
  std::atomic<std::size_t> next{0};
  std::mutex log_mutex;
  auto worker = [&] {
    for (std::size_t job = next++; job < rows.size(); job = next++) {
      const std::size_t ti = job / nm, mi = job % nm;
      CompareRow& row = rows[job];
      row.target = cfg.targets[ti].name;
      row.method = cfg.methods[mi].label;
      row.final_energy = row.final_gradnorm = std::nan("");
      std::string note;
      if (!setup_error[ti].empty()) {
        note = setup_error[ti];
      } else {
        try {
          const SolveResult r = lmm_solve(P, *supports[ti], *directions[ti], cfg.methods[mi].solver);
          const TraceRow& last = r.trace.rows.back();
          row.iterations = last.k;
          row.seconds = last.seconds;
          row.final_energy = last.energy;
          row.final_gradnorm = last.gradnorm;
          row.converged = r.trace.converged();
          row.peak_evals = r.trace.peak_evals();
          if (!row.converged) note = r.trace.message;
        } catch (const Error& e) {
          note = e.what();
        }
      }
      std::scoped_lock lock(log_mutex);
      fmt::print(log, "{:>8} {:<16} iters {:>5}  E {:>14.8f}  {}\n", row.target, row.method, row.iterations,
                 row.final_energy, row.converged ? "converged" : "NOT converged: " + note);
    }
  };
  {
    std::vector<std::jthread> pool;
    const int threads = std::min<int>(cfg.jobs, static_cast<int>(rows.size()));
    for (int i = 1; i < threads; ++i) pool.emplace_back(worker);
    worker();
  }
  return rows;
}

void write_compare_csv(const std::vector<CompareRow>& rows, const std::filesystem::path& path) {
  if (path.has_parent_path()) prepare_directory(path.parent_path());
  auto out = fmt::output_file(path.string());
  out.print("method,target,iters,seconds,final_energy,final_gradnorm,converged\n");
  for (const CompareRow& r : rows)
    out.print("{},{},{},{},{},{},{}\n", r.method, r.target, r.iterations, num(r.seconds), num(r.final_energy),
              num(r.final_gradnorm), r.converged ? "true" : "false");
}

namespace {

template <class F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const Error& e) {
    fmt::print(err, "error: {}\n", e.what());
  } catch (const std::filesystem::filesystem_error& e) {
    fmt::print(err, "error: {}\n", e.what());
  } catch (const std::system_error& e) {
    fmt::print(err, "error: {}\n", e.what());
  }
  return kExitInvalidInput;
}

}  // namespace

int solve_command(const std::filesystem::path& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] { return run_solve(load_run_config(config), out); });
}

int compare_command(const std::filesystem::path& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const CompareConfig cfg = load_compare_config(config);
    const auto rows = run_compare(cfg, out);
    write_compare_csv(rows, cfg.output);
    fmt::print(out, "wrote {}\n", cfg.output.string());
    const bool all = std::all_of(rows.begin(), rows.end(), [](const CompareRow& r) { return r.converged; });
    return all ? kExitConverged : kExitNotConverged;
  });
}

int info_command(const std::filesystem::path& grid_file, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const GridFunction w = import_solution(grid_file);
    const GridSpec& g = w.grid();
    Eigen::Index imax = 0, imin = 0;
    const double hi = w.values().maxCoeff(&imax), lo = w.values().minCoeff(&imin);
    const Eigen::Index iabs = std::abs(hi) >= std::abs(lo) ? imax : imin;
    const Point p = g.node(static_cast<std::size_t>(iabs));
    fmt::print(out, "grid={}\nnodes={}\nmin={}\nmax={}\nmax_abs={}\n", g.describe(), g.node_count(), num(lo),
               num(hi), num(w.max_abs()));
    if (g.dim() == 1)
      fmt::print(out, "argmax_abs={}\n", num(p.x));
    else
      fmt::print(out, "argmax_abs={},{}\n", num(p.x), num(p.y));
    return kExitConverged;
  });
}

}  // namespace saddle
