#include "saddle/app.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
  CLI::App app{"Multiple saddle points of semilinear elliptic problems by the local minimax method"};
  app.require_subcommand(1);

  std::string config, grid_file;
  auto* solve = app.add_subcommand("solve", "Run one solve; writes solution.grid, trace.csv and summary");
  solve->add_option("config", config, "Run configuration (INI)")->required()->check(CLI::ExistingFile);
  auto* compare = app.add_subcommand("compare", "Run a (target x method) sweep and write the comparison CSV");
  compare->add_option("config", config, "Comparison configuration (INI)")->required()->check(CLI::ExistingFile);
  auto* info = app.add_subcommand("info", "Describe a grid file");
  info->add_option("file", grid_file, "solution.grid")->required()->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : saddle::kExitInvalidInput;
  }
  if (*solve) return saddle::solve_command(config, std::cout, std::cerr);
  if (*compare) return saddle::compare_command(config, std::cout, std::cerr);
  return saddle::info_command(grid_file, std::cout, std::cerr);
}
