#include "saddle/grid_io.hpp"

#include "saddle/error.hpp"

#include <fmt/format.h>
#include <fmt/os.h>

#include <charconv>
#include <fstream>
#include <sstream>

namespace saddle {

namespace {

constexpr const char* kMagic = "saddle-grid";
constexpr const char* kVersion = "v1";

double parse_double(const std::string& token, const std::filesystem::path& path, const char* what) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size())
    throw InputError(fmt::format("{}: bad {} '{}'", path.string(), what, token));
  return value;
}

int parse_int(const std::string& token, const std::filesystem::path& path, const char* what) {
  int value = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size())
    throw InputError(fmt::format("{}: bad {} '{}'", path.string(), what, token));
  return value;
}

}  // namespace

void export_solution(const GridFunction& w, const std::filesystem::path& path) {
  const GridSpec& g = w.grid();
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  auto out = fmt::output_file(path.string());
  out.print("{} {} {} {} {:.17g} {:.17g} {:.17g} {:.17g}\n", kMagic, kVersion, g.nx(), g.ny(), g.x_lo(), g.x_hi(),
            g.y_lo(), g.y_hi());
  const int rows = g.ny() + 1, cols = g.nx() + 1;
  for (int j = 0; j < rows; ++j) {
    for (int i = 0; i < cols; ++i) out.print("{}{:.17g}", i == 0 ? "" : " ", w[g.index(i, j)]);
    out.print("\n");
  }
}

GridFunction import_solution(const std::filesystem::path& path, const std::optional<GridSpec>& expected) {
  std::ifstream in(path);
  if (!in) throw InputError(fmt::format("cannot open grid file '{}'", path.string()));
  std::string header;
  std::getline(in, header);
  std::istringstream hs(header);
  std::string magic, version, nx, ny, x_lo, x_hi, y_lo, y_hi, extra;
  hs >> magic >> version >> nx >> ny >> x_lo >> x_hi >> y_lo >> y_hi;
  if (magic != kMagic || version != kVersion || !hs || (hs >> extra))
    throw InputError(fmt::format("{}: expected header '{} {} <nx> <ny> <x_lo> <x_hi> <y_lo> <y_hi>', got '{}'",
                                 path.string(), kMagic, kVersion, header));
  const int cols = parse_int(nx, path, "nx"), rows = parse_int(ny, path, "ny");
  const double xl = parse_double(x_lo, path, "x_lo"), xh = parse_double(x_hi, path, "x_hi");
  const GridSpec grid = rows == 0 ? GridSpec::interval(xl, xh, cols)
                                  : GridSpec::rectangle(xl, xh, parse_double(y_lo, path, "y_lo"),
                                                        parse_double(y_hi, path, "y_hi"), cols, rows);
  if (expected && !(*expected == grid))
    throw DimensionError(fmt::format("{} holds a {} grid, but the problem uses {}", path.string(), grid.describe(),
                                     expected->describe()));

  Eigen::VectorXd values(static_cast<Eigen::Index>(grid.node_count()));
  std::string token;
  Eigen::Index k = 0;
  while (in >> token) {
    if (k == values.size())
      throw InputError(fmt::format("{}: more than {} values", path.string(), values.size()));
    values[k++] = parse_double(token, path, "value");
  }
  if (k != values.size())
    throw InputError(fmt::format("{}: expected {} values, found {}", path.string(), values.size(), k));
  return GridFunction(grid, std::move(values));
}

}  // namespace saddle
