#include "saddle/error.hpp"
#include "saddle/grid.hpp"
#include "saddle/region.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace saddle;

TEST_CASE("grid numbering is row-major with pinned far edges") {
  const GridSpec g = GridSpec::square(-1.0, 1.0, 8);
  CHECK(g.dim() == 2);
  CHECK(g.node_count() == 81);
  CHECK(g.index(3, 2) == 2 * 9 + 3);
  CHECK(g.column(g.index(3, 2)) == 3);
  CHECK(g.row(g.index(3, 2)) == 2);
  const Point far = g.node(g.index(8, 8));
  CHECK(far.x == 1.0);
  CHECK(far.y == 1.0);
  const Point mid = g.node(g.index(4, 4));
  CHECK(mid.x == doctest::Approx(0.0));
  CHECK(mid.y == doctest::Approx(0.0));
}

TEST_CASE("boundary detection in one and two dimensions") {
  const GridSpec g = GridSpec::square(0.0, 1.0, 4);
  int boundary = 0;
  for (std::size_t k = 0; k < g.node_count(); ++k) boundary += g.on_boundary(k);
  CHECK(boundary == 16);
  const GridSpec line = GridSpec::interval(0.0, 1.0, 4);
  CHECK(line.dim() == 1);
  CHECK(line.on_boundary(0));
  CHECK(line.on_boundary(4));
  CHECK_FALSE(line.on_boundary(2));
}

TEST_CASE("degenerate grids are rejected") {
  CHECK_THROWS_AS(GridSpec::interval(0.0, 1.0, 3), InputError);
  CHECK_THROWS_AS(GridSpec::interval(1.0, 1.0, 8), InputError);
  CHECK_THROWS_AS(GridSpec::rectangle(0.0, 1.0, 0.0, 1.0, 8, 2), InputError);
}

TEST_CASE("grid function arithmetic checks the grid") {
  const GridSpec a = GridSpec::square(-1.0, 1.0, 4), b = GridSpec::square(-1.0, 1.0, 8);
  GridFunction u(a), w(b);
  CHECK_THROWS_AS(u += w, DimensionError);
  CHECK_THROWS_AS(GridFunction(a, Eigen::VectorXd::Zero(3)), DimensionError);
  Eigen::VectorXd bad = Eigen::VectorXd::Zero(25);
  bad[3] = std::nan("");
  CHECK_THROWS_AS(GridFunction(a, bad), InputError);

  GridFunction x(a, Eigen::VectorXd::Constant(25, 2.0));
  GridFunction y(a, Eigen::VectorXd::Constant(25, 3.0));
  const GridFunction z = GridFunction::axpy(x, -2.0, y);
  CHECK(z[7] == doctest::Approx(-4.0));
  CHECK((x - y).max_abs() == doctest::Approx(1.0));
}

TEST_CASE("region grammar") {
  const Region h = Region::parse("halfplane(1,0,0)");
  CHECK(h.contains({0.5, 0.0}));
  CHECK_FALSE(h.contains({-0.5, 0.0}));
  CHECK_FALSE(h.contains({0.0, 0.3}));

  const Region q = Region::parse("union(quadrant(1,1), quadrant(-1,-1))");
  CHECK(q.contains({0.2, 0.3}));
  CHECK(q.contains({-0.2, -0.3}));
  CHECK_FALSE(q.contains({-0.2, 0.3}));

  const Region ring = Region::parse("complement(disc(0.5))");
  CHECK(ring.contains({0.9, 0.0}));
  CHECK_FALSE(ring.contains({0.1, 0.1}));

  CHECK(Region::parse("band(1,1,0.3)").contains({0.3, 0.3}));
  CHECK_FALSE(Region::parse("band(1,1,0.3)").contains({0.1, 0.1}));
  CHECK(Region::parse("absdiff(0)").contains({0.5, 0.1}));
  CHECK(Region::parse("intersection(all, halfplane(0,-1,0))").contains({0.0, -1.0}));
  CHECK_FALSE(Region::parse("none").contains({0.0, 0.0}));

  CHECK_THROWS_AS(Region::parse("halfplane(1,0)"), InputError);
  CHECK_THROWS_AS(Region::parse("circle(1)"), InputError);
  CHECK_THROWS_AS(Region::parse("all extra"), InputError);
}

TEST_CASE("boundary density expressions") {
  const BoundaryDensity rho = BoundaryDensity::parse("1 - cos(theta)");
  CHECK(rho(0.0) == doctest::Approx(0.0));
  CHECK(rho(std::numbers::pi) == doctest::Approx(2.0));
  const BoundaryDensity p = BoundaryDensity::parse("2^3 - abs(-1) + exp(0) * sin(pi/2) / 2");
  CHECK(p(0.0) == doctest::Approx(7.5));
  CHECK(BoundaryDensity::parse("-theta^2")(3.0) == doctest::Approx(-9.0));
  CHECK_THROWS_AS(BoundaryDensity::parse("1 +"), InputError);
  CHECK_THROWS_AS(BoundaryDensity::parse("tan(theta)"), InputError);
  CHECK_THROWS_AS(BoundaryDensity::parse("(theta"), InputError);
}
