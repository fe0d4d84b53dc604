#include "fixtures.hpp"

#include "saddle/error.hpp"
#include "saddle/support.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace saddle;
using namespace saddle::testing;

namespace {

constexpr double pi = std::numbers::pi;

double sinsin(Point p) { return std::sin(pi * p.x) * std::sin(pi * p.y); }

}  // namespace

TEST_CASE("Dirichlet inner product approximates the Dirichlet integral") {
  // (u, u) = integral of |grad u|^2 = 2 pi^2 for sin(pi x) sin(pi y) on (-1,1)^2.
  double previous = 0.0;
  for (int n : {32, 64, 128}) {
    const Problem P = lane_emden(n);
    const GridFunction u = sample(P.grid(), sinsin);
    const double err = std::abs(inner(u, u, P.gram()) - 2.0 * pi * pi);
    CHECK(err < 0.1);
    if (previous > 0.0) CHECK(previous / err > 3.5);
    previous = err;
  }
}

TEST_CASE("the extended-precision form agrees with the matrix product") {
  const Problem P = lane_emden(16);
  std::mt19937_64 rng(7);
  const GridFunction u = random_interior(P.grid(), rng), v = random_interior(P.grid(), rng);
  const double direct = u.values().dot(P.gram().matrix() * v.values());
  CHECK(inner(u, v, P.gram()) == doctest::Approx(direct).epsilon(1e-12));
  CHECK(inner(u, v, P.gram()) == doctest::Approx(inner(v, u, P.gram())).epsilon(1e-14));
}

TEST_CASE("solve inverts apply") {
  const Problem P = lane_emden(24);
  std::mt19937_64 rng(11);
  const GridFunction u = random_interior(P.grid(), rng);
  const GridFunction back = P.gram().solve(P.gram().apply(u));
  CHECK((back - u).max_abs() < 1e-10 * u.max_abs());
}

TEST_CASE("Gram operator construction errors") {
  const GridSpec g = GridSpec::interval(0.0, 1.0, 4);
  Eigen::SparseMatrix<double> neg(5, 5);
  for (int i = 0; i < 5; ++i) neg.insert(i, i) = -1.0;
  CHECK_THROWS_AS(GramOperator(g, neg), SolverError);
  Eigen::SparseMatrix<double> small(3, 3);
  CHECK_THROWS_AS(GramOperator(g, small), DimensionError);

  const Problem P = lane_emden(8), Q = lane_emden(16);
  CHECK_THROWS_AS(inner(GridFunction(P.grid()), GridFunction(Q.grid()), P.gram()), DimensionError);
}

TEST_CASE("unit vectors and the retraction") {
  const Problem P = lane_emden(16);
  const GramOperator& G = P.gram();
  std::mt19937_64 rng(3);
  const UnitVector v = UnitVector::normalize(1e6 * random_interior(P.grid(), rng), G);
  CHECK(std::abs(norm(v, G) - 1.0) <= UnitVector::kNormTolerance);
  CHECK_THROWS_AS(UnitVector::normalize(GridFunction(P.grid()), G), RetractionError);

  const GridFunction g = random_interior(P.grid(), rng);
  for (double alpha : {1e-8, 1e-3, 0.5, 10.0}) {
    const UnitVector w = retract(v, g, alpha, G);
    CHECK(std::abs(norm(w, G) - 1.0) <= UnitVector::kNormTolerance);
  }
  CHECK((retract(v, g, 0.0, G).get() - v.get()).max_abs() == 0.0);
  // v - 1 * v = 0 cannot be normalized.
  CHECK_THROWS_AS(retract(v, v.get(), 1.0, G), RetractionError);

  const GridFunction p = tangent_project(v, g, G);
  CHECK(std::abs(inner(p, v, G)) < 1e-12 * norm(g, G));
}

TEST_CASE("support space projections") {
  const Problem P = lane_emden(16);
  const GramOperator& G = P.gram();
  std::mt19937_64 rng(5);
  const GridFunction a = random_interior(P.grid(), rng), b = random_interior(P.grid(), rng);
  const SupportSpace L({a, b}, G);
  CHECK(L.size() == 2);
  CHECK(L.gram()(0, 1) == doctest::Approx(inner(a, b, G)));

  const GridFunction v = random_interior(P.grid(), rng);
  const SupportDecomposition d = decompose_against_support(v, L, G);
  CHECK(std::abs(inner(d.perp, a, G)) < 1e-10 * norm(v, G) * norm(a, G));
  CHECK(std::abs(inner(d.perp, b, G)) < 1e-10 * norm(v, G) * norm(b, G));
  CHECK(((d.perp + L.combine(d.coeffs)) - v).max_abs() < 1e-12 * v.max_abs());

  // tau of the reference direction itself is 1.
  const SupportSpace R = L.with_reference(v);
  CHECK(decompose_against_support(v, R, G).tau == doctest::Approx(1.0));

  const SupportDecomposition trivial = decompose_against_support(v, SupportSpace(P.grid()), G);
  CHECK(trivial.perp_norm == doctest::Approx(norm(v, G)));
  CHECK(trivial.tau == 0.0);
}

TEST_CASE("dependent support bases are rejected") {
  const Problem P = lane_emden(16);
  std::mt19937_64 rng(9);
  const GridFunction a = random_interior(P.grid(), rng);
  CHECK_THROWS_AS(SupportSpace({a, 2.0 * a}, P.gram()), ConditioningError);
  CHECK_THROWS_AS(SupportSpace({GridFunction(P.grid())}, P.gram()), ConditioningError);
  const Problem Q = lane_emden(8);
  CHECK_THROWS_AS(SupportSpace({a}, Q.gram()), DimensionError);
}
