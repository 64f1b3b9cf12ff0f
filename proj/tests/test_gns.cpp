// GNS construction for states on matrix algebras: modular spectra on
// hand-checked densities, faithfulness detection, and the interpolation
// maps with their monotonicity and convexity controls.

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "modlp/gns.hpp"
#include "modlp/rng.hpp"

using namespace modlp;

namespace {

Matrix unit(Eigen::Index d, Eigen::Index i, Eigen::Index j) {
  Matrix e = Matrix::Zero(d, d);
  e(i, j) = 1.0;
  return e;
}

Matrix diag2(double a, double b) {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

}  // namespace

TEST_CASE("matrix algebra constructors and inclusion tests") {
  CHECK(MatrixAlgebra::full(2).dim() == 4);
  CHECK(MatrixAlgebra::diagonal(3).dim() == 3);
  CHECK(MatrixAlgebra::diagonal(2).is_subalgebra_of(MatrixAlgebra::full(2)));
  CHECK_FALSE(MatrixAlgebra::full(2).is_subalgebra_of(MatrixAlgebra::diagonal(2)));

  // One off-diagonal unit generates all of M_2.
  const auto generated = MatrixAlgebra::from_generators(2, {unit(2, 0, 1)});
  CHECK(generated.dim() == 4);
  CHECK(generated.contains(unit(2, 1, 0)));

  // {I, e12} is not adjoint-closed, so it is not an algebra span.
  CHECK_THROWS_AS(MatrixAlgebra::from_spanning_set(
                      2, {Matrix(Matrix::Identity(2, 2)), unit(2, 0, 1)}),
                  input_error);
}

TEST_CASE("algebra states validate hermiticity, trace, and positivity") {
  CHECK_THROWS_AS(AlgebraState(unit(2, 0, 1)), input_error);
  CHECK_THROWS_AS(AlgebraState(diag2(0.7, 0.7)), input_error);
  CHECK_THROWS_AS(AlgebraState(diag2(1.5, -0.5)), input_error);
  const AlgebraState ok(diag2(0.5, 0.5));
  CHECK(ok.omega(unit(2, 0, 0)).real() == Catch::Approx(0.5));
}

TEST_CASE("gns data for the faithful density diag(2/3, 1/3) on M_2") {
  const AlgebraState state(diag2(2.0 / 3.0, 1.0 / 3.0));
  const auto gns = gns_construct(MatrixAlgebra::full(2), state);
  CHECK(gns.rep_dim == 4);
  CHECK(gns.faithful);
  CHECK((gns.q_projection - Matrix::Identity(4, 4)).norm() < 1e-9);

  // Modular spectrum is the ratio set of the density eigenvalues.
  const auto spec = hermitian_spectral(gns.modular_delta);
  REQUIRE(spec.eigenvalues.size() == 4);
  CHECK(spec.eigenvalues(0) == Catch::Approx(2.0).margin(1e-10));
  CHECK(spec.eigenvalues(1) == Catch::Approx(1.0).margin(1e-10));
  CHECK(spec.eigenvalues(2) == Catch::Approx(1.0).margin(1e-10));
  CHECK(spec.eigenvalues(3) == Catch::Approx(0.5).margin(1e-10));

  // S a Omega = a* Omega on the cyclic vector.
  const Vector lhs = gns.tomita_s.apply(gns.vector_of(unit(2, 0, 1)));
  const Vector rhs = gns.vector_of(unit(2, 1, 0));
  CHECK((lhs - rhs).norm() < 1e-8);

  // The cyclic vector represents the identity and is a unit vector.
  CHECK((gns.vector_of(Matrix(Matrix::Identity(2, 2))) - gns.cyclic).norm() < 1e-10);
  CHECK(gns.cyclic.norm() == Catch::Approx(1.0).margin(1e-10));

  // Elements outside the algebra have no GNS vector.
  const auto small = gns_construct(MatrixAlgebra::diagonal(2), state);
  CHECK_THROWS_AS(small.vector_of(unit(2, 0, 1)), input_error);
}

TEST_CASE("gns data for a pure density detects non-faithfulness") {
  const AlgebraState pure(diag2(1.0, 0.0));
  const auto gns = gns_construct(MatrixAlgebra::full(2), pure);
  CHECK(gns.rep_dim == 2);
  CHECK_FALSE(gns.faithful);
  // The commutant of an irreducible representation is trivial, so Q is
  // the rank-one projection onto the cyclic line.
  CHECK(gns.q_projection.trace().real() == Catch::Approx(1.0).margin(1e-9));
}

TEST_CASE("diagonal elements sit in the centralizer: xi map is an isometry frame") {
  const AlgebraState state(diag2(2.0 / 3.0, 1.0 / 3.0));
  const auto gns = gns_construct(MatrixAlgebra::full(2), state);
  const auto xi = xi_alpha_map(gns, MatrixAlgebra::diagonal(2), 0.25, 500, 7);
  CHECK(xi.alpha == 0.25);
  REQUIRE(xi.surrogate.size() == 2);
  CHECK(xi.surrogate[0] == Catch::Approx(1.0).margin(1e-9));
  CHECK(xi.surrogate[1] == Catch::Approx(1.0).margin(1e-9));
  REQUIRE(!xi.sampled_lower.empty());
  CHECK(xi.sampled_lower[0] > 0.0);
  CHECK(xi.sampled_lower[0] <= 1.0 + 1e-9);

  CHECK_THROWS_AS(xi_alpha_map(gns, MatrixAlgebra::diagonal(2), 0.75, 10, 7),
                  parameter_error);
}

TEST_CASE("restriction to a subalgebra never shrinks the modular vector norms") {
  const AlgebraState state(diag2(0.7, 0.3));
  const auto rows = inclusion_monotonicity_check(
      MatrixAlgebra::full(2), MatrixAlgebra::diagonal(2), state, {0.0, 0.25, 0.5});
  REQUIRE(!rows.empty());
  for (const auto& row : rows) {
    CHECK(row.pass);
    CHECK(row.lhs <= row.rhs + 1e-9 * std::max(1.0, row.rhs));
  }
}

TEST_CASE("state mixtures obey the direct-sum convexity bound") {
  Rng rng(3);
  const AlgebraState s1(rng.density_matrix(3));
  const AlgebraState s2(rng.density_matrix(3));
  const auto rep = convex_mixture_check(MatrixAlgebra::full(3), MatrixAlgebra::diagonal(3),
                                        s1, s2, 0.3, 0.25, 1.0);
  CHECK(rep.pass);
  CHECK(rep.lp_mixture <= rep.lp_direct_sum * (1.0 + 1e-9) + 1e-9);
  CHECK(rep.lp_direct_sum <= rep.rhs * (1.0 + 1e-9) + 1e-9);
  CHECK_THROWS_AS(convex_mixture_check(MatrixAlgebra::full(3), MatrixAlgebra::diagonal(3),
                                       s1, s2, 1.5, 0.25, 1.0),
                  parameter_error);
}
