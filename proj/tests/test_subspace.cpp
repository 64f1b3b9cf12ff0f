// Standard subspaces and their Tomita data: colspace helpers, the
// modular objects of hand-checked subspaces, and the conjugation split.

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "modlp/rng.hpp"
#include "modlp/subspace.hpp"

using namespace modlp;

namespace {
constexpr double kEps = 1e-12;
}

TEST_CASE("complex_colspace finds rank and honours the absolute floor") {
  Rng rng(21);
  const Vector v = rng.complex_gaussian_matrix(4, 1);
  const Vector w = rng.complex_gaussian_matrix(4, 1);
  Matrix a(4, 3);
  a.col(0) = v;
  a.col(1) = 2.0 * v;
  a.col(2) = w;
  const Matrix q = complex_colspace(a);
  CHECK(q.cols() == 2);
  CHECK((q.adjoint() * q - Matrix::Identity(2, 2)).norm() < 1e-12);
  // Span is preserved: projecting the columns of a changes nothing.
  CHECK((q * (q.adjoint() * a) - a).norm() < 1e-10 * a.norm());

  // An absolute floor of 0.5 discards a numerically tiny column outright.
  Matrix tiny = Matrix::Zero(3, 1);
  tiny(0, 0) = 1e-3;
  CHECK(complex_colspace(tiny, kKernelRelTol, 0.5).cols() == 0);
  CHECK(complex_colspace(tiny).cols() == 1);
}

TEST_CASE("real_subspace_gap separates equal and orthogonal spans") {
  RealMatrix e1 = RealMatrix::Zero(3, 1);
  e1(0, 0) = 1.0;
  RealMatrix e1_scaled = 2.5 * e1;
  RealMatrix e2 = RealMatrix::Zero(3, 1);
  e2(1, 0) = 1.0;
  CHECK(real_subspace_gap(e1, e1_scaled) < kEps);
  CHECK(real_subspace_gap(e1, e2) == Catch::Approx(1.0).margin(kEps));
}

TEST_CASE("standardness of R^n inside C^n and of degenerate spans") {
  const StandardSubspace real_axis(2, Matrix(Matrix::Identity(2, 2)));
  CHECK(real_axis.standard);
  CHECK(real_axis.dim_real() == 2);

  // One real direction in C^2: too small to be standard.
  Matrix single = Matrix::Zero(2, 1);
  single(0, 0) = 1.0;
  CHECK_FALSE(StandardSubspace(2, single).standard);

  // e1 and i*e1 span a complex line: H intersects iH, not standard.
  Matrix line(2, 2);
  line.setZero();
  line(0, 0) = cdouble(1, 0);
  line(0, 1) = cdouble(0, 1);
  CHECK_FALSE(StandardSubspace(2, line).standard);

  Matrix dependent(2, 2);
  dependent.col(0) = single.col(0);
  dependent.col(1) = 3.0 * single.col(0);
  CHECK_THROWS_AS(StandardSubspace(2, dependent), input_error);
}

TEST_CASE("tomita data of the real axis is trivial") {
  const StandardSubspace h(2, Matrix(Matrix::Identity(2, 2)));
  const auto td = tomita_data(h);
  CHECK((td.delta - Matrix::Identity(2, 2)).norm() < 1e-9);
  CHECK((td.r_projection - Matrix::Identity(2, 2)).norm() < 1e-9);
  // S is the entrywise conjugation here.
  Rng rng(22);
  const Vector v = rng.complex_gaussian_matrix(2, 1);
  CHECK((td.s.apply(v) - v.conjugate()).norm() < 1e-9);
}

TEST_CASE("graph subspace {(x, sqrt(lambda) conj(x))} has delta = diag(lambda, 1/lambda)") {
  const double lambda = 0.25;
  Matrix basis(2, 2);
  // Images of x = 1 and x = i under x -> (x, sqrt(lambda) conj(x)).
  basis(0, 0) = cdouble(1, 0);
  basis(1, 0) = cdouble(std::sqrt(lambda), 0);
  basis(0, 1) = cdouble(0, 1);
  basis(1, 1) = cdouble(0, -std::sqrt(lambda));
  const StandardSubspace h(2, basis);
  REQUIRE(h.standard);
  const auto td = tomita_data(h);
  Matrix expect = Matrix::Zero(2, 2);
  expect(0, 0) = lambda;
  expect(1, 1) = 1.0 / lambda;
  CHECK((td.delta - expect).norm() < 1e-9);
}

TEST_CASE("tomita data of a random standard subspace obeys the modular relations") {
  Rng rng(23);
  const auto h = random_standard_subspace(rng, 3);
  const auto td = tomita_data(h);
  // S fixes the subspace pointwise.
  for (Eigen::Index j = 0; j < h.basis.cols(); ++j) {
    const Vector col = h.basis.col(j);
    CHECK((td.s.apply(col) - col).norm() < 1e-8 * std::max(1.0, col.norm()));
  }
  CHECK((td.r_projection - Matrix::Identity(3, 3)).norm() < 1e-9);
  // J Delta J = Delta^{-1} on the standard part.
  const Matrix jdj = td.j_antilinear * td.delta.conjugate() * td.j_antilinear.adjoint();
  const Matrix delta_inv = operator_power(td.delta, -1.0);
  CHECK((jdj - delta_inv).norm() < 1e-7 * std::max(1.0, delta_inv.norm()));
  CHECK(td.degenerate_basis.cols() == 0);
}

TEST_CASE("construct_conjugation yields a symmetry of the subspace") {
  Rng rng(24);
  const auto h = random_standard_subspace(rng, 3);
  const auto gamma = construct_conjugation(h);
  RealMatrix gh(6, 3);
  for (Eigen::Index j = 0; j < 3; ++j)
    gh.col(j) = realify(Vector(gamma.apply(Vector(h.basis.col(j)))));
  CHECK(real_subspace_gap(h.realified_basis(), gh) < 1e-8);
  const auto td = tomita_data(h);
  // Gamma commutes with the modular operator.
  const Matrix sand = gamma.sandwich(td.delta);
  CHECK((sand - td.delta).norm() < 1e-7 * std::max(1.0, td.delta.norm()));
}

TEST_CASE("gamma split reassembles the real projection onto H") {
  Rng rng(25);
  const auto h = random_standard_subspace(rng, 4);
  const auto gamma = construct_conjugation(h);
  const auto split = gamma_split_subspace(h, gamma);
  CHECK(split.k_plus.cols() + split.k_minus.cols() >= 1);
  if (split.k_plus.cols() > 0)
    CHECK((split.k_plus.adjoint() * split.k_plus -
           Matrix::Identity(split.k_plus.cols(), split.k_plus.cols()))
              .norm() < 1e-9);
  // The postconditions inside gamma_split_subspace assert the projection
  // identity; reaching this point means the split is consistent.
  const auto e = gamma_split_subspace(h, gamma);
  CHECK(e.k_plus.cols() == split.k_plus.cols());

  const Conjugation mismatched = Conjugation::entrywise(4);
  CHECK_THROWS_AS(gamma_split_subspace(h, mismatched), precondition_error);
}

TEST_CASE("combined operator norm equals the part maximum for commuting data") {
  Rng rng(26);
  const Matrix u = rng.haar_unitary(3);
  const Conjugation gamma(Matrix(u * u.transpose()));
  // Conjugating real matrices by u produces operators commuting with gamma.
  const Matrix t_plus = u * rng.real_gaussian_matrix(3, 3).cast<cdouble>() * u.adjoint();
  const Matrix t_minus = u * rng.real_gaussian_matrix(3, 3).cast<cdouble>() * u.adjoint();
  const auto rep = tgamma_norm_check(t_plus, t_minus, gamma, {0.5, 1.0, 2.0});
  CHECK(rep.norm_combined ==
        Catch::Approx(rep.norm_max_parts).margin(1e-10 * rep.norm_max_parts));
  REQUIRE(rep.rows.size() == 3);
  for (const auto& row : rep.rows) {
    CHECK(row.combined_rp <= row.upper_combined * (1.0 + 1e-9));
    CHECK(row.part_plus_p <= row.upper_parts * (1.0 + 1e-9));
    CHECK(row.part_minus_p <= row.upper_parts * (1.0 + 1e-9));
  }

  // A generic complex matrix does not commute with gamma.
  const Matrix bad = rng.complex_gaussian_matrix(3, 3);
  CHECK_THROWS_AS(tgamma_norm_check(bad, t_minus, gamma, {1.0}), precondition_error);
}
