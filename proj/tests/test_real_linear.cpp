// Real-linear operators on complex space: realification round trips,
// real approximation numbers, and conjugation algebra.

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "modlp/real_linear.hpp"
#include "modlp/rng.hpp"

using namespace modlp;

namespace {
constexpr double kEps = 1e-12;

RealLinearOperator random_real_linear(std::uint64_t seed, Eigen::Index n) {
  Rng rng(seed);
  RealLinearOperator y;
  y.linear = rng.complex_gaussian_matrix(n, n);
  y.antilinear = rng.complex_gaussian_matrix(n, n);
  return y;
}
}  // namespace

TEST_CASE("realify and split_real_linear are mutually inverse") {
  const auto y = random_real_linear(11, 3);
  const RealMatrix r = realify(y);
  const auto back = split_real_linear(r);
  CHECK((back.linear - y.linear).norm() < 1e-13);
  CHECK((back.antilinear - y.antilinear).norm() < 1e-13);
}

TEST_CASE("realified matrix reproduces the action on vectors") {
  const auto y = random_real_linear(12, 3);
  Rng rng(13);
  const Vector v = rng.complex_gaussian_matrix(3, 1);
  const Vector expect = y.apply(v);
  RealVector vr(6);
  vr << v.real(), v.imag();
  const RealVector wr = realify(y) * vr;
  CHECK((wr.head(3) - expect.real()).norm() < 1e-13);
  CHECK((wr.tail(3) - expect.imag()).norm() < 1e-13);
}

TEST_CASE("compose matches the realified matrix product") {
  const auto a = random_real_linear(14, 3);
  const auto b = random_real_linear(15, 3);
  const auto ab = a.compose(b);
  CHECK((realify(ab) - RealMatrix(realify(a) * realify(b))).norm() < 1e-12);
}

TEST_CASE("real_adjoint is the adjoint for the real inner product Re<u,v>") {
  const auto y = random_real_linear(16, 3);
  const auto ya = y.real_adjoint();
  Rng rng(17);
  for (int trial = 0; trial < 8; ++trial) {
    const Vector u = rng.complex_gaussian_matrix(3, 1);
    const Vector v = rng.complex_gaussian_matrix(3, 1);
    const double lhs = (y.apply(u).adjoint() * v).real()(0, 0);
    const double rhs = (u.adjoint() * ya.apply(v)).real()(0, 0);
    CHECK(std::abs(lhs - rhs) < 1e-12);
  }
}

TEST_CASE("complex-linear maps double their singular values under realification") {
  Matrix d = Matrix::Zero(2, 2);
  d(0, 0) = 2.0;
  d(1, 1) = 1.0;
  const auto y = RealLinearOperator::from_linear(d);
  const auto alphas = real_approximation_numbers(y);
  REQUIRE(alphas.size() == 4);
  CHECK(alphas[0] == Catch::Approx(2.0).margin(kEps));
  CHECK(alphas[1] == Catch::Approx(2.0).margin(kEps));
  CHECK(alphas[2] == Catch::Approx(1.0).margin(kEps));
  CHECK(alphas[3] == Catch::Approx(1.0).margin(kEps));
  // ||Y||_{R,p} = 2^(1/p) ||Y||_p for a complex-linear Y.
  CHECK(real_lp_quasinorm(y, 1.0) == Catch::Approx(2.0 * 3.0).margin(1e-10));
  CHECK(real_lp_quasinorm(y, 2.0) ==
        Catch::Approx(std::sqrt(2.0) * std::sqrt(5.0)).margin(1e-10));
}

TEST_CASE("entrywise conjugation on C realifies to diag(1, -1)") {
  const auto g = Conjugation::entrywise(1);
  const RealMatrix r = realify(g.as_real_linear());
  RealMatrix expect(2, 2);
  expect << 1, 0, 0, -1;
  CHECK((r - expect).norm() < kEps);
  CHECK(real_lp_quasinorm(g.as_real_linear(), 1.0) == Catch::Approx(2.0).margin(kEps));
}

TEST_CASE("conjugation constructor validates involution and antiunitarity") {
  // Involutive but with singular values {2, 1/2}: not antiunitary.
  Matrix skew = Matrix::Zero(2, 2);
  skew(0, 1) = 2.0;
  skew(1, 0) = 0.5;
  CHECK_THROWS_AS(Conjugation(skew), input_error);
  CHECK_THROWS_AS(Conjugation(Matrix(2.0 * Matrix::Identity(2, 2))), input_error);
  CHECK_NOTHROW(Conjugation(Matrix(Matrix::Identity(2, 2))));
}

TEST_CASE("plus and minus projections split the identity") {
  const auto g = Conjugation::entrywise(1);
  const auto p_plus = g.plus_projection();
  const auto p_minus = g.minus_projection();
  const auto sum = RealMatrix(realify(p_plus) + realify(p_minus));
  CHECK((sum - RealMatrix::Identity(2, 2)).norm() < kEps);
  CHECK((realify(p_plus.compose(p_plus)) - realify(p_plus)).norm() < kEps);
  // On C the fixed space of entrywise conjugation is the real axis.
  Vector one(1), imag_unit(1);
  one(0) = cdouble(1, 0);
  imag_unit(0) = cdouble(0, 1);
  CHECK((p_plus.apply(one) - one).norm() < kEps);
  CHECK(p_plus.apply(imag_unit).norm() < kEps);
}

TEST_CASE("sandwich by a conjugation preserves hermiticity and spectrum") {
  Rng rng(18);
  const Matrix u = rng.haar_unitary(3);
  const Conjugation g(Matrix(u * u.transpose()));
  Matrix h = rng.complex_gaussian_matrix(3, 3);
  h = Matrix((h + h.adjoint()) / 2.0);
  const Matrix sandwiched = g.sandwich(h);
  CHECK(is_hermitian(sandwiched, 1e-10));
  const auto before = approximation_numbers(h);
  const auto after = approximation_numbers(sandwiched);
  for (std::size_t i = 0; i < before.size(); ++i)
    CHECK(before[i] == Catch::Approx(after[i]).margin(1e-10));
}

TEST_CASE("linear and antilinear halves are dominated in real quasi-norm") {
  const auto g = Conjugation::entrywise(3);
  for (double p : {0.5, 1.0, 2.0}) {
    for (std::uint64_t trial = 0; trial < 6; ++trial) {
      const auto y = random_real_linear(Rng::stream(19, trial), 3);
      const double real_norm = real_lp_quasinorm(y, p);
      CHECK(lp_quasinorm(y.linear, p) <= real_norm * (1.0 + 1e-9) + 1e-12);
      const Matrix anti_part = antilinear_times_conjugation(y, g);
      CHECK(lp_quasinorm(anti_part, p) <= real_norm * (1.0 + 1e-9) + 1e-12);
    }
  }
}

TEST_CASE("antilinear_times_conjugation composes the antilinear parts") {
  const auto y = random_real_linear(20, 2);
  const auto g = Conjugation::entrywise(2);
  const Matrix prod = antilinear_times_conjugation(y, g);
  // For the entrywise conjugation the product is just the antilinear block.
  CHECK((prod - y.antilinear).norm() < kEps);
}
