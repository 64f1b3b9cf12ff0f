// Hermitian spectral calculus, fractional powers with the kernel
// convention, and operator-monotonicity probes for Loewner order.

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "modlp/spectral.hpp"

using namespace modlp;

namespace {
constexpr double kEps = 1e-12;

Matrix two_by_two(double a, double b, double c, double d) {
  Matrix m(2, 2);
  m << cdouble(a, 0), cdouble(b, 0), cdouble(c, 0), cdouble(d, 0);
  return m;
}
}  // namespace

TEST_CASE("hermitian_spectral returns descending eigenvalues and reconstructs") {
  const Matrix a = two_by_two(2, 1, 1, 2);
  const auto data = hermitian_spectral(a);
  REQUIRE(data.eigenvalues.size() == 2);
  CHECK(data.eigenvalues(0) == Catch::Approx(3.0).margin(kEps));
  CHECK(data.eigenvalues(1) == Catch::Approx(1.0).margin(kEps));
  CHECK((data.reconstruct() - a).norm() < kEps);

  Matrix skew(2, 2);
  skew << cdouble(0, 0), cdouble(1, 0), cdouble(-1, 0), cdouble(0, 0);
  CHECK_THROWS_AS(hermitian_spectral(skew), input_error);
}

TEST_CASE("operator_power square root squares back") {
  const Matrix a = two_by_two(2, 1, 1, 2);
  const Matrix root = operator_power(a, 0.5);
  CHECK((root * root - a).norm() < 1e-12);
  CHECK((operator_power(a, 0.0) - Matrix::Identity(2, 2)).norm() < kEps);
}

TEST_CASE("operator_power sends the kernel to zero for every exponent") {
  Matrix singular = Matrix::Zero(2, 2);
  singular(0, 0) = 1.0;
  // Moore-Penrose convention: the inverse acts only on the range.
  const Matrix inv = operator_power(singular, -1.0);
  CHECK((inv - singular).norm() < kEps);
  const Matrix proj = range_projection(singular);
  CHECK((proj - singular).norm() < kEps);
  CHECK((proj * proj - proj).norm() < kEps);

  Matrix negative = Matrix::Zero(2, 2);
  negative(0, 0) = 1.0;
  negative(1, 1) = -0.5;
  CHECK_THROWS_AS(operator_power(negative, 0.5), input_error);
}

TEST_CASE("min_eigenvalue and spectral_radius on a diagonal example") {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = 1.0;
  m(1, 1) = -2.0;
  CHECK(min_eigenvalue(m) == Catch::Approx(-2.0).margin(kEps));
  CHECK(spectral_radius(m) == Catch::Approx(2.0).margin(kEps));
}

TEST_CASE("square root is operator monotone on a hand-checked pair") {
  const Matrix a = Matrix::Identity(2, 2);
  const Matrix b = two_by_two(2, 1, 1, 2);
  const auto res = loewner_check(a, b, [](double x) { return std::sqrt(x); });
  CHECK(res.monotone);
  // sqrt(B) - I has eigenvalues sqrt(3) - 1 and 0.
  CHECK(res.min_eigenvalue == Catch::Approx(0.0).margin(1e-10));
}

TEST_CASE("squaring violates Loewner monotonicity on the classic pair") {
  const Matrix a = two_by_two(1, 1, 1, 1);
  const Matrix b = two_by_two(2, 1, 1, 1);
  // B - A = diag(1, 0) >= 0, yet B^2 - A^2 = [[3,1],[1,0]] is indefinite.
  const auto res = loewner_check(a, b, [](double x) { return x * x; });
  CHECK_FALSE(res.monotone);
  const double expected = (3.0 - std::sqrt(13.0)) / 2.0;
  CHECK(res.min_eigenvalue == Catch::Approx(expected).margin(1e-10));
}

TEST_CASE("loewner_check rejects pairs that are not ordered") {
  Matrix a = Matrix::Zero(2, 2);
  a(0, 0) = 1.0;
  Matrix b = Matrix::Zero(2, 2);
  b(1, 1) = 1.0;
  CHECK_THROWS_AS(loewner_check(a, b, [](double x) { return x; }),
                  precondition_error);
}
