// Approximation numbers, l^p quasi-norms, and the nuclearity bridge
// constants, checked against closed forms and rank-truncation oracles.

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <vector>

#include "modlp/approx.hpp"
#include "modlp/rng.hpp"

using namespace modlp;

namespace {
constexpr double kEps = 1e-12;
}

TEST_CASE("approximation numbers are the descending singular values") {
  Matrix a = Matrix::Zero(3, 3);
  a(0, 0) = 3.0;
  a(1, 1) = 1.0;
  a(2, 2) = 2.0;
  const auto alphas = approximation_numbers(a);
  REQUIRE(alphas.size() == 3);
  CHECK(alphas[0] == Catch::Approx(3.0).margin(kEps));
  CHECK(alphas[1] == Catch::Approx(2.0).margin(kEps));
  CHECK(alphas[2] == Catch::Approx(1.0).margin(kEps));
}

TEST_CASE("approximation numbers equal distances to lower-rank maps") {
  Rng rng(42);
  const Matrix x = rng.complex_gaussian_matrix(6, 6);
  const auto alphas = approximation_numbers(x);
  Eigen::JacobiSVD<Matrix> svd(x, Eigen::ComputeFullU | Eigen::ComputeFullV);
  for (int n = 0; n < 6; ++n) {
    // Best rank-n approximant keeps the n leading singular triplets.
    Matrix truncated = Matrix::Zero(6, 6);
    for (int k = 0; k < n; ++k)
      truncated += svd.singularValues()(k) * svd.matrixU().col(k) *
                    svd.matrixV().col(k).adjoint();
    const double residual = operator_norm(Matrix(x - truncated));
    CHECK(std::abs(alphas[std::size_t(n)] - residual) < 1e-10);
  }
}

TEST_CASE("lp quasinorm closed forms on the sequence {3, 4}") {
  const std::vector<double> seq{3.0, 4.0};
  CHECK(lp_quasinorm(seq, 1.0) == Catch::Approx(7.0).margin(kEps));
  CHECK(lp_quasinorm(seq, 2.0) == Catch::Approx(5.0).margin(kEps));
  const double half = std::pow(std::sqrt(3.0) + 2.0, 2.0);
  CHECK(lp_quasinorm(seq, 0.5) == Catch::Approx(half).margin(1e-10));
}

TEST_CASE("lp quasinorm rejects bad exponents and negative terms") {
  CHECK_THROWS_AS(lp_quasinorm(std::vector<double>{1.0}, 0.0), parameter_error);
  CHECK_THROWS_AS(lp_quasinorm(std::vector<double>{1.0}, -1.0), parameter_error);
  CHECK_THROWS_AS(lp_quasinorm(std::vector<double>{1.0, -0.5}, 1.0), input_error);
}

TEST_CASE("quasi-norm triangle inequality holds with constant max(2, 2^(2/p-1))") {
  for (double p : {0.5, 1.0, 2.0}) {
    const double c = quasinorm_triangle_constant(p);
    CHECK(c == Catch::Approx(std::max(2.0, std::pow(2.0, 2.0 / p - 1.0))));
    for (std::uint64_t trial = 0; trial < 50; ++trial) {
      Rng rng(Rng::stream(99, trial));
      const Matrix s = rng.complex_gaussian_matrix(6, 6);
      const Matrix t = rng.complex_gaussian_matrix(6, 6);
      const double lhs = lp_quasinorm(Matrix(s + t), p);
      const double rhs = c * (lp_quasinorm(s, p) + lp_quasinorm(t, p));
      CHECK(lhs <= rhs * (1.0 + kEps) + kEps);
    }
  }
}

TEST_CASE("nuclearity constant from the lp bound") {
  // 2^(2 + 3/p): p = 1 gives 32, p = 1/2 gives 256.
  CHECK(nuclearity_from_lp_constant(1.0) == Catch::Approx(32.0).margin(kEps));
  CHECK(nuclearity_from_lp_constant(0.5) == Catch::Approx(256.0).margin(kEps));
  CHECK_THROWS_AS(nuclearity_from_lp_constant(1.5), parameter_error);
  CHECK_THROWS_AS(nuclearity_from_lp_constant(0.0), parameter_error);
}

TEST_CASE("lq from nuclearity constant matches zeta-series closed forms") {
  const double pi = std::acos(-1.0);
  // At p = 1/2 the weight p/(1-p) is 1 and the series exponent is -q,
  // so c_q = (1 + zeta(q))^(1/q) with zeta(4) = pi^4/90, zeta(8) = pi^8/9450.
  const double c4 = lq_from_nuclearity_constant(0.5, 4.0);
  CHECK(c4 == Catch::Approx(std::pow(1.0 + std::pow(pi, 4) / 90.0, 0.25)).epsilon(1e-8));
  const double c8 = lq_from_nuclearity_constant(0.5, 8.0);
  CHECK(c8 ==
        Catch::Approx(std::pow(1.0 + std::pow(pi, 8) / 9450.0, 0.125)).epsilon(1e-8));
  CHECK(lq_from_nuclearity_constant(0.5,
                                    std::numeric_limits<double>::infinity()) == 1.0);
  // q must exceed p/(1-p); at p = 1/2 the threshold is q = 1.
  CHECK_THROWS_AS(lq_from_nuclearity_constant(0.5, 1.0), parameter_error);
  CHECK_THROWS_AS(lq_from_nuclearity_constant(0.5, 0.9), parameter_error);
}

TEST_CASE("p-nuclear sandwich combines the two constants consistently") {
  const std::vector<double> alphas{1.0, 0.5, 0.25, 0.125};
  const double p = 0.5;
  const double q = 4.0;
  const auto sw = pnuclear_sandwich(alphas, p, q);
  double sum_p = 0.0;
  double sum_q = 0.0;
  for (double a : alphas) {
    sum_p += std::pow(a, p);
    sum_q += std::pow(a, q);
  }
  CHECK(sw.lp == Catch::Approx(std::pow(sum_p, 1.0 / p)).epsilon(1e-12));
  CHECK(sw.nu_p_bound == Catch::Approx(256.0 * sw.lp).epsilon(1e-12));
  CHECK(sw.lq == Catch::Approx(std::pow(sum_q, 1.0 / q)).epsilon(1e-12));
  CHECK(sw.c_pq == Catch::Approx(lq_from_nuclearity_constant(p, q)).epsilon(1e-12));
  CHECK(sw.lq <= sw.c_pq * sw.nu_p_bound * (1.0 + 1e-9) + 1e-15);

  const auto sup = pnuclear_sandwich(alphas, p,
                                     std::numeric_limits<double>::infinity());
  CHECK(sup.c_pq == 1.0);
  CHECK(sup.lq == Catch::Approx(1.0).epsilon(1e-12));
}
