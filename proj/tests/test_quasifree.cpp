// Quasi-free states from symplectic data: the frame operator Sigma on
// hand-checked single modes, invariance under data changes of basis, the
// modular/defect restriction chain, and the no-alpha interpolation lemma.

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "modlp/quasifree.hpp"

using namespace modlp;

namespace {

RealMatrix canonical_sigma(Eigen::Index modes) {
  RealMatrix s = RealMatrix::Zero(2 * modes, 2 * modes);
  for (Eigen::Index k = 0; k < modes; ++k) {
    s(k, modes + k) = 1.0;
    s(modes + k, k) = -1.0;
  }
  return s;
}

QuasiFreeState single_mode(double c) {
  const PreSymplecticSpace space(canonical_sigma(1));
  const CovarianceForm cov(RealMatrix(c * RealMatrix::Identity(2, 2)));
  return build_quasifree(space, cov);
}

// Two uncoupled modes with frequencies nu1, nu2 >= 1 in ground-state
// normalization mu = nu/2 per quadrature.
QuasiFreeState two_modes(double nu1, double nu2) {
  const PreSymplecticSpace space(canonical_sigma(2));
  RealMatrix mu = RealMatrix::Zero(4, 4);
  mu(0, 0) = mu(2, 2) = nu1 / 2.0;
  mu(1, 1) = mu(3, 3) = nu2 / 2.0;
  return build_quasifree(space, CovarianceForm(mu));
}

std::vector<double> sorted_eigs(const QuasiFreeState& s) {
  std::vector<double> v(s.sigma_spec.eigenvalues.data(),
                        s.sigma_spec.eigenvalues.data() + s.sigma_spec.eigenvalues.size());
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

TEST_CASE("minimal-uncertainty covariance gives a pure state") {
  const auto state = single_mode(0.5);
  CHECK(state.is_pure());
  const auto eigs = sorted_eigs(state);
  REQUIRE(eigs.size() == 2);
  CHECK(eigs[0] == Catch::Approx(-1.0).margin(1e-10));
  CHECK(eigs[1] == Catch::Approx(1.0).margin(1e-10));
  CHECK((state.r_projection - Matrix::Identity(2, 2)).norm() < 1e-9);
  // Pure modes carry no modular dynamics: the kernel convention returns 0.
  CHECK(state.delta_power(0.25).norm() < 1e-12);
  CHECK(state.one_particle_projection().norm() < 1e-12);
}

TEST_CASE("a thermal single mode has the hand-computed modular spectrum") {
  const auto state = single_mode(5.0 / 6.0);
  CHECK_FALSE(state.is_pure());
  const auto eigs = sorted_eigs(state);
  CHECK(eigs[0] == Catch::Approx(-0.6).margin(1e-10));
  CHECK(eigs[1] == Catch::Approx(0.6).margin(1e-10));

  // delta = (1-Sigma)/(1+Sigma) has eigenvalues 0.25 and 4.
  const auto dspec = hermitian_spectral(state.delta_power(1.0));
  CHECK(dspec.eigenvalues(0) == Catch::Approx(4.0).margin(1e-9));
  CHECK(dspec.eigenvalues(1) == Catch::Approx(0.25).margin(1e-9));

  CHECK((state.defect_power(0.5) - Matrix(0.8 * Matrix::Identity(2, 2))).norm() < 1e-10);

  const Matrix via_h = modular_from_sigma(state, [](double d) { return d; });
  CHECK((via_h - state.delta_power(1.0)).norm() < 1e-12);

  // kappa = sqrt(1 + Sigma) has eigenvalues sqrt(1.6) and sqrt(0.4).
  const auto kspec = hermitian_spectral(state.kappa());
  CHECK(kspec.eigenvalues(0) == Catch::Approx(std::sqrt(1.6)).margin(1e-10));
  CHECK(kspec.eigenvalues(1) == Catch::Approx(std::sqrt(0.4)).margin(1e-10));
}

TEST_CASE("the Sigma spectrum is invariant under data changes of basis") {
  const auto base = two_modes(1.25, 2.0);
  // Unit-triangular data transformation: invertible by construction.
  RealMatrix r = RealMatrix::Identity(4, 4);
  r(0, 1) = 0.3;
  r(1, 2) = -0.2;
  r(2, 3) = 0.15;
  const PreSymplecticSpace space(RealMatrix(r.transpose() * canonical_sigma(2) * r));
  const CovarianceForm cov(RealMatrix(r.transpose() * base.cov.mu * r));
  const auto transformed = build_quasifree(space, cov);
  const auto e0 = sorted_eigs(base);
  const auto e1 = sorted_eigs(transformed);
  REQUIRE(e0.size() == e1.size());
  for (std::size_t i = 0; i < e0.size(); ++i)
    CHECK(e0[i] == Catch::Approx(e1[i]).margin(1e-8));
  // Frequencies 1.25 and 2.0 appear as Sigma eigenvalues +-0.8, +-0.5.
  CHECK(e0[0] == Catch::Approx(-0.8).margin(1e-10));
  CHECK(e0[1] == Catch::Approx(-0.5).margin(1e-10));
  CHECK(e0[2] == Catch::Approx(0.5).margin(1e-10));
  CHECK(e0[3] == Catch::Approx(0.8).margin(1e-10));
}

TEST_CASE("construction rejects non-symplectic or non-dominating data") {
  RealMatrix not_antisym = RealMatrix::Identity(2, 2);
  CHECK_THROWS_AS(PreSymplecticSpace(not_antisym), input_error);
  RealMatrix not_sym(2, 2);
  not_sym << 1.0, 0.5, -0.5, 1.0;
  CHECK_THROWS_AS(CovarianceForm(not_sym), input_error);
  CHECK_THROWS_AS(CovarianceForm(RealMatrix(-RealMatrix::Identity(2, 2))), input_error);

  // Covariance too small for the form: |Sigma| > 1.
  const PreSymplecticSpace strong(RealMatrix(3.0 * canonical_sigma(1)));
  const CovarianceForm half(RealMatrix(0.5 * RealMatrix::Identity(2, 2)));
  CHECK_THROWS_AS(build_quasifree(strong, half), input_error);

  // The form must not pair covariance-null directions.
  RealMatrix degenerate = RealMatrix::Zero(2, 2);
  degenerate(0, 0) = 1.0;
  CHECK_THROWS_AS(build_quasifree(PreSymplecticSpace(canonical_sigma(1)),
                                  CovarianceForm(degenerate)),
                  input_error);

  const auto state = single_mode(5.0 / 6.0);
  CHECK_THROWS_AS(state.embed(RealVector::Ones(3)), input_error);
}

TEST_CASE("restriction chain rows certify the modular-defect comparison") {
  const auto state = two_modes(1.25, 2.0);
  RealMatrix k_tilde = RealMatrix::Zero(4, 1);
  k_tilde(0, 0) = 1.0;

  for (double p : {0.5, 1.0, 2.0}) {
    const auto rep = deltamod_chain(state, k_tilde, 0.1, p);
    CHECK(rep.all_pass);
    REQUIRE(rep.rows.size() == 3);
    CHECK(rep.rows[0].check == 'a');
    CHECK(rep.rows[1].check == 'b');
    CHECK(rep.rows[2].check == 'c');
    // 0 < alpha < 1/4: forward constant 2^(2 alpha), reverse constant 1.
    CHECK(rep.rows[1].constant == Catch::Approx(std::pow(2.0, 0.2)).margin(1e-12));
    CHECK(rep.rows[2].constant == 1.0);
  }

  // At the pinch alpha = 1/4 both sides agree exactly and a '=' row appears.
  const auto pinch = deltamod_chain(state, k_tilde, 0.25, 1.0);
  REQUIRE(pinch.rows.size() == 4);
  CHECK(pinch.rows[3].check == '=');
  CHECK(pinch.rows[3].lhs == Catch::Approx(pinch.rows[3].rhs).margin(1e-9));

  // alpha <= 0 keeps the reverse row with constant 2^(-2 alpha).
  const auto neg = deltamod_chain(state, k_tilde, -0.2, 1.0);
  REQUIRE(neg.rows.size() == 3);
  CHECK(neg.rows[2].constant == Catch::Approx(std::pow(2.0, 0.4)).margin(1e-12));

  // alpha > 1/4 drops the reverse row.
  const auto high = deltamod_chain(state, k_tilde, 0.3, 1.0);
  CHECK(high.rows.size() == 2);

  CHECK_THROWS_AS(deltamod_chain(state, RealMatrix::Zero(3, 1), 0.1, 1.0), input_error);
  CHECK_THROWS_AS(deltamod_chain(state, k_tilde, 0.1, 0.0), parameter_error);
}

TEST_CASE("no-alpha interpolation bound is exact at the matching exponent") {
  Matrix x = Matrix::Zero(2, 2);
  x(0, 0) = 0.81;
  x(1, 1) = 0.01;
  const Matrix eye = Matrix::Identity(2, 2);
  const auto rep = lemma_noalpha_checks(x, eye, 0.5, 1.0, 1);
  CHECK(rep.interpolation_branch);
  CHECK(rep.pass);
  // ||X^(1/2)||_2 = sqrt(0.82) = (||X||_1)^(1/2) with norm factor 1.
  CHECK(rep.lhs == Catch::Approx(std::sqrt(0.82)).margin(1e-12));
  CHECK(rep.rhs == Catch::Approx(std::sqrt(0.82)).margin(1e-12));

  const auto obstruction = lemma_noalpha_checks(x, eye, -1.0, 1.0, 1);
  CHECK_FALSE(obstruction.interpolation_branch);
  CHECK(obstruction.pass);
  CHECK(obstruction.lhs == Catch::Approx(2.0).margin(1e-12));
  CHECK(obstruction.rhs ==
        Catch::Approx(0.81 * (1.0 / 0.81 + 1.0 / 0.01)).epsilon(1e-12));

  // 0 < alpha < 2^-n falls in the uncovered gap.
  CHECK_THROWS_AS(lemma_noalpha_checks(x, eye, 0.2, 1.0, 1), parameter_error);
  // P must be an orthogonal projection.
  CHECK_THROWS_AS(lemma_noalpha_checks(x, Matrix(2.0 * eye), 0.5, 1.0, 1), input_error);
}
