#pragma once

// Quasi-free states from a covariance form and a pre-symplectic form.
// The polarization operator Sigma lives on a covariance-orthonormal
// frame, carries the entrywise conjugation with Gamma Sigma Gamma =
// -Sigma, and determines the one-particle modular operator through
// d = (1-Sigma)/(1+Sigma) away from the |s| = 1 block.
//
// All functional calculus uses the convention that the block where
// |s| >= 1 - kRBlockTol contributes eigenvalue 0 to every power,
// including non-positive ones.

#include <cmath>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "modlp/approx.hpp"
#include "modlp/real_linear.hpp"
#include "modlp/spectral.hpp"
#include "modlp/subspace.hpp"

namespace modlp {

// Membership threshold for the |s| = 1 spectral block; inside it the
// quotient (1-s)/(1+s) is numerically meaningless.
inline constexpr double kRBlockTol = 1e-9;

struct PreSymplecticSpace {
  RealMatrix sigma;  // antisymmetric bilinear form on real data

  explicit PreSymplecticSpace(RealMatrix form) : sigma(std::move(form)) {
    check_finite(sigma, "PreSymplecticSpace");
    if (sigma.rows() != sigma.cols())
      throw input_error("PreSymplecticSpace: form must be square");
    const double scale = std::max(1.0, sigma.norm());
    if ((sigma + sigma.transpose()).norm() > 1e-8 * scale)
      throw input_error("PreSymplecticSpace: form is not antisymmetric");
    sigma = 0.5 * (sigma - sigma.transpose().eval());
  }

  Eigen::Index dim_real() const { return sigma.rows(); }
};

struct CovarianceForm {
  RealMatrix mu;  // symmetric positive semi-definite

  explicit CovarianceForm(RealMatrix m) : mu(std::move(m)) {
    check_finite(mu, "CovarianceForm");
    if (mu.rows() != mu.cols()) throw input_error("CovarianceForm: matrix must be square");
    const double scale = std::max(1.0, mu.norm());
    if ((mu - mu.transpose()).norm() > 1e-10 * scale)
      throw input_error("CovarianceForm: matrix is not symmetric");
    mu = 0.5 * (mu + mu.transpose().eval());
    Eigen::SelfAdjointEigenSolver<RealMatrix> es(mu, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -1e-12 * scale)
      throw input_error("CovarianceForm: matrix has a negative eigenvalue");
  }
};

struct QuasiFreeState {
  PreSymplecticSpace space;
  CovarianceForm cov;
  RealMatrix embed_matrix;  // B: data coordinates -> covariance-orthonormal frame
  Matrix sigma_op;          // Sigma on the frame, self-adjoint, ||Sigma|| <= 1
  SpectralData sigma_spec;
  Matrix r_projection;      // onto the |s| >= 1 - kRBlockTol block
  Conjugation conj;         // entrywise on the frame; Gamma Sigma Gamma = -Sigma

  Eigen::Index frame_dim() const { return sigma_op.rows(); }

  // Frame vector of a real test function; directions in the covariance
  // kernel are quotiented away by the embedding.
  Vector embed(const RealVector& f) const {
    if (f.size() != space.dim_real())
      throw input_error("QuasiFreeState::embed: wrong data dimension");
    return (embed_matrix * f).cast<cdouble>();
  }

  // Spectral multiplier on the Sigma eigenbasis. The R block always
  // receives `on_r_block` regardless of the function.
  Matrix sigma_multiplier(const std::function<double(double)>& fn, double on_r_block) const {
    const Eigen::Index n = frame_dim();
    RealVector vals(n);
    for (Eigen::Index j = 0; j < n; ++j) {
      const double s = std::clamp(sigma_spec.eigenvalues(j), -1.0, 1.0);
      vals(j) = (std::abs(s) >= 1.0 - kRBlockTol) ? on_r_block : fn(s);
    }
    Matrix out = sigma_spec.eigenvectors * vals.asDiagonal() *
                 sigma_spec.eigenvectors.adjoint();
    return 0.5 * (out + out.adjoint().eval());
  }

  // kappa = sqrt(1 + Sigma); its range realizes the one-particle space.
  Matrix kappa() const {
    const Eigen::Index n = frame_dim();
    RealVector vals(n);
    for (Eigen::Index j = 0; j < n; ++j)
      vals(j) = std::sqrt(std::max(1.0 + sigma_spec.eigenvalues(j), 0.0));
    Matrix out = sigma_spec.eigenvectors * vals.asDiagonal() *
                 sigma_spec.eigenvectors.adjoint();
    return 0.5 * (out + out.adjoint().eval());
  }

  Matrix one_particle_projection() const {
    return sigma_multiplier([](double s) { return (s > -1.0 + kRBlockTol) ? 1.0 : 0.0; }, 0.0);
  }

  // delta^alpha with the kernel convention: eigenvalue ((1-s)/(1+s))^alpha
  // strictly inside the spectrum, zero on the R block and off the
  // one-particle space, for every real alpha.
  Matrix delta_power(double alpha) const {
    return sigma_multiplier(
        [alpha](double s) { return std::pow((1.0 - s) / (1.0 + s), alpha); }, 0.0);
  }

  // (1 - Sigma^2)^alpha with the same kernel convention.
  Matrix defect_power(double alpha) const {
    return sigma_multiplier([alpha](double s) { return std::pow(1.0 - s * s, alpha); }, 0.0);
  }

  bool is_pure(double tol = 1e-8) const {
    const Eigen::Index n = frame_dim();
    return (sigma_op * sigma_op - Matrix::Identity(n, n)).norm() <= tol * std::sqrt(double(n));
  }
};

inline QuasiFreeState build_quasifree(const PreSymplecticSpace& space,
                                      const CovarianceForm& cov) {
  if (cov.mu.rows() != space.dim_real())
    throw input_error("build_quasifree: covariance and form dimensions differ");

  Eigen::SelfAdjointEigenSolver<RealMatrix> es(cov.mu);
  if (es.info() != Eigen::Success)
    throw internal_error("build_quasifree: covariance eigendecomposition failed");
  const double top = std::max(es.eigenvalues().maxCoeff(), 0.0);
  if (top <= 0.0) throw input_error("build_quasifree: covariance vanishes identically");

  // Keep the nondegenerate covariance directions; the rest have zero
  // field fluctuations and are quotiented away.
  std::vector<Eigen::Index> keep;
  for (Eigen::Index j = 0; j < es.eigenvalues().size(); ++j)
    if (es.eigenvalues()(j) > 1e-12 * top) keep.push_back(j);
  const Eigen::Index r = static_cast<Eigen::Index>(keep.size());
  RealMatrix v_r(cov.mu.rows(), r);
  RealVector lam_half(r), lam_invhalf(r);
  for (Eigen::Index j = 0; j < r; ++j) {
    v_r.col(j) = es.eigenvectors().col(keep[static_cast<std::size_t>(j)]);
    lam_half(j) = std::sqrt(es.eigenvalues()(keep[static_cast<std::size_t>(j)]));
    lam_invhalf(j) = 1.0 / lam_half(j);
  }

  // The form must not pair covariance-null directions; otherwise no
  // state dominates it.
  const RealMatrix p_r = v_r * v_r.transpose();
  if ((space.sigma - p_r * space.sigma * p_r).norm() >
      1e-8 * std::max(1.0, space.sigma.norm()))
    throw input_error(
        "build_quasifree: form pairs covariance-null directions; the "
        "covariance cannot dominate the symplectic form");

  const RealMatrix sigma_frame_real =
      lam_invhalf.asDiagonal() * v_r.transpose() * space.sigma * v_r *
      lam_invhalf.asDiagonal();
  Matrix sigma_op = cdouble(0.0, 0.5) * sigma_frame_real.cast<cdouble>();
  sigma_op = 0.5 * (sigma_op + sigma_op.adjoint().eval());

  if (operator_norm(sigma_op) > 1.0 + 1e-8)
    throw input_error(
        "build_quasifree: covariance does not dominate the symplectic form "
        "(|sigma(f,g)|^2 <= 4 mu(f,f) mu(g,g) fails)");

  QuasiFreeState state{space,
                       cov,
                       RealMatrix(lam_half.asDiagonal() * v_r.transpose()),
                       sigma_op,
                       hermitian_spectral(sigma_op),
                       Matrix(),
                       Conjugation::entrywise(r)};
  state.r_projection =
      state.sigma_multiplier([](double) { return 0.0; }, 1.0);
  if ((state.conj.sandwich(sigma_op) + sigma_op).norm() >
      1e-10 * std::max(1.0, sigma_op.norm()))
    throw internal_error("build_quasifree: Sigma is not conjugation-odd");
  return state;
}

// Functional calculus h(d) for the one-particle modular generator
// d = (1-Sigma)/(1+Sigma) away from the R block, on which d vanishes and
// the eigenvalue is h(0).
inline Matrix modular_from_sigma(const QuasiFreeState& state,
                                 const std::function<double(double)>& h) {
  const Matrix out = state.sigma_multiplier(
      [&h](double s) { return h((1.0 - s) / (1.0 + s)); }, h(0.0));
  check_finite(out, "modular_from_sigma");
  return out;
}

struct DeltamodRow {
  char check = '?';        // 'a', 'b', 'c', or '=' for the alpha = 1/4 pinch
  double alpha = 0.0;
  double p = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  double constant = 0.0;
  bool pass = false;
};

struct DeltamodReport {
  std::vector<DeltamodRow> rows;
  bool all_pass = true;
};

// Inequality chain linking the real restriction of delta^alpha to the
// embedded real subspace against the complex restriction of
// (1-Sigma^2)^alpha to its complexification:
//   (a) exact symmetry alpha <-> 1/2 - alpha of the real quasi-norms,
//   (b) ||(1-S^2)^a|_{K+iK}||_p <= c(a) ||d^a|_{H}||_{R,p} with
//       c(a) = 2^{2a} on 0 < a < 1/4 and 1 otherwise,
//   (c) the reverse bound for a <= 1/4 with constant 1 on 0 < a <= 1/4
//       and 2^{-2a} for a <= 0.
// At a = 1/4 the two sides agree exactly and the report carries a pinch
// row. The subspace is passed as real data columns; it must be isotropic
// for the form, which holds automatically for real data. Near the pinch
// with p < 1, certifying the rows at the default tolerance needs the
// restriction singular values to better than double relative precision
// whenever the state carries mode defects spread over many decades;
// callers on such states should stay away from a = 1/4 or use p >= 1.
inline DeltamodReport deltamod_chain(const QuasiFreeState& state, const RealMatrix& k_tilde,
                                     double alpha, double p, double tol = 1e-9) {
  if (k_tilde.rows() != state.space.dim_real())
    throw input_error("deltamod_chain: subspace data has wrong dimension");
  if (k_tilde.cols() == 0) throw input_error("deltamod_chain: empty subspace");
  if (!(p > 0.0)) throw parameter_error("deltamod_chain: p must be positive");

  // Embedded frame vectors are real, so a real QR produces a basis that
  // is simultaneously a real orthonormal basis of K and a complex
  // orthonormal basis of K + iK.
  const RealMatrix embedded = state.embed_matrix * k_tilde;
  const RealMatrix basis = real_colspace(embedded, kKernelRelTol, 1e-12);
  if (basis.cols() == 0) throw input_error("deltamod_chain: subspace is covariance-null");
  const Matrix basis_c = basis.cast<cdouble>();

  // Isotropy for the form: the symmetric part of the Sigma pairing on
  // real vectors must vanish.
  {
    const Matrix pairing = basis_c.adjoint() * state.sigma_op * basis_c;
    const Matrix sym = pairing + pairing.transpose();
    if (sym.norm() > 1e-9 * std::max(1.0, state.sigma_op.norm()))
      throw precondition_error("deltamod_chain: subspace is not isotropic for the form");
  }

  const Matrix kap = state.kappa();
  const Matrix h_basis = kap * basis_c;
  // kappa is isometric on the isotropic subspace; the embedded basis
  // stays orthonormal in the real inner product.
  {
    Matrix gram = h_basis.adjoint() * h_basis;
    const Matrix dev = 0.5 * (gram + gram.transpose()) -
                       Matrix::Identity(basis.cols(), basis.cols());
    if (dev.norm() > 1e-9 * std::sqrt(double(basis.cols())))
      throw internal_error("deltamod_chain: kappa lost the isometry on the subspace");
  }

  // Pure modes give the restrictions exact zero modes that rounding
  // turns into O(eps) singular values; at p < 1 their p-th powers would
  // swamp the row comparisons. Values below the relative floor are the
  // zero modes and are dropped on both sides alike.
  constexpr double kRestrictionFloor = 1e-11;
  const auto floored_lp = [&](std::vector<double> sv) {
    if (sv.empty()) return 0.0;
    const double cut = sv.front() * kRestrictionFloor;
    std::vector<double> kept;
    for (double s : sv)
      if (s > cut) kept.push_back(s);
    return lp_quasinorm(kept, p);
  };
  const auto real_restriction_lp = [&](double a) {
    const Matrix images = state.delta_power(a) * h_basis;
    RealMatrix realified(2 * images.rows(), images.cols());
    for (Eigen::Index j = 0; j < images.cols(); ++j)
      realified.col(j) = realify(Vector(images.col(j)));
    return floored_lp(approximation_numbers(realified));
  };
  const auto complex_restriction_lp = [&](double a) {
    const Matrix images = state.defect_power(a) * basis_c;
    return floored_lp(approximation_numbers(images));
  };

  DeltamodReport report;
  const auto push = [&report](char check, double alpha_, double p_, double lhs, double rhs,
                              double constant, bool pass) {
    report.rows.push_back({check, alpha_, p_, lhs, rhs, constant, pass});
    report.all_pass = report.all_pass && pass;
  };

  const double lp_delta = real_restriction_lp(alpha);
  const double lp_delta_mirror = real_restriction_lp(0.5 - alpha);
  const double lp_defect = complex_restriction_lp(alpha);
  const double scale = std::max({1.0, lp_delta, lp_delta_mirror});

  push('a', alpha, p, lp_delta, lp_delta_mirror, 1.0,
       std::abs(lp_delta - lp_delta_mirror) <= tol * scale);

  const double c_alpha = (alpha > 0.0 && alpha < 0.25) ? std::pow(2.0, 2.0 * alpha) : 1.0;
  push('b', alpha, p, lp_defect, lp_delta, c_alpha,
       lp_defect <= c_alpha * lp_delta * (1.0 + tol) + tol);

  if (alpha <= 0.25) {
    // Reverse constant from the spectral bound on
    // (1+s)^{1-4a} + (1-s)^{1-4a}: 2 on 0 < a <= 1/4 and 2^{1-4a} for
    // a <= 0, so the quasi-norm constant is 1 resp. 2^{-2a}.
    const double c_rev = (alpha > 0.0) ? 1.0 : std::pow(2.0, -2.0 * alpha);
    push('c', alpha, p, lp_delta, lp_defect, c_rev,
         lp_delta <= c_rev * lp_defect * (1.0 + tol) + tol);
  }
  if (std::abs(alpha - 0.25) <= 1e-12) {
    // d^{1/4} kappa and (1-Sigma^2)^{1/4} have identical quadratic forms
    // on real vectors, so the two quasi-norms agree exactly.
    push('=', alpha, p, lp_delta, lp_defect, 1.0,
         std::abs(lp_delta - lp_defect) <= tol * std::max(1.0, lp_defect));
  }

  if (!report.all_pass) throw internal_error("deltamod_chain: an asserted inequality failed");
  return report;
}

struct NoAlphaReport {
  bool interpolation_branch = false;  // true: alpha >= 2^{-n}; false: alpha <= 0
  double lhs = 0.0;
  double rhs = 0.0;
  bool pass = false;
};

// Interpolation control of X^alpha P across the alpha range:
// for alpha >= 2^{-n} the bound
//   ||X^a P||_{2^n p} <= ||X||^{a - 2^{-n}} ||P X P||_p^{2^{-n}},
// and for alpha <= 0 the quantitative form of the finite-rank
// obstruction, ||(1-E_0)P||_p <= ||X^{-a}(1-E_0)|| ||X^a P||_p, with E_0
// the kernel projection of X. Powers use the kernel convention.
inline NoAlphaReport lemma_noalpha_checks(const Matrix& x, const Matrix& proj, double alpha,
                                          double p, int n, double tol = 1e-9) {
  if (!(p > 0.0)) throw parameter_error("lemma_noalpha_checks: p must be positive");
  if (n < 0) throw parameter_error("lemma_noalpha_checks: n must be non-negative");
  if (x.rows() != x.cols() || proj.rows() != proj.cols() || x.rows() != proj.rows())
    throw input_error("lemma_noalpha_checks: dimension mismatch");
  const double scale = std::max(1.0, proj.norm());
  if ((proj * proj - proj).norm() > 1e-10 * scale || !is_hermitian(proj, 1e-10))
    throw input_error("lemma_noalpha_checks: P is not an orthogonal projection");
  if (min_eigenvalue(x) < -1e-10 * std::max(1.0, operator_norm(x)))
    throw input_error("lemma_noalpha_checks: X is not positive semi-definite");

  const double half_pow = std::pow(2.0, -double(n));
  NoAlphaReport rep;
  if (alpha >= half_pow) {
    rep.interpolation_branch = true;
    rep.lhs = lp_quasinorm(Matrix(operator_power(x, alpha) * proj), std::pow(2.0, n) * p);
    const double x_norm = operator_norm(x);
    const double norm_factor =
        (alpha - half_pow == 0.0) ? 1.0 : std::pow(x_norm, alpha - half_pow);
    rep.rhs = norm_factor * std::pow(lp_quasinorm(Matrix(proj * x * proj), p), half_pow);
  } else if (alpha <= 0.0) {
    rep.interpolation_branch = false;
    const Matrix range_proj = range_projection(x);
    rep.lhs = lp_quasinorm(Matrix(range_proj * proj), p);
    rep.rhs = operator_norm(Matrix(operator_power(x, -alpha) * range_proj)) *
              lp_quasinorm(Matrix(operator_power(x, alpha) * proj), p);
  } else {
    throw parameter_error("lemma_noalpha_checks: alpha must satisfy alpha >= 2^-n or alpha <= 0");
  }
  rep.pass = rep.lhs <= rep.rhs * (1.0 + tol) + 1e-14;
  if (!rep.pass) throw internal_error("lemma_noalpha_checks: asserted bound failed");
  return rep;
}

}  // namespace modlp
