#pragma once

// Hermitian spectral decompositions and operator functional calculus.
//
// Kernel convention used throughout the library: eigenvalues at or below
// kKernelRelTol times the top eigenvalue are treated as exact zeros, and
// every power beta (including beta <= 0) maps them to 0. Inverses and
// negative powers are therefore always the Moore-Penrose ones.

#include <algorithm>
#include <cmath>
#include <functional>

#include "modlp/core.hpp"

namespace modlp {

// Eigenvalues sorted descending with matching orthonormal eigenvectors.
struct SpectralData {
  RealVector eigenvalues;
  Matrix eigenvectors;

  Matrix reconstruct() const {
    return eigenvectors * eigenvalues.asDiagonal() * eigenvectors.adjoint();
  }

  // Applies f eigenvalue-wise. Reconstruction error of the identity map is
  // bounded by the eigensolver's backward error, a few ulps of the norm.
  Matrix apply(const std::function<double(double)>& f) const {
    RealVector mapped(eigenvalues.size());
    for (Eigen::Index i = 0; i < eigenvalues.size(); ++i) mapped(i) = f(eigenvalues(i));
    return eigenvectors * mapped.asDiagonal() * eigenvectors.adjoint();
  }
};

inline SpectralData hermitian_spectral(const Matrix& a, double tol = kDefaultTol) {
  check_finite(a, "hermitian_spectral");
  if (a.rows() != a.cols()) throw input_error("hermitian_spectral: matrix not square");
  if (!is_hermitian(a, tol)) throw input_error("hermitian_spectral: matrix not self-adjoint");
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (a + a.adjoint()));
  if (es.info() != Eigen::Success) throw internal_error("hermitian_spectral: eigensolver failed");
  const Eigen::Index n = a.rows();
  SpectralData out;
  out.eigenvalues = RealVector(n);
  out.eigenvectors = Matrix(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    out.eigenvalues(i) = es.eigenvalues()(n - 1 - i);
    out.eigenvectors.col(i) = es.eigenvectors().col(n - 1 - i);
  }
  return out;
}

inline double min_eigenvalue(const Matrix& a) {
  const SpectralData s = hermitian_spectral(a);
  return s.eigenvalues(s.eigenvalues.size() - 1);
}

inline double spectral_radius(const Matrix& hermitian_a) {
  const SpectralData s = hermitian_spectral(hermitian_a);
  double r = 0.0;
  for (Eigen::Index i = 0; i < s.eigenvalues.size(); ++i)
    r = std::max(r, std::abs(s.eigenvalues(i)));
  return r;
}

// A^beta for self-adjoint A >= -tol. Eigenvalues within the kernel
// threshold of zero map to zero for every beta; small negative eigenvalues
// inside the tolerance are clamped to the kernel.
inline Matrix operator_power(const Matrix& a, double beta, double tol = kDefaultTol) {
  const SpectralData s = hermitian_spectral(a, tol);
  const Eigen::Index n = s.eigenvalues.size();
  double top = (n > 0) ? s.eigenvalues(0) : 0.0;
  if (n > 0 && s.eigenvalues(n - 1) < -tol * std::max(1.0, top))
    throw input_error("operator_power: matrix has a negative eigenvalue beyond tolerance");
  const double cut = kKernelRelTol * std::max(top, 0.0);
  RealVector mapped(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double lam = s.eigenvalues(i);
    mapped(i) = (lam <= cut) ? 0.0 : std::pow(lam, beta);
  }
  return s.eigenvectors * mapped.asDiagonal() * s.eigenvectors.adjoint();
}

// Orthogonal projection onto the non-kernel part of a PSD matrix.
inline Matrix range_projection(const Matrix& a, double tol = kDefaultTol) {
  return operator_power(a, 0.0, tol);
}

struct LoewnerResult {
  bool monotone;             // min eig of f(B) - f(A) >= -tol
  double min_eigenvalue;     // smallest eigenvalue of f(B) - f(A)
};

// Checks f(A) <= f(B) given A <= B. The order precondition is verified
// first; a violation reports the offending eigenvalue of B - A.
inline LoewnerResult loewner_check(const Matrix& a, const Matrix& b,
                                   const std::function<double(double)>& f,
                                   double tol = 1e-10) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw input_error("loewner_check: dimension mismatch");
  const SpectralData gap = hermitian_spectral(b - a);
  const double scale = std::max(1.0, std::max(a.norm(), b.norm()));
  const double worst = gap.eigenvalues(gap.eigenvalues.size() - 1);
  if (worst < -tol * scale)
    throw precondition_error("loewner_check: A <= B fails, eigenvalue " + std::to_string(worst));
  const Matrix diff = hermitian_spectral(b).apply(f) - hermitian_spectral(a).apply(f);
  const SpectralData d = hermitian_spectral(diff);
  const double mn = d.eigenvalues(d.eigenvalues.size() - 1);
  return LoewnerResult{mn >= -tol * scale, mn};
}

}  // namespace modlp
