#pragma once

// Real-linear operators between complex spaces, stored as a complex-linear
// part L and an antilinear part A acting as v -> L v + A conj(v).
//
// The realified representation is the real 2n x 2m matrix acting on
// [Re v; Im v]. Real-linear approximation numbers (distance to real-linear
// rank-n maps) equal the singular values of that matrix, which is how the
// R-quasi-norms are computed.

#include <cmath>
#include <vector>

#include "modlp/approx.hpp"
#include "modlp/core.hpp"

namespace modlp {

struct RealLinearOperator {
  Matrix linear;      // complex-linear part (n x m)
  Matrix antilinear;  // antilinear part (n x m), applied to conj(v)

  RealLinearOperator() = default;
  RealLinearOperator(Matrix lin, Matrix anti)
      : linear(std::move(lin)), antilinear(std::move(anti)) {
    if (linear.rows() != antilinear.rows() || linear.cols() != antilinear.cols())
      throw input_error("RealLinearOperator: part shapes differ");
  }

  static RealLinearOperator from_linear(const Matrix& lin) {
    return RealLinearOperator(lin, Matrix::Zero(lin.rows(), lin.cols()));
  }

  static RealLinearOperator from_antilinear(const Matrix& anti) {
    return RealLinearOperator(Matrix::Zero(anti.rows(), anti.cols()), anti);
  }

  static RealLinearOperator zero(Eigen::Index rows, Eigen::Index cols) {
    return RealLinearOperator(Matrix::Zero(rows, cols), Matrix::Zero(rows, cols));
  }

  static RealLinearOperator identity(Eigen::Index n) {
    return RealLinearOperator(Matrix::Identity(n, n), Matrix::Zero(n, n));
  }

  Eigen::Index rows() const { return linear.rows(); }
  Eigen::Index cols() const { return linear.cols(); }

  Vector apply(const Vector& v) const { return linear * v + antilinear * v.conjugate(); }

  // Composition (this after other). The antilinear part of the right factor
  // conjugates everything to its left.
  RealLinearOperator compose(const RealLinearOperator& other) const {
    if (cols() != other.rows()) throw input_error("RealLinearOperator: composition shape mismatch");
    Matrix lin = linear * other.linear + antilinear * other.antilinear.conjugate();
    Matrix anti = linear * other.antilinear + antilinear * other.linear.conjugate();
    return RealLinearOperator(std::move(lin), std::move(anti));
  }

  RealLinearOperator add(const RealLinearOperator& other) const {
    return RealLinearOperator(linear + other.linear, antilinear + other.antilinear);
  }

  RealLinearOperator scale(double t) const {
    return RealLinearOperator(t * linear, t * antilinear);
  }

  // Adjoint with respect to the real inner product Re<.,.>.
  RealLinearOperator real_adjoint() const {
    return RealLinearOperator(linear.adjoint(), antilinear.transpose());
  }
};

// Real 2n x 2m action on stacked real/imaginary parts.
inline RealMatrix realify(const RealLinearOperator& y) {
  const Eigen::Index n = y.rows(), m = y.cols();
  RealMatrix out(2 * n, 2 * m);
  const RealMatrix reL = y.linear.real(), imL = y.linear.imag();
  const RealMatrix reA = y.antilinear.real(), imA = y.antilinear.imag();
  out.block(0, 0, n, m) = reL + reA;
  out.block(0, m, n, m) = imA - imL;
  out.block(n, 0, n, m) = imL + imA;
  out.block(n, m, n, m) = reL - reA;
  return out;
}

inline RealVector realify(const Vector& v) {
  RealVector out(2 * v.size());
  out.head(v.size()) = v.real();
  out.tail(v.size()) = v.imag();
  return out;
}

inline Vector unrealify(const RealVector& v) {
  const Eigen::Index n = v.size() / 2;
  Vector out(n);
  out.real() = v.head(n);
  out.imag() = v.tail(n);
  return out;
}

// Splits a dense real 2n x 2m action into linear and antilinear parts,
// Y^L = (Y - i Y i)/2 and Y^A = (Y + i Y i)/2. Recombination through
// realify inverts this exactly up to rounding.
inline RealLinearOperator split_real_linear(const RealMatrix& y) {
  check_finite(y, "split_real_linear");
  if (y.rows() % 2 != 0 || y.cols() % 2 != 0)
    throw input_error("split_real_linear: realified action must have even dimensions");
  const Eigen::Index n = y.rows() / 2, m = y.cols() / 2;
  const RealMatrix p = y.block(0, 0, n, m), q = y.block(0, m, n, m);
  const RealMatrix r = y.block(n, 0, n, m), s = y.block(n, m, n, m);
  Matrix lin(n, m), anti(n, m);
  lin.real() = 0.5 * (p + s);
  lin.imag() = 0.5 * (r - q);
  anti.real() = 0.5 * (p - s);
  anti.imag() = 0.5 * (r + q);
  return RealLinearOperator(std::move(lin), std::move(anti));
}

// Real-linear approximation numbers: singular values of the realified map.
inline std::vector<double> real_approximation_numbers(const RealLinearOperator& y) {
  return approximation_numbers(realify(y));
}

inline double real_operator_norm(const RealLinearOperator& y) {
  auto a = real_approximation_numbers(y);
  return a.empty() ? 0.0 : a[0];
}

// ||Y||_{R,p}: l^p quasi-norm over real-linear approximation numbers. For a
// complex-linear Y every singular value doubles, so this equals
// 2^{1/p} ||Y||_p in that case.
inline double real_lp_quasinorm(const RealLinearOperator& y, double p) {
  return lp_quasinorm(realify(y), p);
}

// Antiunitary involution v -> A conj(v). Validity: A A-bar = 1 (involution)
// and A unitary (antiunitarity).
struct Conjugation {
  Matrix antilinear;

  explicit Conjugation(Matrix a, double tol = 1e-9) : antilinear(std::move(a)) {
    check_finite(antilinear, "Conjugation");
    if (antilinear.rows() != antilinear.cols())
      throw input_error("Conjugation: matrix not square");
    const Eigen::Index n = antilinear.rows();
    const Matrix eye = Matrix::Identity(n, n);
    if ((antilinear * antilinear.conjugate() - eye).norm() > tol * std::max(1.0, antilinear.norm()))
      throw input_error("Conjugation: not an involution");
    if ((antilinear.adjoint() * antilinear - eye).norm() > tol * std::max(1.0, antilinear.norm()))
      throw input_error("Conjugation: not antiunitary");
  }

  static Conjugation entrywise(Eigen::Index n) {
    return Conjugation(Matrix::Identity(n, n));
  }

  Eigen::Index dim() const { return antilinear.rows(); }

  Vector apply(const Vector& v) const { return antilinear * v.conjugate(); }

  RealLinearOperator as_real_linear() const {
    return RealLinearOperator::from_antilinear(antilinear);
  }

  // Real-linear projections (1 +/- Gamma)/2 onto the +/-1 real eigenspaces.
  RealLinearOperator plus_projection() const {
    const Eigen::Index n = dim();
    return RealLinearOperator(0.5 * Matrix::Identity(n, n), 0.5 * antilinear);
  }

  RealLinearOperator minus_projection() const {
    const Eigen::Index n = dim();
    return RealLinearOperator(0.5 * Matrix::Identity(n, n), -0.5 * antilinear);
  }

  // Gamma M Gamma for complex-linear M; the two antilinear factors cancel
  // into the complex-linear matrix A conj(M) conj(A).
  Matrix sandwich(const Matrix& m) const {
    return antilinear * m.conjugate() * antilinear.conjugate();
  }
};

// Linear / antilinear halves of Y relative to a conjugation: Y^L and Y^A
// satisfy Y = Y^L + Y^A with ||Y^L||_p <= ||Y||_{R,p} and
// ||Y^A Gamma||_p <= ||Y||_{R,p} for any conjugation Gamma.
inline Matrix antilinear_times_conjugation(const RealLinearOperator& y, const Conjugation& g) {
  // Composing two antilinear maps with matrices A_Y and A_G is complex
  // linear with matrix A_Y conj(A_G).
  return y.antilinear * g.antilinear.conjugate();
}

}  // namespace modlp
