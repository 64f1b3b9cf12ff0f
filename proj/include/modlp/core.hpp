#pragma once

// Shared scalar/matrix aliases, error taxonomy and tolerance conventions.
//
// Every function in this library is pure: inputs are taken by const
// reference, results are returned by value, nothing is cached. Errors are
// reported through the exception types below so the CLI can map them to
// exit codes (input/parameter/precondition -> 2, internal -> 3).

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace modlp {

using cdouble = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

// Default absolute tolerance for exact structural identities.
inline constexpr double kDefaultTol = 1e-12;

// Relative threshold below which spectral values count as kernel.
inline constexpr double kKernelRelTol = 1e-10;

// Malformed data: wrong shapes, non-finite entries, values outside domain.
struct input_error : std::runtime_error {
  explicit input_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Arguments outside the validity range of a bound or construction.
struct parameter_error : input_error {
  explicit parameter_error(const std::string& msg) : input_error(msg) {}
};

// A documented hypothesis of an operation does not hold for the input.
struct precondition_error : input_error {
  explicit precondition_error(const std::string& msg) : input_error(msg) {}
};

// A postcondition the implementation itself guarantees failed; a bug.
struct internal_error : std::runtime_error {
  explicit internal_error(const std::string& msg) : std::runtime_error(msg) {}
};

inline void check_finite(const Matrix& a, const std::string& what) {
  if (!a.allFinite()) throw input_error(what + ": non-finite entries");
}

inline void check_finite(const RealMatrix& a, const std::string& what) {
  if (!a.allFinite()) throw input_error(what + ": non-finite entries");
}

inline void check_finite(const Vector& v, const std::string& what) {
  if (!v.allFinite()) throw input_error(what + ": non-finite entries");
}

inline void check_finite(const RealVector& v, const std::string& what) {
  if (!v.allFinite()) throw input_error(what + ": non-finite entries");
}

inline bool is_hermitian(const Matrix& a, double tol = kDefaultTol) {
  if (a.rows() != a.cols()) return false;
  double scale = std::max(1.0, a.norm());
  return (a - a.adjoint()).norm() <= tol * scale;
}

// Operator norm (top singular value). Hermitian inputs can use
// spectral_radius below, which is cheaper and equally accurate.
inline double operator_norm(const Matrix& a) {
  if (a.rows() == 0 || a.cols() == 0) return 0.0;
  return a.jacobiSvd().singularValues()(0);
}

inline double operator_norm(const RealMatrix& a) {
  if (a.rows() == 0 || a.cols() == 0) return 0.0;
  return a.jacobiSvd().singularValues()(0);
}

// Constant in the p-triangle inequality for l^p quasi-norms,
// max{2, 2^{2/p-1}}. Finite for every p > 0 and equal to 2 for p >= 1.
inline double quasinorm_triangle_constant(double p) {
  if (!(p > 0.0)) throw parameter_error("quasinorm_triangle_constant: p must be positive");
  return std::max(2.0, std::pow(2.0, 2.0 / p - 1.0));
}

// Kronecker product, used to build tensor-product algebras in tests and
// in the second-quantization cross-checks.
inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

}  // namespace modlp
