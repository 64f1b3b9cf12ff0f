#pragma once

// Binary128 scalar with the Eigen trait glue needed to run dense kernels
// on it. Used to assemble operators whose entries cancel far below double
// rounding: the cancellation happens in quad, the small residual is
// rounded to double afterwards and keeps entrywise relative accuracy.

#include <limits>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "modlp/core.hpp"

namespace modlp {

using qdouble = boost::multiprecision::cpp_bin_float_quad;

}  // namespace modlp

namespace Eigen {

template <>
struct NumTraits<modlp::qdouble> : GenericNumTraits<modlp::qdouble> {
  using Real = modlp::qdouble;
  using NonInteger = modlp::qdouble;
  using Nested = modlp::qdouble;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 8,
    AddCost = 16,
    MulCost = 32
  };
  static Real epsilon() { return std::numeric_limits<modlp::qdouble>::epsilon(); }
  static Real dummy_precision() { return epsilon() * 1000; }
  static Real highest() { return (std::numeric_limits<modlp::qdouble>::max)(); }
  static Real lowest() { return std::numeric_limits<modlp::qdouble>::lowest(); }
  static Real infinity() { return std::numeric_limits<modlp::qdouble>::infinity(); }
  static Real quiet_NaN() { return std::numeric_limits<modlp::qdouble>::quiet_NaN(); }
  static int digits10() { return std::numeric_limits<modlp::qdouble>::digits10; }
};

}  // namespace Eigen

namespace modlp {

using QuadMatrix = Eigen::Matrix<qdouble, Eigen::Dynamic, Eigen::Dynamic>;
using QuadVector = Eigen::Matrix<qdouble, Eigen::Dynamic, 1>;

// Orthonormal basis of the column span. The input must have full column
// rank; no rank decision is made here.
inline QuadMatrix quad_thin_basis(const QuadMatrix& cols) {
  Eigen::HouseholderQR<QuadMatrix> qr(cols);
  return QuadMatrix(qr.householderQ() * QuadMatrix::Identity(cols.rows(), cols.cols()));
}

}  // namespace modlp
