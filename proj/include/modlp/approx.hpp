#pragma once

// Approximation numbers, l^p quasi-norms and the p-nuclearity bridge
// constants for maps between finite-dimensional Hilbert spaces.
//
// alpha_n is the distance (in operator norm) to the rank-n operators, so
// for a matrix it is the (n+1)-th singular value and alpha_0 is the norm.
// The quasi-norm ||.||_p = (sum alpha_n^p)^(1/p) is finite for every p > 0
// at finite dimension; monotonicity and triangle-type inequalities are
// checked by the test suite rather than assumed.

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "modlp/core.hpp"

namespace modlp {

// Singular values in descending order. Conceptually the sequence continues
// with zeros; only the min(rows, cols) leading entries are returned.
inline std::vector<double> approximation_numbers(const Matrix& a) {
  check_finite(a, "approximation_numbers");
  if (a.rows() == 0 || a.cols() == 0) return {};
  RealVector sv;
  if (std::min(a.rows(), a.cols()) > 16) {
    Eigen::BDCSVD<Matrix> svd(a);
    sv = svd.singularValues();
  } else {
    Eigen::JacobiSVD<Matrix> svd(a);
    sv = svd.singularValues();
  }
  return std::vector<double>(sv.data(), sv.data() + sv.size());
}

inline std::vector<double> approximation_numbers(const RealMatrix& a) {
  check_finite(a, "approximation_numbers");
  if (a.rows() == 0 || a.cols() == 0) return {};
  RealVector sv;
  if (std::min(a.rows(), a.cols()) > 16) {
    Eigen::BDCSVD<RealMatrix> svd(a);
    sv = svd.singularValues();
  } else {
    Eigen::JacobiSVD<RealMatrix> svd(a);
    sv = svd.singularValues();
  }
  return std::vector<double>(sv.data(), sv.data() + sv.size());
}

inline double lp_quasinorm(const std::vector<double>& alphas, double p) {
  if (!(p > 0.0)) throw parameter_error("lp_quasinorm: p must be positive");
  double sum = 0.0;
  for (double a : alphas) {
    if (a < 0.0) throw input_error("lp_quasinorm: negative approximation number");
    if (a > 0.0) sum += std::pow(a, p);
  }
  return std::pow(sum, 1.0 / p);
}

inline double lp_quasinorm(const Matrix& a, double p) {
  return lp_quasinorm(approximation_numbers(a), p);
}

inline double lp_quasinorm(const RealMatrix& a, double p) {
  return lp_quasinorm(approximation_numbers(a), p);
}

// Constant c_p = 2^(2+3/p) in nu_p <= c_p ||.||_p (0 < p <= 1): a map with
// finite l^p quasi-norm is p-nuclear with controlled decomposition weight.
inline double nuclearity_from_lp_constant(double p) {
  if (!(p > 0.0 && p <= 1.0))
    throw parameter_error("nuclearity_from_lp_constant: requires 0 < p <= 1");
  return std::pow(2.0, 2.0 + 3.0 / p);
}

// Constant c_{p,q} in ||.||_q <= c_{p,q} nu_p, valid for q > p/(1-p):
// c_{p,q}^q = 1 + (p/(1-p))^q * sum_{n>=1} n^{q(1-1/p)}. For q = infinity
// the bound degenerates to alpha_0 <= nu_p with constant 1.
inline double lq_from_nuclearity_constant(double p, double q) {
  if (!(p > 0.0 && p <= 1.0))
    throw parameter_error("lq_from_nuclearity_constant: requires 0 < p <= 1");
  if (std::isinf(q)) return 1.0;
  const double threshold = (p < 1.0) ? p / (1.0 - p) : std::numeric_limits<double>::infinity();
  if (!(q > threshold))
    throw parameter_error("lq_from_nuclearity_constant: requires q > p/(1-p)");
  const double expo = q * (1.0 - 1.0 / p);  // < -1, so the series converges
  double series = 0.0;
  double n = 1.0;
  for (;;) {
    double term = std::pow(n, expo);
    series += term;
    // Integral tail bound: sum_{k>n} k^expo <= n^(expo+1)/(-expo-1).
    double tail = std::pow(n, expo + 1.0) / (-expo - 1.0);
    if (tail < 1e-15 * std::max(series, 1.0)) break;
    n += 1.0;
    if (n > 5e7) break;  // the tail bound has certainly fired by now
  }
  const double ratio = p / (1.0 - p);
  return std::pow(1.0 + std::pow(ratio, q) * series, 1.0 / q);
}

struct NuclearSandwich {
  double lp;          // ||Xi||_p
  double nu_p_bound;  // c_p ||Xi||_p, certified upper bound on nu_p
  double lq;          // ||Xi||_q (alpha_0 when q = infinity)
  double c_pq;        // constant in ||Xi||_q <= c_pq nu_p
};

// Evaluates the l^p -> nuclear -> l^q chain on a singular value list and
// asserts the composite inequality ||.||_q <= c_pq * c_p * ||.||_p.
inline NuclearSandwich pnuclear_sandwich(const std::vector<double>& alphas, double p, double q) {
  NuclearSandwich out{};
  out.lp = lp_quasinorm(alphas, p);
  out.nu_p_bound = nuclearity_from_lp_constant(p) * out.lp;
  out.c_pq = lq_from_nuclearity_constant(p, q);
  if (std::isinf(q)) {
    out.lq = alphas.empty() ? 0.0 : *std::max_element(alphas.begin(), alphas.end());
  } else {
    out.lq = lp_quasinorm(alphas, q);
  }
  if (out.lq > out.c_pq * out.nu_p_bound * (1.0 + 1e-9) + 1e-15)
    throw internal_error("pnuclear_sandwich: composite chain inequality failed");
  return out;
}

}  // namespace modlp
