#pragma once

// Deterministic random generators for tests, sampling-based bounds and the
// CLI sweeps. The gaussian sampler is implemented directly (Box-Muller over
// mt19937_64 words) because std::normal_distribution's output sequence is
// implementation-defined and the CLI must produce byte-identical files for
// a fixed seed.

#include <cmath>
#include <cstdint>
#include <random>

#include "modlp/core.hpp"

namespace modlp {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Independent child stream; (seed, stream) pairs are decorrelated by the
  // seed_seq mix, so per-item streams do not depend on evaluation order.
  static Rng stream(std::uint64_t seed, std::uint64_t item) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed),
                      static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(item),
                      static_cast<std::uint32_t>(item >> 32)};
    Rng r(0);
    r.engine_.seed(seq);
    return r;
  }

  double uniform01() {
    // 53-bit mantissa, uniform on [0, 1).
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u = 0.0;
    do {
      u = uniform01();
    } while (u <= 0.0);
    double v = uniform01();
    double r = std::sqrt(-2.0 * std::log(u));
    spare_ = r * std::sin(2.0 * M_PI * v);
    have_spare_ = true;
    return r * std::cos(2.0 * M_PI * v);
  }

  cdouble complex_gaussian() { return cdouble(gaussian(), gaussian()) / std::sqrt(2.0); }

  std::uint64_t integer() { return engine_(); }

  RealMatrix real_gaussian_matrix(int rows, int cols) {
    RealMatrix m(rows, cols);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) m(i, j) = gaussian();
    return m;
  }

  Matrix complex_gaussian_matrix(int rows, int cols) {
    Matrix m(rows, cols);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) m(i, j) = complex_gaussian();
    return m;
  }

  // Haar-distributed unitary: QR of a Ginibre matrix with the R-diagonal
  // phase fix (without it the distribution is not Haar).
  Matrix haar_unitary(int n) {
    Matrix g = complex_gaussian_matrix(n, n);
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ();
    Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < n; ++j) {
      cdouble d = r(j, j);
      cdouble phase = (std::abs(d) > 0.0) ? d / std::abs(d) : cdouble(1, 0);
      q.col(j) *= phase;
    }
    return q;
  }

  // Random density matrix with full rank almost surely.
  Matrix density_matrix(int n) {
    Matrix g = complex_gaussian_matrix(n, n);
    Matrix rho = g * g.adjoint();
    rho /= rho.trace().real();
    return 0.5 * (rho + rho.adjoint());
  }

  // Random PSD matrix, unnormalized.
  Matrix psd_matrix(int n) {
    Matrix g = complex_gaussian_matrix(n, n);
    Matrix a = g * g.adjoint();
    return 0.5 * (a + a.adjoint());
  }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace modlp
