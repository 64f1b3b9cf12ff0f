// Truncated Bose and exact Fermi Fock spaces over a finite-dimensional
// one-particle space, second quantization of one-particle operators, and the
// two-sided nuclearity bounds for the map A -> X A Omega on the field algebra
// of a real subspace.
#ifndef MODLP_FOCK_HPP
#define MODLP_FOCK_HPP

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "modlp/approx.hpp"
#include "modlp/core.hpp"
#include "modlp/gns.hpp"
#include "modlp/real_linear.hpp"
#include "modlp/rng.hpp"
#include "modlp/spectral.hpp"
#include "modlp/subspace.hpp"

namespace modlp {

// Dense Fock matrices above this dimension would not fit in memory; the
// combinatorial types stay constructible (bound computations only need the
// one-particle data) but refuse to materialize operators.
inline constexpr Eigen::Index kMaxDenseFockDimension = 2048;

// C(n + n_max, n) with saturation, so callers can test against the dense
// limit without overflowing.
inline unsigned long long truncated_bose_dimension(Eigen::Index n, Eigen::Index n_max) {
  constexpr unsigned long long cap = 1ull << 62;
  unsigned long long c = 1;
  for (Eigen::Index j = 1; j <= n; ++j) {
    // c stays integral: after step j it equals C(n_max + j, j).
    if (c > cap / static_cast<unsigned long long>(n_max + j)) return cap;
    c = c * static_cast<unsigned long long>(n_max + j) / static_cast<unsigned long long>(j);
  }
  return c;
}

// Bose Fock space over C^n cut at a total occupation number. Basis vectors
// are occupation multi-indices mu with sum(mu) <= max_total_occupation,
// ordered by total occupation and lexicographically within each sector, so
// sector projections are contiguous blocks. Dimension C(n + N_max, n).
struct BoseFockTruncation {
  Eigen::Index one_particle_dim = 0;
  Eigen::Index max_total_occupation = 0;
  std::vector<std::vector<int>> occupations;

  explicit BoseFockTruncation(Eigen::Index n, Eigen::Index n_max = 12)
      : one_particle_dim(n), max_total_occupation(n_max) {
    if (n < 1) throw input_error("BoseFockTruncation: need at least one mode");
    if (n_max < 0) throw input_error("BoseFockTruncation: negative occupation cut");
    if (truncated_bose_dimension(n, n_max) <=
        static_cast<unsigned long long>(kMaxDenseFockDimension)) {
      std::vector<int> mu(static_cast<std::size_t>(n), 0);
      for (Eigen::Index k = 0; k <= n_max; ++k) enumerate_sector(k, 0, mu);
      for (std::size_t i = 0; i < occupations.size(); ++i)
        index_of_[occupations[i]] = static_cast<Eigen::Index>(i);
    }
  }

  unsigned long long full_dimension() const {
    return truncated_bose_dimension(one_particle_dim, max_total_occupation);
  }

  bool materialized() const { return !occupations.empty(); }

  Eigen::Index dimension() const {
    require_materialized();
    return static_cast<Eigen::Index>(occupations.size());
  }

  Eigen::Index index_of(const std::vector<int>& mu) const {
    require_materialized();
    const auto it = index_of_.find(mu);
    if (it == index_of_.end())
      throw input_error("BoseFockTruncation: occupation outside the truncation");
    return it->second;
  }

  Vector vacuum() const {
    Vector v = Vector::Zero(dimension());
    v(0) = 1.0;
    return v;
  }

  // a*(e_i); transitions that would leave the truncation are dropped, which
  // makes the matrix adjoint of creation(i) exactly the annihilator a(e_i).
  Matrix creation(Eigen::Index i) const {
    const Eigen::Index d = dimension();
    if (i < 0 || i >= one_particle_dim)
      throw input_error("BoseFockTruncation: mode index out of range");
    Matrix a = Matrix::Zero(d, d);
    const std::size_t ii = static_cast<std::size_t>(i);
    for (Eigen::Index col = 0; col < d; ++col) {
      std::vector<int> mu = occupations[static_cast<std::size_t>(col)];
      int total = 0;
      for (int m : mu) total += m;
      if (total >= max_total_occupation) continue;
      mu[ii] += 1;
      a(index_of(mu), col) = std::sqrt(static_cast<double>(mu[ii]));
    }
    return a;
  }

  Matrix annihilation(Eigen::Index i) const { return creation(i).adjoint(); }

  // a*(h) = sum_i h_i a*(e_i), linear in h; a(h) is its adjoint and thereby
  // antilinear in h.
  Matrix creation(const Vector& h) const {
    require_one_particle(h);
    Matrix a = Matrix::Zero(dimension(), dimension());
    for (Eigen::Index i = 0; i < one_particle_dim; ++i)
      if (std::abs(h(i)) > 0.0) a += h(i) * creation(i);
    return a;
  }

  Matrix annihilation(const Vector& h) const { return creation(h).adjoint(); }

  // Self-adjoint field a*(h) + a(h); exact on the retained space because the
  // truncated creation and annihilation matrices stay mutual adjoints.
  Matrix field(const Vector& h) const {
    const Matrix c = creation(h);
    return c + Matrix(c.adjoint());
  }

  Matrix number_operator() const {
    const Eigen::Index d = dimension();
    Matrix n = Matrix::Zero(d, d);
    for (Eigen::Index col = 0; col < d; ++col) {
      int total = 0;
      for (int m : occupations[static_cast<std::size_t>(col)]) total += m;
      n(col, col) = static_cast<double>(total);
    }
    return n;
  }

  // Orthogonal projection onto total occupation <= cut, a leading block in
  // the graded basis order.
  Matrix occupation_projection(Eigen::Index cut) const {
    const Eigen::Index d = dimension();
    Matrix p = Matrix::Zero(d, d);
    for (Eigen::Index col = 0; col < d; ++col) {
      int total = 0;
      for (int m : occupations[static_cast<std::size_t>(col)]) total += m;
      if (total <= cut) p(col, col) = 1.0;
    }
    return p;
  }

 private:
  std::map<std::vector<int>, Eigen::Index> index_of_;

  void enumerate_sector(Eigen::Index k, Eigen::Index pos, std::vector<int>& mu) {
    if (pos == one_particle_dim - 1) {
      mu[static_cast<std::size_t>(pos)] = static_cast<int>(k);
      occupations.push_back(mu);
      return;
    }
    for (Eigen::Index v = 0; v <= k; ++v) {
      mu[static_cast<std::size_t>(pos)] = static_cast<int>(v);
      enumerate_sector(k - v, pos + 1, mu);
    }
  }

  void require_materialized() const {
    if (!materialized())
      throw input_error("BoseFockTruncation: dimension too large for dense operators");
  }

  void require_one_particle(const Vector& h) const {
    if (h.size() != one_particle_dim)
      throw input_error("BoseFockTruncation: one-particle vector has wrong length");
    check_finite(h, "BoseFockTruncation");
  }
};

// Fermi Fock space over C^n, dimension 2^n exact. Basis index b encodes the
// occupied set: mode i is filled iff bit i of b is set, and wedge factors are
// ordered by increasing mode index.
struct FermiFock {
  Eigen::Index one_particle_dim = 0;

  explicit FermiFock(Eigen::Index n) : one_particle_dim(n) {
    if (n < 1) throw input_error("FermiFock: need at least one mode");
    if (n > 12) throw input_error("FermiFock: dense operators limited to 12 modes");
  }

  Eigen::Index dimension() const { return Eigen::Index(1) << one_particle_dim; }

  Vector vacuum() const {
    Vector v = Vector::Zero(dimension());
    v(0) = 1.0;
    return v;
  }

  // a*(e_i) with the sign counting occupied modes below i, which realizes
  // insertion of e_i into an increasing wedge product.
  Matrix creation(Eigen::Index i) const {
    if (i < 0 || i >= one_particle_dim)
      throw input_error("FermiFock: mode index out of range");
    const Eigen::Index d = dimension();
    Matrix a = Matrix::Zero(d, d);
    const std::uint64_t bit = 1ull << i;
    const std::uint64_t below = bit - 1;
    for (Eigen::Index col = 0; col < d; ++col) {
      const std::uint64_t b = static_cast<std::uint64_t>(col);
      if (b & bit) continue;
      const int parity = std::popcount(b & below);
      a(static_cast<Eigen::Index>(b | bit), col) = (parity % 2 == 0) ? 1.0 : -1.0;
    }
    return a;
  }

  Matrix annihilation(Eigen::Index i) const { return creation(i).adjoint(); }

  Matrix creation(const Vector& h) const {
    if (h.size() != one_particle_dim)
      throw input_error("FermiFock: one-particle vector has wrong length");
    check_finite(h, "FermiFock");
    Matrix a = Matrix::Zero(dimension(), dimension());
    for (Eigen::Index i = 0; i < one_particle_dim; ++i)
      if (std::abs(h(i)) > 0.0) a += h(i) * creation(i);
    return a;
  }

  Matrix annihilation(const Vector& h) const { return creation(h).adjoint(); }
};

// Second quantization on the truncated Bose space, built column by column
// from Gamma(X)|mu> = mu_i^{-1/2} a*(X e_i) Gamma(X)|mu - e_i>. The operator
// preserves occupation sectors, so truncation loses nothing on the retained
// space and multiplicativity Gamma(X) Gamma(Y) = Gamma(XY) holds exactly.
inline Matrix second_quantize(const Matrix& x1, const BoseFockTruncation& trunc) {
  const Eigen::Index n = trunc.one_particle_dim;
  if (x1.rows() != n || x1.cols() != n)
    throw input_error("second_quantize: one-particle operator has wrong shape");
  check_finite(x1, "second_quantize");
  const Eigen::Index d = trunc.dimension();
  std::vector<Matrix> lifted_columns;
  lifted_columns.reserve(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i)
    lifted_columns.push_back(trunc.creation(Vector(x1.col(i))));
  Matrix g = Matrix::Zero(d, d);
  g(0, 0) = 1.0;
  // Basis order is graded, so the source column mu - e_i is always ready.
  for (Eigen::Index col = 1; col < d; ++col) {
    std::vector<int> mu = trunc.occupations[static_cast<std::size_t>(col)];
    Eigen::Index i = 0;
    while (mu[static_cast<std::size_t>(i)] == 0) ++i;
    const double root = std::sqrt(static_cast<double>(mu[static_cast<std::size_t>(i)]));
    mu[static_cast<std::size_t>(i)] -= 1;
    g.col(col) =
        lifted_columns[static_cast<std::size_t>(i)] * g.col(trunc.index_of(mu)) / root;
  }
  return g;
}

// Second quantization on the Fermi space: the matrix element between occupied
// sets T and S of equal size is the minor det X[T, S], by expanding
// (X e_{s_1}) wedge ... wedge (X e_{s_k}) in the wedge basis.
inline Matrix second_quantize(const Matrix& x1, const FermiFock& fock) {
  const Eigen::Index n = fock.one_particle_dim;
  if (x1.rows() != n || x1.cols() != n)
    throw input_error("second_quantize: one-particle operator has wrong shape");
  check_finite(x1, "second_quantize");
  const Eigen::Index d = fock.dimension();
  Matrix g = Matrix::Zero(d, d);
  std::vector<Eigen::Index> rows, cols;
  for (Eigen::Index bt = 0; bt < d; ++bt) {
    rows.clear();
    for (Eigen::Index i = 0; i < n; ++i)
      if (bt & (Eigen::Index(1) << i)) rows.push_back(i);
    for (Eigen::Index bs = 0; bs < d; ++bs) {
      if (std::popcount(static_cast<std::uint64_t>(bs)) !=
          static_cast<int>(rows.size()))
        continue;
      cols.clear();
      for (Eigen::Index i = 0; i < n; ++i)
        if (bs & (Eigen::Index(1) << i)) cols.push_back(i);
      if (rows.empty()) {
        g(bt, bs) = 1.0;
        continue;
      }
      Matrix minor(static_cast<Eigen::Index>(rows.size()),
                   static_cast<Eigen::Index>(cols.size()));
      for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < cols.size(); ++c)
          minor(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
              x1(rows[r], cols[c]);
      g(bt, bs) = minor.determinant();
    }
  }
  return g;
}

// exp(i(a*(h) + a(h))) on the truncated Bose space together with its
// accuracy diagnostics. The field is exactly self-adjoint on the truncation,
// so the exponential is unitary up to rounding; the physical truncation
// quality is tracked by the occupation gate ||h||^2 / N_max.
struct WeylOperator {
  Matrix matrix;
  double unitarity_defect = 0.0;
  double gate_ratio = 0.0;
  bool accuracy_gate_ok = true;
};

inline WeylOperator weyl_operator(const Vector& h, const BoseFockTruncation& trunc) {
  if (h.size() != trunc.one_particle_dim)
    throw input_error("weyl_operator: one-particle vector has wrong length");
  check_finite(h, "weyl_operator");
  WeylOperator out;
  const double h2 = h.squaredNorm();
  out.gate_ratio = trunc.max_total_occupation > 0
                       ? h2 / static_cast<double>(trunc.max_total_occupation)
                       : (h2 > 0.0 ? std::numeric_limits<double>::infinity() : 0.0);
  out.accuracy_gate_ok = out.gate_ratio <= 0.1;
  const Matrix phi = trunc.field(h);
  const SpectralData sd = hermitian_spectral(phi);
  Vector phase(sd.eigenvalues.size());
  for (Eigen::Index i = 0; i < phase.size(); ++i)
    phase(i) = std::exp(cdouble(0.0, sd.eigenvalues(i)));
  out.matrix = sd.eigenvectors * phase.asDiagonal() * sd.eigenvectors.adjoint();
  const Matrix eye = Matrix::Identity(out.matrix.rows(), out.matrix.cols());
  out.unitarity_defect = operator_norm(Matrix(out.matrix.adjoint() * out.matrix - eye));
  return out;
}

// Fermi field Phi[h] = a*(h) + a(h). Bounded with norm at most 2 ||h||,
// Phi[h] Omega = h on the one-particle sector, and Phi[h]^2 = ||h||^2 by the
// canonical anticommutation relations.
inline Matrix fermi_field(const Vector& h, const FermiFock& fock) {
  const Matrix c = fock.creation(h);
  return c + Matrix(c.adjoint());
}

// sum_{m >= 0} (m+1)^p x^m to absolute tolerance 1e-12. Once the term ratio
// x ((m+2)/(m+1))^p drops below rho = (1+x)/2 the tail is geometric.
inline double polylog_series(double p, double x) {
  if (!(x >= 0.0)) throw input_error("polylog_series: x must lie in [0, 1)");
  if (x >= 1.0 - 1e-12)
    throw input_error("polylog_series: series diverges as x approaches 1");
  if (x == 0.0) return 1.0;
  constexpr double tol = 1e-12;
  constexpr long cap = 20000000;
  const double rho = 0.5 * (1.0 + x);
  // For p <= 0 the ratio is below x < rho from the start; otherwise it falls
  // below rho once exp(p / (m+1)) <= rho / x.
  const long settled =
      p <= 0.0 ? 0 : static_cast<long>(std::ceil(p / std::log(rho / x)));
  double sum = 0.0;
  double xm = 1.0;
  for (long m = 0; m < cap; ++m) {
    const double term = std::pow(static_cast<double>(m + 1), p) * xm;
    sum += term;
    if (m >= settled && term * rho / (1.0 - rho) <= tol) return sum;
    xm *= x;
  }
  throw internal_error("polylog_series: iteration budget exhausted before convergence");
}

// Bose p-nuclearity bound (prod_l sum_m (m+1)^p t_l^{p m})^{1/p} over the
// eigenvalues t_l of the dominating one-particle operator; requires every
// t_l < 1. The empty product is the vacuum-only value 1.
inline double bose_xi_upper(const std::vector<double>& t_values, double p) {
  if (!(p > 0.0)) throw parameter_error("bose_xi_upper: p must be positive");
  double log_prod = 0.0;
  for (double t : t_values) {
    if (!(t >= 0.0)) throw input_error("bose_xi_upper: eigenvalues must be nonnegative");
    if (t >= 1.0)
      throw input_error(
          "bose_xi_upper: an eigenvalue reaches 1; the bound requires ||T|| < 1");
    log_prod += std::log(polylog_series(p, std::pow(t, p)));
  }
  return std::exp(log_prod / p);
}

// Fermi p-nuclearity bound (prod_j (1 + (2 t_j)^p))^{1/p}; the Pauli
// principle removes the norm condition. The looser exponential form
// exp(||2T||_p^p / p) is reported through the out parameter when requested.
inline double fermi_xi_upper(const std::vector<double>& t_values, double p,
                             double* exp_bound = nullptr) {
  if (!(p > 0.0)) throw parameter_error("fermi_xi_upper: p must be positive");
  double log_prod = 0.0;
  double power_sum = 0.0;
  for (double t : t_values) {
    if (!(t >= 0.0)) throw input_error("fermi_xi_upper: eigenvalues must be nonnegative");
    const double y = std::pow(2.0 * t, p);
    log_prod += std::log1p(y);
    power_sum += y;
  }
  if (exp_bound != nullptr) *exp_bound = std::exp(power_sum / p);
  return std::exp(log_prod / p);
}

// Joint dominating operator for a pair of maps: T = (|T+|^2 + |T-|^2)^{1/2}
// satisfies T^2 >= |T+-|^2 by construction and the defect is certified. The
// sharper property ||T|| <= max(||T+||, ||T-||) can fail for this
// construction and is only flagged.
struct JointBound {
  Matrix t;
  double norm = 0.0;
  double certificate = 0.0;
  bool norm_sharp = true;
  double norm_gap = 0.0;
};

inline JointBound joint_upper_bound(const Matrix& t_plus, const Matrix& t_minus) {
  if (t_plus.rows() != t_plus.cols() || t_minus.rows() != t_minus.cols() ||
      t_plus.rows() != t_minus.rows())
    throw input_error("joint_upper_bound: operators must be square and of equal size");
  check_finite(t_plus, "joint_upper_bound");
  check_finite(t_minus, "joint_upper_bound");
  const Matrix sq_plus = t_plus.adjoint() * t_plus;
  const Matrix sq_minus = t_minus.adjoint() * t_minus;
  Matrix m = sq_plus + sq_minus;
  m = 0.5 * (m + Matrix(m.adjoint()));
  const SpectralData sd = hermitian_spectral(m);
  JointBound out;
  out.t = sd.apply([](double lam) { return std::sqrt(std::max(lam, 0.0)); });
  const Matrix tsq = out.t * out.t;
  const double scale = std::max(1.0, operator_norm(m));
  out.certificate = std::min(min_eigenvalue(Matrix(tsq - sq_plus)),
                             min_eigenvalue(Matrix(tsq - sq_minus)));
  if (out.certificate < -1e-9 * scale)
    throw internal_error("joint_upper_bound: T^2 >= |T+-|^2 certification failed");
  out.norm = operator_norm(out.t);
  const double parts = std::max(operator_norm(t_plus), operator_norm(t_minus));
  out.norm_gap = out.norm - parts;
  out.norm_sharp = out.norm <= parts * (1.0 + 1e-12) + 1e-12;
  return out;
}

// Two-sided estimate for the p-quasinorm and p-nuclearity of the map
// A -> X A Omega over the field algebra of a real subspace H. The lower
// bound multiplies ||X1 E_H||_{R,p}; the upper bound is the nuclearity
// product over the eigenvalues of the joint dominating operator of the
// doubled system.
struct XiBounds {
  double p = 1.0;
  double lower = 0.0;
  double upper = 0.0;
  double x1eh_real_lp = 0.0;    // ||X1 E_H||_{R,p}
  double x1eh_real_norm = 0.0;  // real-linear operator norm of X1 E_H
  double upper_exp = 0.0;       // Fermi only: looser exponential bound
  bool norm_sharp = true;       // joint bound kept the max of the part norms
  bool has_oracle = false;
  double oracle = 0.0;
  std::string method;
};

namespace detail {

struct DoubledXiData {
  Matrix t_plus;
  Matrix t_minus;
  std::vector<double> t_eigenvalues;
  JointBound joint;
};

// Doubles H to H + conj(H) inside C^{2n}, where the swap conjugation fixes
// the doubled subspace, splits it into complex pieces K+-, and forms the
// joint dominating operator for X1 (+) conj(X1) against both projections.
inline DoubledXiData doubled_xi_data(const StandardSubspace& h, const Matrix& x1,
                                     double tol = 1e-9) {
  const Eigen::Index n = h.ambient_dim;
  if (x1.rows() != n || x1.cols() != n)
    throw input_error("xi_sandwich: one-particle operator has wrong shape");
  check_finite(x1, "xi_sandwich");
  const Eigen::Index k = h.basis.cols();
  Matrix doubled_basis = Matrix::Zero(2 * n, 2 * k);
  doubled_basis.topLeftCorner(n, k) = h.basis;
  doubled_basis.bottomRightCorner(n, k) = h.basis.conjugate();
  const StandardSubspace doubled(2 * n, doubled_basis);
  Matrix swap = Matrix::Zero(2 * n, 2 * n);
  swap.topRightCorner(n, n) = Matrix::Identity(n, n);
  swap.bottomLeftCorner(n, n) = Matrix::Identity(n, n);
  const Conjugation gamma(swap);
  Matrix x_doubled = Matrix::Zero(2 * n, 2 * n);
  x_doubled.topLeftCorner(n, n) = x1;
  x_doubled.bottomRightCorner(n, n) = x1.conjugate();
  const GammaSplit split = gamma_split_subspace(doubled, gamma, tol);
  DoubledXiData out;
  const auto projector = [&](const Matrix& basis) {
    if (basis.cols() == 0) return Matrix(Matrix::Zero(2 * n, 2 * n));
    return Matrix(basis * basis.adjoint());
  };
  out.t_plus = x_doubled * projector(split.k_plus);
  out.t_minus = x_doubled * projector(split.k_minus);
  out.joint = joint_upper_bound(out.t_plus, out.t_minus);
  const SpectralData sd = hermitian_spectral(out.joint.t);
  out.t_eigenvalues.reserve(static_cast<std::size_t>(sd.eigenvalues.size()));
  for (Eigen::Index i = 0; i < sd.eigenvalues.size(); ++i)
    out.t_eigenvalues.push_back(std::max(sd.eigenvalues(i), 0.0));
  return out;
}

inline void check_sandwich(const XiBounds& b) {
  if (b.lower > b.upper + 1e-9)
    throw internal_error("xi_sandwich: lower bound exceeded the upper bound");
}

}  // namespace detail

// Bose branch. Requires ||X1 E_H|| < 1; the nuclearity product additionally
// needs the joint dominating operator below norm one, which is re-checked
// because the sum-of-squares construction can raise the norm.
inline XiBounds xi_sandwich(const StandardSubspace& h, const Matrix& x1, double p,
                            const BoseFockTruncation& trunc) {
  if (!(p > 0.0)) throw parameter_error("xi_sandwich: p must be positive");
  if (trunc.one_particle_dim != h.ambient_dim)
    throw input_error("xi_sandwich: truncation does not match the ambient space");
  XiBounds out;
  out.p = p;
  const RealLinearOperator x1eh =
      RealLinearOperator::from_linear(x1).compose(h.real_projection());
  out.x1eh_real_norm = real_operator_norm(x1eh);
  out.x1eh_real_lp = real_lp_quasinorm(x1eh, p);
  if (out.x1eh_real_norm >= 1.0)
    throw input_error("xi_sandwich: the Bose branch requires ||X1 E_H|| < 1");
  out.lower = std::exp(-0.5) * std::pow(2.0, -1.0 / p) * out.x1eh_real_lp;
  const detail::DoubledXiData data = detail::doubled_xi_data(h, x1);
  out.norm_sharp = data.joint.norm_sharp;
  if (data.joint.norm >= 1.0)
    throw input_error(
        "xi_sandwich: the joint dominating operator reaches norm 1; the "
        "sum-of-squares construction lost the norm bound ||X1 E_H|| < 1");
  out.upper = bose_xi_upper(data.t_eigenvalues, p);
  out.method = data.joint.norm_sharp ? "bose-doubled" : "bose-doubled-normflag";
  detail::check_sandwich(out);
  return out;
}

// Fermi branch. No norm condition; the lower constant reflects the field
// operator norm ||Phi[h]|| <= 2 ||h|| in place of the unitary Weyl bound.
inline XiBounds xi_sandwich(const StandardSubspace& h, const Matrix& x1, double p,
                            const FermiFock& fock) {
  if (!(p > 0.0)) throw parameter_error("xi_sandwich: p must be positive");
  if (fock.one_particle_dim != h.ambient_dim)
    throw input_error("xi_sandwich: Fock space does not match the ambient space");
  XiBounds out;
  out.p = p;
  const RealLinearOperator x1eh =
      RealLinearOperator::from_linear(x1).compose(h.real_projection());
  out.x1eh_real_norm = real_operator_norm(x1eh);
  out.x1eh_real_lp = real_lp_quasinorm(x1eh, p);
  out.lower = 0.5 * std::pow(2.0, -1.0 / p) * out.x1eh_real_lp;
  const detail::DoubledXiData data = detail::doubled_xi_data(h, x1);
  out.norm_sharp = data.joint.norm_sharp;
  out.upper = fermi_xi_upper(data.t_eigenvalues, p, &out.upper_exp);
  out.method = data.joint.norm_sharp ? "fermi-doubled" : "fermi-doubled-normflag";
  detail::check_sandwich(out);
  return out;
}

// Brute-force bracket for the approximation numbers of A -> X A Omega over
// the operator-norm unit ball of a concrete matrix algebra. The Hilbert-
// Schmidt ball inside the operator ball certifies lower bounds through
// singular values, the reverse inclusion scaled by sqrt(dim) certifies upper
// bounds, and projected gradient ascent over the operator ball tightens the
// leading lower bound.
struct XiOracleTerm {
  double lower = 0.0;
  double upper = 0.0;
  double ascent = 0.0;
};

struct XiOracle {
  std::vector<XiOracleTerm> terms;
  double lp_lower = 0.0;
  double lp_upper = 0.0;
  double ball_factor = 1.0;  // sqrt of the representation dimension
};

inline XiOracle xi_banach_oracle(const MatrixAlgebra& algebra, const Matrix& x_fock,
                                 double p, int restarts = 64,
                                 std::uint64_t seed = 5) {
  if (!(p > 0.0)) throw parameter_error("xi_banach_oracle: p must be positive");
  if (restarts < 1) throw parameter_error("xi_banach_oracle: need at least one restart");
  const Eigen::Index d = algebra.ambient_dim;
  if (x_fock.rows() != d || x_fock.cols() != d)
    throw input_error("xi_banach_oracle: operator does not match the algebra space");
  check_finite(x_fock, "xi_banach_oracle");
  const Eigen::Index m = static_cast<Eigen::Index>(algebra.basis.size());
  // The vacuum is the first basis vector, so B Omega is the first column.
  Matrix y(d, m);
  for (Eigen::Index j = 0; j < m; ++j)
    y.col(j) = x_fock * algebra.basis[static_cast<std::size_t>(j)].col(0);

  XiOracle out;
  out.ball_factor = std::sqrt(static_cast<double>(d));
  const std::vector<double> svals = approximation_numbers(y);

  // Ascent for the leading approximation number: maximize ||y c|| over
  // coefficient vectors with ||A(c)||_op = 1. Renormalization keeps every
  // iterate feasible, so the best value is a certified lower bound.
  const auto feasible_value = [&](Vector& c) {
    const double norm = operator_norm(algebra.element(c));
    if (norm <= 1e-300) return 0.0;
    c /= norm;
    return std::sqrt(std::real(cdouble((y * c).squaredNorm())));
  };
  double ascent = 0.0;
  for (int r = 0; r < restarts; ++r) {
    Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(r));
    Vector c(m);
    for (Eigen::Index j = 0; j < m; ++j) c(j) = rng.complex_gaussian();
    double value = feasible_value(c);
    double step = 1.0;
    for (int it = 0; it < 300 && step > 1e-10; ++it) {
      const Vector grad = y.adjoint() * (y * c);
      Vector trial = c + step * grad;
      const double trial_value = feasible_value(trial);
      Vector jump = grad;
      const double jump_value = feasible_value(jump);
      if (jump_value > trial_value && jump_value > value + 1e-14) {
        c = jump;
        value = jump_value;
        step = std::min(step * 1.3, 8.0);
      } else if (trial_value > value + 1e-14) {
        c = trial;
        value = trial_value;
        step = std::min(step * 1.3, 8.0);
      } else {
        step *= 0.5;
      }
    }
    ascent = std::max(ascent, value);
  }

  out.terms.resize(svals.size());
  const double upper0 =
      std::max(out.ball_factor * (svals.empty() ? 0.0 : svals[0]), ascent);
  for (std::size_t k = 0; k < svals.size(); ++k) {
    XiOracleTerm& term = out.terms[k];
    term.lower = svals[k];
    term.upper = std::min(out.ball_factor * svals[k], upper0);
    if (k == 0) {
      term.ascent = ascent;
      term.lower = std::max(term.lower, ascent);
      term.upper = upper0;
    }
  }
  double low = 0.0, high = 0.0;
  for (const XiOracleTerm& term : out.terms) {
    low += std::pow(term.lower, p);
    high += std::pow(term.upper, p);
  }
  out.lp_lower = std::pow(low, 1.0 / p);
  out.lp_upper = std::pow(high, 1.0 / p);
  return out;
}

}  // namespace modlp

#endif  // MODLP_FOCK_HPP
