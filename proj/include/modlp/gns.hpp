#pragma once

// GNS representations of states on *-subalgebras of M_d, with the full
// modular package: cyclic vector, commutant, the projection Q onto the
// closure of (commutant) Omega, the antilinear S with S(Q a Omega) =
// Q a* Omega extended by zero, and its polar parts J and Delta.
//
// Algebras are stored as Hilbert-Schmidt orthonormal vector-space bases
// that are verified to be closed under products and adjoints and to
// contain the identity.

#include <cmath>
#include <utility>
#include <vector>

#include "modlp/approx.hpp"
#include "modlp/real_linear.hpp"
#include "modlp/rng.hpp"
#include "modlp/spectral.hpp"
#include "modlp/subspace.hpp"

namespace modlp {

struct MatrixAlgebra {
  Eigen::Index ambient_dim = 0;
  std::vector<Matrix> basis;  // HS-orthonormal, spans a unital *-algebra

  static double hs_inner(const Matrix& a, const Matrix& b) {
    return std::real((a.adjoint() * b).trace());
  }

  static cdouble hs_inner_c(const Matrix& a, const Matrix& b) {
    return (a.adjoint() * b).trace();
  }

  // Orthonormalizes a raw spanning set and verifies algebraic closure.
  static MatrixAlgebra from_spanning_set(Eigen::Index d, const std::vector<Matrix>& raw) {
    MatrixAlgebra alg;
    alg.ambient_dim = d;
    for (const Matrix& x : raw) {
      if (x.rows() != d || x.cols() != d)
        throw input_error("MatrixAlgebra: element has wrong shape");
      check_finite(x, "MatrixAlgebra");
      alg.append_independent(x);
    }
    alg.verify_closed();
    return alg;
  }

  // Closes a generator list under adjoints and products by iterated
  // multiplication; the identity is always included.
  static MatrixAlgebra from_generators(Eigen::Index d, const std::vector<Matrix>& gens) {
    MatrixAlgebra alg;
    alg.ambient_dim = d;
    alg.append_independent(Matrix::Identity(d, d));
    for (const Matrix& g : gens) {
      if (g.rows() != d || g.cols() != d)
        throw input_error("MatrixAlgebra: generator has wrong shape");
      alg.append_independent(g);
      alg.append_independent(g.adjoint());
    }
    bool grew = true;
    while (grew && static_cast<Eigen::Index>(alg.basis.size()) < d * d) {
      grew = false;
      const std::size_t m = alg.basis.size();
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
          if (alg.append_independent(alg.basis[i] * alg.basis[j])) grew = true;
    }
    alg.verify_closed();
    return alg;
  }

  // Direct sum of full matrix blocks; offsets/sizes must tile {0..d-1} so
  // the algebra contains the identity of M_d.
  static MatrixAlgebra from_blocks(Eigen::Index d,
                                   const std::vector<std::pair<Eigen::Index, Eigen::Index>>& blocks) {
    Eigen::Index covered = 0;
    for (const auto& [off, size] : blocks) {
      if (off != covered || size <= 0)
        throw input_error("MatrixAlgebra: blocks must tile the diagonal without gaps");
      covered += size;
    }
    if (covered != d) throw input_error("MatrixAlgebra: blocks do not cover the ambient space");
    MatrixAlgebra alg;
    alg.ambient_dim = d;
    for (const auto& [off, size] : blocks)
      for (Eigen::Index i = 0; i < size; ++i)
        for (Eigen::Index j = 0; j < size; ++j) {
          Matrix e = Matrix::Zero(d, d);
          e(off + i, off + j) = 1.0;
          alg.basis.push_back(e);
        }
    alg.verify_closed();
    return alg;
  }

  static MatrixAlgebra full(Eigen::Index d) {
    return from_blocks(d, {{0, d}});
  }

  static MatrixAlgebra diagonal(Eigen::Index d) {
    MatrixAlgebra alg;
    alg.ambient_dim = d;
    for (Eigen::Index i = 0; i < d; ++i) {
      Matrix e = Matrix::Zero(d, d);
      e(i, i) = 1.0;
      alg.basis.push_back(e);
    }
    alg.verify_closed();
    return alg;
  }

  Eigen::Index dim() const { return static_cast<Eigen::Index>(basis.size()); }

  // HS coordinates of x in this basis; the distance of x to the span is
  // returned through *residual when requested.
  Vector coordinates(const Matrix& x, double* residual = nullptr) const {
    Vector c(dim());
    for (Eigen::Index i = 0; i < dim(); ++i) c(i) = hs_inner_c(basis[i], x);
    if (residual) {
      Matrix rec = Matrix::Zero(ambient_dim, ambient_dim);
      for (Eigen::Index i = 0; i < dim(); ++i) rec += c(i) * basis[i];
      *residual = (x - rec).norm();
    }
    return c;
  }

  Matrix element(const Vector& c) const {
    Matrix x = Matrix::Zero(ambient_dim, ambient_dim);
    for (Eigen::Index i = 0; i < dim(); ++i) x += c(i) * basis[i];
    return x;
  }

  bool contains(const Matrix& x, double tol = 1e-9) const {
    double resid = 0.0;
    coordinates(x, &resid);
    return resid <= tol * std::max(1.0, x.norm());
  }

  bool is_subalgebra_of(const MatrixAlgebra& other, double tol = 1e-9) const {
    if (ambient_dim != other.ambient_dim) return false;
    for (const Matrix& b : basis)
      if (!other.contains(b, tol)) return false;
    return true;
  }

  void verify_closed(double tol = 1e-9) const {
    if (basis.empty()) throw input_error("MatrixAlgebra: empty basis");
    if (!contains(Matrix::Identity(ambient_dim, ambient_dim), tol))
      throw input_error("MatrixAlgebra: does not contain the identity");
    for (const Matrix& b : basis) {
      if (!contains(b.adjoint(), tol))
        throw input_error("MatrixAlgebra: not closed under adjoints");
    }
    for (const Matrix& a : basis)
      for (const Matrix& b : basis)
        if (!contains(a * b, tol))
          throw input_error("MatrixAlgebra: not closed under products");
  }

 private:
  bool append_independent(const Matrix& x, double tol = 1e-10) {
    Matrix resid = x;
    for (const Matrix& b : basis) resid -= hs_inner_c(b, x) * b;
    // One re-orthogonalization pass keeps the basis orthonormal to
    // machine precision even for long generator closures.
    for (const Matrix& b : basis) resid -= hs_inner_c(b, resid) * b;
    const double nrm = resid.norm();
    if (nrm <= tol * std::max(1.0, x.norm())) return false;
    basis.push_back(resid / nrm);
    return true;
  }
};

struct AlgebraState {
  Matrix density;

  explicit AlgebraState(Matrix rho) : density(std::move(rho)) {
    check_finite(density, "AlgebraState");
    if (density.rows() != density.cols()) throw input_error("AlgebraState: density not square");
    if (!is_hermitian(density, 1e-10)) throw input_error("AlgebraState: density not self-adjoint");
    if (std::abs(density.trace().real() - 1.0) > 1e-12 || std::abs(density.trace().imag()) > 1e-12)
      throw input_error("AlgebraState: trace must be 1");
    if (min_eigenvalue(density) < -1e-12)
      throw input_error("AlgebraState: density has a negative eigenvalue");
  }

  cdouble omega(const Matrix& a) const { return (density * a).trace(); }
};

struct GnsData {
  GnsData(MatrixAlgebra a, AlgebraState s) : algebra(std::move(a)), state(std::move(s)) {}

  MatrixAlgebra algebra;
  AlgebraState state;
  Eigen::Index rep_dim = 0;
  Matrix coord_map;            // W: algebra coordinates -> GNS vectors, W*W = Gram
  Matrix coord_pinv;           // right inverse of W on the quotient
  std::vector<Matrix> rep;     // pi(basis[i]) on the GNS space
  Vector cyclic;               // Omega
  std::vector<Matrix> commutant;
  Matrix q_projection;         // Q, projection onto closure(commutant Omega)
  RealLinearOperator tomita_s; // S Q a Omega = Q a* Omega, zero on the complement
  Matrix modular_j;            // antilinear matrix of J
  Matrix modular_delta;        // Delta = S*S
  bool faithful = false;       // omega faithful on the represented algebra

  Vector vector_of(const Matrix& a) const {
    double resid = 0.0;
    const Vector c = algebra.coordinates(a, &resid);
    if (resid > 1e-8 * std::max(1.0, a.norm()))
      throw input_error("GnsData::vector_of: element not in the algebra");
    return coord_map * c;
  }

  Matrix represent(const Matrix& a) const {
    const Vector c = algebra.coordinates(a);
    Matrix out = Matrix::Zero(rep_dim, rep_dim);
    for (Eigen::Index i = 0; i < algebra.dim(); ++i) out += c(i) * rep[i];
    return out;
  }
};

inline GnsData gns_construct(const MatrixAlgebra& algebra, const AlgebraState& state,
                             double tol = 1e-9) {
  if (state.density.rows() != algebra.ambient_dim)
    throw input_error("gns_construct: state dimension does not match the algebra");
  const Eigen::Index m = algebra.dim();

  // Gram matrix of the state sesquilinear form on the algebra.
  Matrix gram(m, m);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < m; ++j)
      gram(i, j) = state.omega(algebra.basis[i].adjoint() * algebra.basis[j]);
  gram = 0.5 * (gram + gram.adjoint());

  const SpectralData gs = hermitian_spectral(gram);
  const double top = std::max(gs.eigenvalues(0), 0.0);
  Eigen::Index r = 0;
  while (r < m && gs.eigenvalues(r) > kKernelRelTol * top) ++r;
  if (r == 0) throw input_error("gns_construct: state vanishes on the whole algebra");

  GnsData out{algebra, state};
  out.rep_dim = r;
  RealVector lam_half(r), lam_invhalf(r);
  for (Eigen::Index i = 0; i < r; ++i) {
    lam_half(i) = std::sqrt(gs.eigenvalues(i));
    lam_invhalf(i) = 1.0 / lam_half(i);
  }
  const Matrix u_r = gs.eigenvectors.leftCols(r);
  out.coord_map = lam_half.asDiagonal() * u_r.adjoint();     // r x m
  out.coord_pinv = u_r * lam_invhalf.asDiagonal();           // m x r

  out.cyclic = out.coord_map * algebra.coordinates(Matrix::Identity(algebra.ambient_dim,
                                                                    algebra.ambient_dim));

  // Left multiplication in coordinates, compressed to the quotient.
  out.rep.reserve(m);
  for (Eigen::Index k = 0; k < m; ++k) {
    Matrix lk(m, m);
    for (Eigen::Index j = 0; j < m; ++j)
      lk.col(j) = algebra.coordinates(algebra.basis[k] * algebra.basis[j]);
    out.rep.push_back(out.coord_map * lk * out.coord_pinv);
  }

  // The null space of the Gram form is a left ideal, so the compressed rep
  // is multiplicative; the cyclic vector must reproduce the state.
  for (Eigen::Index k = 0; k < m; ++k) {
    const cdouble want = state.omega(algebra.basis[k]);
    const cdouble got = out.cyclic.dot(out.rep[k] * out.cyclic);
    if (std::abs(want - got) > 1e-10 * std::max(1.0, std::abs(want)))
      throw internal_error("gns_construct: cyclic vector does not reproduce the state");
  }

  // Commutant through the vectorized equations pi(b) x = x pi(b).
  {
    const Eigen::Index r2 = r * r;
    Matrix stack(m * r2, r2);
    const Matrix eye_r = Matrix::Identity(r, r);
    for (Eigen::Index k = 0; k < m; ++k)
      stack.block(k * r2, 0, r2, r2) =
          kron(eye_r, out.rep[k]) - kron(out.rep[k].transpose(), eye_r);
    Eigen::JacobiSVD<Matrix> svd(stack, Eigen::ComputeThinV);
    const RealVector sv = svd.singularValues();
    const double cut = (sv.size() > 0 ? sv(0) : 0.0) * kKernelRelTol;
    for (Eigen::Index j = sv.size() - 1; j >= 0; --j) {
      if (sv(j) > cut && sv(j) > 1e-9) break;
      Matrix x(r, r);
      for (Eigen::Index col = 0; col < r; ++col)
        x.col(col) = svd.matrixV().col(j).segment(col * r, r);
      out.commutant.push_back(x);
    }
    if (out.commutant.empty())
      throw internal_error("gns_construct: commutant lost the identity");
  }

  // Q projects onto the closure of (commutant) Omega.
  {
    Matrix cols(r, static_cast<Eigen::Index>(out.commutant.size()));
    for (std::size_t j = 0; j < out.commutant.size(); ++j)
      cols.col(static_cast<Eigen::Index>(j)) = out.commutant[j] * out.cyclic;
    const Matrix q_basis = complex_colspace(cols, 1e-9);
    out.q_projection = q_basis * q_basis.adjoint();
  }

  // S from its defining constraints, solved in realified coordinates and
  // extended by zero off the commutant cyclic subspace. The least-squares
  // residual certifies well-definedness.
  {
    const Matrix star_coords = [&] {
      Matrix sc(m, m);
      for (Eigen::Index i = 0; i < m; ++i)
        sc.col(i) = algebra.coordinates(algebra.basis[i].adjoint());
      return sc;
    }();
    // The complement of a projection has singular values 1 or 0, so the
    // rank cut must be absolute; a relative cut misreads the zero matrix.
    const Matrix q_im = complex_colspace(Matrix(Matrix::Identity(r, r) - out.q_projection),
                                         kKernelRelTol, 0.5);
    const Eigen::Index extra = q_im.cols();
    RealMatrix xs(2 * r, 2 * m + 2 * extra);
    RealMatrix ys(2 * r, 2 * m + 2 * extra);
    for (Eigen::Index i = 0; i < m; ++i) {
      const Vector vi = out.q_projection * (out.coord_map * Vector(Matrix::Identity(m, m).col(i)));
      const Vector wi = out.q_projection * (out.coord_map * Vector(star_coords.col(i)));
      xs.col(2 * i) = realify(vi);
      ys.col(2 * i) = realify(wi);
      xs.col(2 * i + 1) = realify(Vector(cdouble(0, 1) * vi));
      ys.col(2 * i + 1) = realify(Vector(cdouble(0, -1) * wi));
    }
    for (Eigen::Index j = 0; j < extra; ++j) {
      const Vector zj = q_im.col(j);
      xs.col(2 * m + 2 * j) = realify(zj);
      ys.col(2 * m + 2 * j).setZero();
      xs.col(2 * m + 2 * j + 1) = realify(Vector(cdouble(0, 1) * zj));
      ys.col(2 * m + 2 * j + 1).setZero();
    }
    const RealMatrix xs_pinv = xs.completeOrthogonalDecomposition().pseudoInverse();
    const RealMatrix s_real = ys * xs_pinv;
    if ((s_real * xs - ys).norm() > tol * std::max(1.0, ys.norm()))
      throw internal_error("gns_construct: S is not well defined on the quotient data");
    out.tomita_s = split_real_linear(s_real);
    if (out.tomita_s.linear.norm() > tol * std::max(1.0, s_real.norm()))
      throw internal_error("gns_construct: S acquired a complex-linear part");
    out.tomita_s.linear.setZero();
  }

  // Polar data and its structural identities.
  {
    const RealLinearOperator delta_rl = out.tomita_s.real_adjoint().compose(out.tomita_s);
    out.modular_delta = 0.5 * (delta_rl.linear + delta_rl.linear.adjoint());
    if (delta_rl.antilinear.norm() > tol * std::max(1.0, out.modular_delta.norm()))
      throw internal_error("gns_construct: Delta acquired an antilinear part");
    out.modular_j = out.tomita_s.antilinear * operator_power(out.modular_delta, -0.5).conjugate();
    const Matrix jj = out.modular_j * out.modular_j.conjugate();
    if ((jj - out.q_projection).norm() > 1e-8 * std::max(1.0, out.q_projection.norm()))
      throw internal_error("gns_construct: J*J does not equal Q");
    const Matrix dk = out.modular_delta * (Matrix::Identity(r, r) - out.q_projection);
    if (dk.norm() > 1e-8 * std::max(1.0, out.modular_delta.norm()))
      throw internal_error("gns_construct: Delta does not vanish off range Q");
  }

  // Faithfulness on the represented algebra: the cyclic map a -> a Omega
  // is injective exactly when the quotient keeps one dimension per
  // represented dimension.
  {
    Matrix stack(r * r, m);
    for (Eigen::Index k = 0; k < m; ++k)
      for (Eigen::Index col = 0; col < r; ++col)
        stack.block(col * r, k, r, 1) = out.rep[k].col(col);
    const Eigen::Index rep_rank = complex_colspace(stack, 1e-9).cols();
    out.faithful = (rep_rank == r);
  }
  return out;
}

struct XiAlphaMap {
  double alpha = 0.0;
  Matrix map;                         // columns: Delta^alpha pi(b) Omega over a GNS-orthonormal domain frame
  std::vector<double> surrogate;      // singular values of `map` (Hilbert-domain surrogate)
  std::vector<double> sampled_lower;  // certified lower bounds for alpha_n over the operator-norm ball
};

namespace detail {

// Certified lower bounds on approximation numbers over the operator-norm
// unit ball from sampled images: for any n+1 unit-ball elements,
// alpha_n >= sigma_{n+1}(images) / sqrt(n+1), because an l2-unit coefficient
// vector combines them into an element of norm at most sqrt(n+1).
inline std::vector<double> sampled_ball_lower_bounds(const Matrix& images,
                                                     Eigen::Index how_many) {
  std::vector<double> lower(static_cast<std::size_t>(how_many), 0.0);
  if (images.cols() == 0 || how_many == 0) return lower;
  for (Eigen::Index j = 0; j < images.cols(); ++j)
    lower[0] = std::max(lower[0], images.col(j).norm());
  Eigen::ColPivHouseholderQR<Matrix> qr(images);
  const Eigen::Index usable = std::min<Eigen::Index>(how_many, qr.rank());
  for (Eigen::Index n = 1; n < usable; ++n) {
    Matrix sel(images.rows(), n + 1);
    for (Eigen::Index k = 0; k <= n; ++k)
      sel.col(k) = images.col(qr.colsPermutation().indices()(k));
    const auto sv = approximation_numbers(sel);
    if (static_cast<Eigen::Index>(sv.size()) > n)
      lower[static_cast<std::size_t>(n)] =
          std::max(lower[static_cast<std::size_t>(n)], sv[n] / std::sqrt(double(n + 1)));
  }
  return lower;
}

}  // namespace detail

// The map b -> Delta^alpha pi(b) Omega on a subalgebra, with the domain
// carrying the GNS inner product of the restricted state. Sampling over
// Haar-style unit-operator-norm elements yields certified lower bounds
// for the operator-norm-ball approximation numbers; they are lower bounds
// only and are reported as such.
inline XiAlphaMap xi_alpha_map(const GnsData& gns, const MatrixAlgebra& subalgebra, double alpha,
                               int samples = 10000, std::uint64_t seed = 7) {
  if (!(alpha >= 0.0 && alpha <= 0.5))
    throw parameter_error("xi_alpha_map: alpha must lie in [0, 1/2]");
  if (!subalgebra.is_subalgebra_of(gns.algebra))
    throw input_error("xi_alpha_map: domain is not a subalgebra of the represented algebra");

  // GNS-orthonormal domain frame for the restricted state.
  const Eigen::Index mb = subalgebra.dim();
  Matrix gram(mb, mb);
  for (Eigen::Index i = 0; i < mb; ++i)
    for (Eigen::Index j = 0; j < mb; ++j)
      gram(i, j) = gns.state.omega(subalgebra.basis[i].adjoint() * subalgebra.basis[j]);
  gram = 0.5 * (gram + gram.adjoint());
  const SpectralData gsp = hermitian_spectral(gram);
  const double top = std::max(gsp.eigenvalues(0), 0.0);
  Eigen::Index rb = 0;
  while (rb < mb && gsp.eigenvalues(rb) > kKernelRelTol * top) ++rb;

  const Matrix delta_alpha = operator_power(gns.modular_delta, alpha);
  XiAlphaMap out;
  out.alpha = alpha;
  out.map = Matrix(gns.rep_dim, rb);
  for (Eigen::Index j = 0; j < rb; ++j) {
    Matrix bj = Matrix::Zero(gns.algebra.ambient_dim, gns.algebra.ambient_dim);
    for (Eigen::Index i = 0; i < mb; ++i)
      bj += gsp.eigenvectors(i, j) / std::sqrt(gsp.eigenvalues(j)) * subalgebra.basis[i];
    out.map.col(j) = delta_alpha * gns.vector_of(bj);
  }
  out.surrogate = approximation_numbers(out.map);

  Rng rng(seed);
  Matrix images(gns.rep_dim, samples);
  for (int s = 0; s < samples; ++s) {
    Vector g(mb);
    for (Eigen::Index i = 0; i < mb; ++i) g(i) = rng.complex_gaussian();
    Matrix b = subalgebra.element(g);
    const double nrm = operator_norm(b);
    if (nrm < 1e-14) {
      images.col(s).setZero();
      continue;
    }
    b /= nrm;
    images.col(s) = delta_alpha * gns.vector_of(b);
  }
  out.sampled_lower =
      detail::sampled_ball_lower_bounds(images, std::min<Eigen::Index>(rb, gns.rep_dim));
  return out;
}

struct MonotonicityRow {
  double alpha = 0.0;
  Eigen::Index element = 0;  // index into the subalgebra basis, -1 for sampled combinations
  double lhs = 0.0;          // ||Delta_omega^alpha pi_omega(b) Omega_omega||
  double rhs = 0.0;          // ||Delta_lambda^alpha pi_lambda(b) Omega_lambda||
  bool pass = false;
};

// Restricting a state to a subalgebra can only increase the modular
// vector norms ||Delta^alpha b Omega|| for alpha in [0, 1/2]. Checked on
// every subalgebra basis element plus sampled combinations.
inline std::vector<MonotonicityRow> inclusion_monotonicity_check(
    const MatrixAlgebra& algebra, const MatrixAlgebra& subalgebra, const AlgebraState& state,
    const std::vector<double>& alphas, double tol = 1e-9, int extra_samples = 16,
    std::uint64_t seed = 11) {
  if (!subalgebra.is_subalgebra_of(algebra))
    throw input_error("inclusion_monotonicity_check: not a subalgebra");
  const GnsData big = gns_construct(algebra, state);
  const GnsData small = gns_construct(subalgebra, state);

  std::vector<Matrix> elements;
  for (const Matrix& b : subalgebra.basis) elements.push_back(b);
  Rng rng(seed);
  for (int s = 0; s < extra_samples; ++s) {
    Vector g(subalgebra.dim());
    for (Eigen::Index i = 0; i < subalgebra.dim(); ++i) g(i) = rng.complex_gaussian();
    elements.push_back(subalgebra.element(g));
  }

  std::vector<MonotonicityRow> rows;
  for (double alpha : alphas) {
    if (!(alpha >= 0.0 && alpha <= 0.5))
      throw parameter_error("inclusion_monotonicity_check: alpha must lie in [0, 1/2]");
    const Matrix da_big = operator_power(big.modular_delta, alpha);
    const Matrix da_small = operator_power(small.modular_delta, alpha);
    for (std::size_t j = 0; j < elements.size(); ++j) {
      MonotonicityRow row;
      row.alpha = alpha;
      row.element = (j < static_cast<std::size_t>(subalgebra.dim()))
                        ? static_cast<Eigen::Index>(j)
                        : static_cast<Eigen::Index>(-1);
      row.lhs = (da_big * big.vector_of(elements[j])).norm();
      row.rhs = (da_small * small.vector_of(elements[j])).norm();
      row.pass = row.lhs <= row.rhs + tol * std::max(1.0, row.rhs);
      rows.push_back(row);
    }
  }
  return rows;
}

struct MixtureReport {
  double alpha = 0.0, p = 0.0, r1 = 0.0;
  double lp_mixture = 0.0;    // ||Xi_omega||_p for the mixed state
  double lp_direct_sum = 0.0; // quasi-norm of the direct-sum construction
  double lp_part1 = 0.0, lp_part2 = 0.0;
  double rhs = 0.0;           // c_p (sqrt(r1) ||Xi_1||_p + sqrt(r2) ||Xi_2||_p)
  bool pass = false;
};

// Convexity control for Xi^alpha under state mixtures, evaluated with a
// common Hilbert-Schmidt domain frame on the subalgebra so the three maps
// are comparable. The mixture is dominated pointwise by the direct sum
// construction with weights sqrt(r_i), and the quasi-triangle inequality
// finishes the bound.
inline MixtureReport convex_mixture_check(const MatrixAlgebra& algebra,
                                          const MatrixAlgebra& subalgebra,
                                          const AlgebraState& state1, const AlgebraState& state2,
                                          double r1, double alpha, double p, double tol = 1e-9) {
  if (!(r1 >= 0.0 && r1 <= 1.0))
    throw parameter_error("convex_mixture_check: mixture weight must lie in [0,1]");
  const double r2 = 1.0 - r1;
  const AlgebraState mixed(Matrix(r1 * state1.density + r2 * state2.density));
  const GnsData g1 = gns_construct(algebra, state1);
  const GnsData g2 = gns_construct(algebra, state2);
  const GnsData gm = gns_construct(algebra, mixed);

  const Matrix d1 = operator_power(g1.modular_delta, alpha);
  const Matrix d2 = operator_power(g2.modular_delta, alpha);
  const Matrix dm = operator_power(gm.modular_delta, alpha);

  const Eigen::Index mb = subalgebra.dim();
  Matrix xi1(g1.rep_dim, mb), xi2(g2.rep_dim, mb), xim(gm.rep_dim, mb);
  for (Eigen::Index j = 0; j < mb; ++j) {
    const Matrix& b = subalgebra.basis[j];
    xi1.col(j) = d1 * g1.vector_of(b);
    xi2.col(j) = d2 * g2.vector_of(b);
    xim.col(j) = dm * gm.vector_of(b);
  }
  Matrix stacked(g1.rep_dim + g2.rep_dim, mb);
  stacked.topRows(g1.rep_dim) = std::sqrt(r1) * xi1;
  stacked.bottomRows(g2.rep_dim) = std::sqrt(r2) * xi2;

  MixtureReport rep;
  rep.alpha = alpha;
  rep.p = p;
  rep.r1 = r1;
  rep.lp_mixture = lp_quasinorm(xim, p);
  rep.lp_direct_sum = lp_quasinorm(stacked, p);
  rep.lp_part1 = lp_quasinorm(xi1, p);
  rep.lp_part2 = lp_quasinorm(xi2, p);
  rep.rhs = quasinorm_triangle_constant(p) *
            (std::sqrt(r1) * rep.lp_part1 + std::sqrt(r2) * rep.lp_part2);
  rep.pass = rep.lp_mixture <= rep.lp_direct_sum * (1.0 + tol) + tol &&
             rep.lp_direct_sum <= rep.rhs * (1.0 + tol) + tol;
  return rep;
}

}  // namespace modlp
