#pragma once

// Closed real subspaces of C^n, their Tomita operators S = J Delta^(1/2),
// compatible conjugations and Gamma-splittings.
//
// A real subspace H is "standard" when H + iH = C^n and H and iH intersect
// trivially. General closed H splits the ambient space into the complex
// orthocomplement of H + iH, the complex subspace H intersect iH, and a
// standard remainder; S is defined as zero on the first two pieces and as
// the usual closure of h1 + i h2 -> h1 - i h2 on the remainder.

#include <cmath>
#include <string>
#include <vector>

#include "modlp/real_linear.hpp"
#include "modlp/rng.hpp"
#include "modlp/spectral.hpp"

namespace modlp {

// Orthonormal basis of the column space of a complex matrix. The rank cut
// is relative to the top singular value, with an optional absolute floor
// for callers whose columns are unit-scaled and may be pure noise.
inline Matrix complex_colspace(const Matrix& a, double rel_tol = kKernelRelTol,
                               double abs_tol = 0.0) {
  if (a.cols() == 0) return Matrix(a.rows(), 0);
  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeThinU);
  const RealVector sv = svd.singularValues();
  const double cut = std::max((sv.size() > 0 ? sv(0) : 0.0) * rel_tol, abs_tol);
  Eigen::Index rank = 0;
  while (rank < sv.size() && sv(rank) > cut) ++rank;
  return svd.matrixU().leftCols(rank);
}

inline RealMatrix real_colspace(const RealMatrix& a, double rel_tol = kKernelRelTol,
                                double abs_tol = 0.0) {
  if (a.cols() == 0) return RealMatrix(a.rows(), 0);
  Eigen::JacobiSVD<RealMatrix> svd(a, Eigen::ComputeThinU);
  const RealVector sv = svd.singularValues();
  const double cut = std::max((sv.size() > 0 ? sv(0) : 0.0) * rel_tol, abs_tol);
  Eigen::Index rank = 0;
  while (rank < sv.size() && sv(rank) > cut) ++rank;
  return svd.matrixU().leftCols(rank);
}

// Gap ||P_A - P_B|| between two real subspaces given by realified bases;
// this is the sine of the largest principal angle when dimensions agree.
inline double real_subspace_gap(const RealMatrix& basis_a, const RealMatrix& basis_b) {
  const RealMatrix qa = real_colspace(basis_a);
  const RealMatrix qb = real_colspace(basis_b);
  const RealMatrix pa = qa * qa.transpose();
  const RealMatrix pb = qb * qb.transpose();
  return operator_norm(RealMatrix(pa - pb));
}

inline double complex_subspace_gap(const Matrix& basis_a, const Matrix& basis_b) {
  const Matrix qa = complex_colspace(basis_a);
  const Matrix qb = complex_colspace(basis_b);
  const Matrix pa = qa * qa.adjoint();
  const Matrix pb = qb * qb.adjoint();
  return operator_norm(Matrix(pa - pb));
}

// Closed real subspace of C^n spanned over R by the basis columns.
struct StandardSubspace {
  Eigen::Index ambient_dim = 0;
  Matrix basis;        // n x k, columns real-linearly independent
  bool standard = false;

  StandardSubspace(Eigen::Index n, Matrix b) : ambient_dim(n), basis(std::move(b)) {
    check_finite(basis, "StandardSubspace");
    if (basis.rows() != ambient_dim)
      throw input_error("StandardSubspace: basis rows do not match ambient dimension");
    const Eigen::Index k = basis.cols();
    if (k == 0 || k > 2 * ambient_dim)
      throw input_error("StandardSubspace: need between 1 and 2n basis vectors");
    RealMatrix re(2 * ambient_dim, k);
    for (Eigen::Index j = 0; j < k; ++j) re.col(j) = realify(Vector(basis.col(j)));
    Eigen::JacobiSVD<RealMatrix> svd(re);
    const RealVector sv = svd.singularValues();
    if (sv(sv.size() - 1) <= kKernelRelTol * sv(0))
      throw input_error("StandardSubspace: basis is real-linearly dependent");
    // Standard iff H + iH exhausts C^n and H intersect iH = 0, which at
    // k independent vectors means rank [H, iH] = 2n and k = n.
    RealMatrix both(2 * ambient_dim, 2 * k);
    both.leftCols(k) = re;
    for (Eigen::Index j = 0; j < k; ++j)
      both.col(k + j) = realify(Vector(cdouble(0, 1) * basis.col(j)));
    standard = (k == ambient_dim) &&
               (real_colspace(both).cols() == 2 * ambient_dim);
  }

  Eigen::Index dim_real() const { return basis.cols(); }

  // Basis orthonormal with respect to the real inner product Re<.,.>.
  Matrix re_orthonormal_basis() const {
    const Eigen::Index k = basis.cols();
    RealMatrix re(2 * ambient_dim, k);
    for (Eigen::Index j = 0; j < k; ++j) re.col(j) = realify(Vector(basis.col(j)));
    const RealMatrix q = real_colspace(re);
    Matrix out(ambient_dim, q.cols());
    for (Eigen::Index j = 0; j < q.cols(); ++j) out.col(j) = unrealify(RealVector(q.col(j)));
    return out;
  }

  // Real-orthogonal projection onto H as a real-linear operator.
  RealLinearOperator real_projection() const {
    const Matrix q = re_orthonormal_basis();
    RealMatrix qr(2 * ambient_dim, q.cols());
    for (Eigen::Index j = 0; j < q.cols(); ++j) qr.col(j) = realify(Vector(q.col(j)));
    const RealMatrix p = qr * qr.transpose();
    return split_real_linear(p);
  }

  RealMatrix realified_basis() const {
    RealMatrix re(2 * ambient_dim, basis.cols());
    for (Eigen::Index j = 0; j < basis.cols(); ++j) re.col(j) = realify(Vector(basis.col(j)));
    return re;
  }
};

// Random standard subspace of C^n: the real span of n Gaussian columns
// is standard with probability one; degenerate draws are retried.
inline StandardSubspace random_standard_subspace(Rng& rng, Eigen::Index n) {
  if (n <= 0) throw parameter_error("random_standard_subspace: dimension must be positive");
  for (int attempt = 0; attempt < 16; ++attempt) {
    StandardSubspace h(n, rng.complex_gaussian_matrix(static_cast<int>(n), static_cast<int>(n)));
    if (h.standard) return h;
  }
  throw internal_error("random_standard_subspace: no standard draw in 16 attempts");
}

struct TomitaData {
  RealLinearOperator s;     // antilinear closure of h1 + i h2 -> h1 - i h2
  Matrix delta;             // S*S, complex PSD, kernel = complement of the standard part
  Matrix j_antilinear;      // partial antiunitary: J v = j_antilinear conj(v)
  Matrix r_projection;      // complex projection onto the standard-part ambient space
  Matrix std_part_basis;    // re-orthonormal basis of the standard part of H
  Matrix degenerate_basis;  // orthonormal basis of H intersect iH
};

namespace detail {

// Orthonormal basis of the intersection of two real subspaces given by
// realified orthonormal bases, detected through P_A P_B P_A eigenvalues.
inline RealMatrix real_intersection(const RealMatrix& qa, const RealMatrix& qb,
                                    double tol = 1e-9) {
  if (qa.cols() == 0 || qb.cols() == 0) return RealMatrix(qa.rows(), 0);
  const RealMatrix pa = qa * qa.transpose();
  const RealMatrix pb = qb * qb.transpose();
  const RealMatrix m = pa * pb * pa;
  Eigen::SelfAdjointEigenSolver<RealMatrix> es(0.5 * (m + m.transpose()));
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
    if (es.eigenvalues()(i) >= 1.0 - tol) keep.push_back(i);
  RealMatrix out(qa.rows(), static_cast<Eigen::Index>(keep.size()));
  for (std::size_t j = 0; j < keep.size(); ++j) out.col(j) = es.eigenvectors().col(keep[j]);
  return out;
}

}  // namespace detail

// Tomita operator data for a closed real subspace. For standard H the
// projection r_projection is the identity and J is a conjugation; in
// general S vanishes on the complex orthocomplement of H + iH and on
// H intersect iH, and J*J recovers r_projection.
inline TomitaData tomita_data(const StandardSubspace& h, double tol = 1e-9) {
  const Eigen::Index n = h.ambient_dim;
  const Matrix eye = Matrix::Identity(n, n);

  // Complex span C of H and the degenerate complex subspace D = H ∩ iH.
  const Matrix c_basis = complex_colspace(h.basis);
  const RealMatrix qh = real_colspace(h.realified_basis());
  Matrix ibasis = cdouble(0, 1) * h.basis;
  RealMatrix qih(2 * n, ibasis.cols());
  for (Eigen::Index j = 0; j < ibasis.cols(); ++j) qih.col(j) = realify(Vector(ibasis.col(j)));
  qih = real_colspace(qih);
  const RealMatrix d_real = detail::real_intersection(qh, qih, tol);
  Matrix d_cols(n, d_real.cols());
  for (Eigen::Index j = 0; j < d_real.cols(); ++j) d_cols.col(j) = unrealify(RealVector(d_real.col(j)));
  const Matrix d_basis = complex_colspace(d_cols);

  // Standard-part ambient W = C ⊖ D and the standard part of H itself.
  const Matrix pd = d_basis * d_basis.adjoint();
  const Matrix w_basis = complex_colspace(Matrix((eye - pd) * c_basis));
  const Matrix q_h_complex = [&] {
    Matrix out(n, qh.cols());
    for (Eigen::Index j = 0; j < qh.cols(); ++j) out.col(j) = unrealify(RealVector(qh.col(j)));
    return out;
  }();
  RealMatrix hstd_real(2 * n, q_h_complex.cols());
  for (Eigen::Index j = 0; j < q_h_complex.cols(); ++j)
    hstd_real.col(j) = realify(Vector((eye - pd) * q_h_complex.col(j)));
  const RealMatrix hstd_q = real_colspace(hstd_real);
  Matrix hstd(n, hstd_q.cols());
  for (Eigen::Index j = 0; j < hstd_q.cols(); ++j) hstd.col(j) = unrealify(RealVector(hstd_q.col(j)));

  const Eigen::Index w = hstd.cols();
  if (w != w_basis.cols())
    throw internal_error("tomita_data: standard part dimension mismatch");

  TomitaData out;
  out.r_projection = w_basis * w_basis.adjoint();
  out.std_part_basis = hstd;
  out.degenerate_basis = d_basis;

  // S on W through the real coordinates xi = B c1 + iB c2 (c real):
  // S xi = B c1 - iB c2. Columns of T realify the frame {b_j, i b_j}.
  RealMatrix t(2 * n, 2 * w);
  for (Eigen::Index j = 0; j < w; ++j) {
    t.col(j) = realify(Vector(hstd.col(j)));
    t.col(w + j) = realify(Vector(cdouble(0, 1) * hstd.col(j)));
  }
  RealMatrix flip = RealMatrix::Identity(2 * w, 2 * w);
  for (Eigen::Index j = 0; j < w; ++j) flip(w + j, w + j) = -1.0;
  RealMatrix s_real;
  if (w > 0) {
    const RealMatrix t_pinv = t.completeOrthogonalDecomposition().pseudoInverse();
    s_real = t * flip * t_pinv;
  } else {
    s_real = RealMatrix::Zero(2 * n, 2 * n);
  }
  out.s = split_real_linear(s_real);
  if (out.s.linear.norm() > tol * std::max(1.0, s_real.norm()))
    throw internal_error("tomita_data: S acquired a complex-linear part");
  out.s.linear.setZero();

  // Delta = S*S is complex linear and PSD; J = S Delta^(-1/2) with the
  // Moore-Penrose convention is the partial antiunitary of the polar split.
  const RealLinearOperator delta_rl = out.s.real_adjoint().compose(out.s);
  if (delta_rl.antilinear.norm() > tol * std::max(1.0, delta_rl.linear.norm()))
    throw internal_error("tomita_data: Delta acquired an antilinear part");
  out.delta = 0.5 * (delta_rl.linear + delta_rl.linear.adjoint());
  const Matrix delta_invhalf = operator_power(out.delta, -0.5);
  out.j_antilinear = out.s.antilinear * delta_invhalf.conjugate();

  // Polar and modular identities, verified as postconditions.
  const Matrix sqrt_delta = operator_power(out.delta, 0.5);
  if ((out.j_antilinear * sqrt_delta.conjugate() - out.s.antilinear).norm() >
      tol * std::max(1.0, out.s.antilinear.norm()))
    throw internal_error("tomita_data: polar decomposition failed");
  const Matrix jj = out.j_antilinear * out.j_antilinear.conjugate();
  if ((jj - out.r_projection).norm() > tol * std::max(1.0, out.r_projection.norm()))
    throw internal_error("tomita_data: J*J does not match the standard-part projection");
  const Matrix jdj = out.j_antilinear * out.delta.conjugate() * out.j_antilinear.conjugate();
  const Matrix delta_inv = operator_power(out.delta, -1.0);
  if ((jdj - delta_inv).norm() > tol * std::max(1.0, delta_inv.norm()) * 10.0)
    throw internal_error("tomita_data: J Delta J does not invert Delta on the standard part");
  return out;
}

// Conjugation commuting with the modular data of H and preserving H.
// The ambient space is split by the spectrum of Delta into the part below 1,
// the fixed part at 1 (within 1e-9) and the part above 1; an entrywise
// conjugation in the eigenbasis below 1 is transported above 1 by J, and J
// itself serves on the fixed part. Degenerate pieces of non-standard H get
// entrywise conjugations in their own bases.
inline Conjugation construct_conjugation(const StandardSubspace& h, double tol = 1e-9) {
  const Eigen::Index n = h.ambient_dim;
  const TomitaData td = tomita_data(h, tol);
  const Matrix eye = Matrix::Identity(n, n);

  // Bases of the two degenerate complex summands. Both inputs are
  // projections with singular values 1 or 0, so the rank cuts must be
  // absolute; a relative cut misreads the zero matrix.
  const Matrix d_basis = td.degenerate_basis;
  const Matrix c_perp = complex_colspace(
      Matrix(eye - complex_colspace(h.basis) * complex_colspace(h.basis).adjoint()),
      kKernelRelTol, 0.5);

  // Eigenvectors of Delta inside the standard-part ambient space.
  const Matrix w_basis = complex_colspace(td.r_projection, kKernelRelTol, 0.5);
  const Eigen::Index w = w_basis.cols();
  Matrix a_low = Matrix::Zero(n, n), a_one = Matrix::Zero(n, n), a_high = Matrix::Zero(n, n);
  if (w > 0) {
    const Matrix delta_w = w_basis.adjoint() * td.delta * w_basis;
    const SpectralData sd = hermitian_spectral(delta_w);
    Matrix f_low(n, 0), f_one(n, 0);
    for (Eigen::Index i = 0; i < w; ++i) {
      const double lam = sd.eigenvalues(i);
      const Matrix vec = w_basis * sd.eigenvectors.col(i);
      if (std::abs(lam - 1.0) <= 1e-9) {
        f_one.conservativeResize(n, f_one.cols() + 1);
        f_one.col(f_one.cols() - 1) = vec;
      } else if (lam < 1.0) {
        f_low.conservativeResize(n, f_low.cols() + 1);
        f_low.col(f_low.cols() - 1) = vec;
      }
    }
    a_low = f_low * f_low.transpose();
    const Matrix p_one = f_one * f_one.adjoint();
    a_one = p_one * td.j_antilinear * p_one.conjugate();
    a_high = td.j_antilinear * a_low.conjugate() * td.j_antilinear;
  }

  const Matrix a_deg = d_basis * d_basis.transpose();
  const Matrix a_perp = c_perp * c_perp.transpose();
  Conjugation gamma(a_low + a_one + a_high + a_deg + a_perp, tol);

  // Postconditions: Gamma preserves H and commutes with Delta and J.
  RealMatrix gh(2 * n, h.basis.cols());
  for (Eigen::Index j = 0; j < h.basis.cols(); ++j)
    gh.col(j) = realify(Vector(gamma.apply(Vector(h.basis.col(j)))));
  if (real_subspace_gap(h.realified_basis(), gh) > tol)
    throw internal_error("construct_conjugation: Gamma does not preserve H");
  const Matrix& ag = gamma.antilinear;
  if ((ag * td.delta.conjugate() - td.delta * ag).norm() >
      tol * std::max(1.0, td.delta.norm()))
    throw internal_error("construct_conjugation: Gamma does not commute with Delta");
  if ((ag * td.j_antilinear.conjugate() - td.j_antilinear * ag.conjugate()).norm() > tol)
    throw internal_error("construct_conjugation: Gamma does not commute with J");
  return gamma;
}

struct GammaSplit {
  Matrix k_plus;   // orthonormal basis of K+ = Gamma+ H + i Gamma+ H
  Matrix k_minus;  // orthonormal basis of K-
};

// Splits a Gamma-invariant H into the complex subspaces K+- generated by
// the fixed and anti-fixed parts. Postcondition: the real projection onto H
// decomposes as Gamma+ E+ + Gamma- E- with E+- the complex projections.
inline GammaSplit gamma_split_subspace(const StandardSubspace& h, const Conjugation& gamma,
                                       double tol = 1e-9) {
  const Eigen::Index n = h.ambient_dim;
  if (gamma.dim() != n) throw input_error("gamma_split_subspace: dimension mismatch");
  RealMatrix gh(2 * n, h.basis.cols());
  for (Eigen::Index j = 0; j < h.basis.cols(); ++j)
    gh.col(j) = realify(Vector(gamma.apply(Vector(h.basis.col(j)))));
  if (real_subspace_gap(h.realified_basis(), gh) > tol)
    throw precondition_error("gamma_split_subspace: Gamma H = H fails");

  const Matrix q = h.re_orthonormal_basis();
  Matrix plus(n, q.cols()), minus(n, q.cols());
  for (Eigen::Index j = 0; j < q.cols(); ++j) {
    const Vector v = q.col(j);
    const Vector gv = gamma.apply(v);
    plus.col(j) = 0.5 * (v + gv);
    minus.col(j) = 0.5 * (v - gv);
  }
  // The split vectors come from unit basis vectors, so an absolute floor
  // keeps rounding noise from inventing dimensions when one side vanishes.
  GammaSplit out;
  out.k_plus = complex_colspace(plus, 1e-9, 1e-9);
  out.k_minus = complex_colspace(minus, 1e-9, 1e-9);

  // Gamma preserves both pieces and the projection identity holds.
  Matrix gp(n, out.k_plus.cols()), gm(n, out.k_minus.cols());
  for (Eigen::Index j = 0; j < out.k_plus.cols(); ++j)
    gp.col(j) = gamma.apply(Vector(out.k_plus.col(j)));
  for (Eigen::Index j = 0; j < out.k_minus.cols(); ++j)
    gm.col(j) = gamma.apply(Vector(out.k_minus.col(j)));
  if (out.k_plus.cols() > 0 && complex_subspace_gap(out.k_plus, gp) > tol)
    throw internal_error("gamma_split_subspace: Gamma does not preserve K+");
  if (out.k_minus.cols() > 0 && complex_subspace_gap(out.k_minus, gm) > tol)
    throw internal_error("gamma_split_subspace: Gamma does not preserve K-");

  const Matrix e_plus = out.k_plus * out.k_plus.adjoint();
  const Matrix e_minus = out.k_minus * out.k_minus.adjoint();
  const RealLinearOperator combo =
      gamma.plus_projection().compose(RealLinearOperator::from_linear(e_plus)).add(
          gamma.minus_projection().compose(RealLinearOperator::from_linear(e_minus)));
  const RealMatrix resid = realify(combo) - realify(h.real_projection());
  if (resid.norm() > tol * std::max(1.0, realify(combo).norm()))
    throw internal_error("gamma_split_subspace: projection identity failed");
  return out;
}

struct TGammaRow {
  double p;
  double combined_rp;     // ||T||_{R,p}
  double upper_combined;  // 2^{1/p} c_p (||T+||_p + ||T-||_p)
  double part_plus_p;     // ||T+||_p
  double part_minus_p;    // ||T-||_p
  double upper_parts;     // 2 c_p ||T||_{R,p}, bounds each part
};

struct TGammaReport {
  double norm_combined;  // ||T|| for T = Gamma+ T+ + Gamma- T-
  double norm_max_parts; // max(||T+||, ||T-||)
  std::vector<TGammaRow> rows;
};

// For commuting data [Gamma, T+-] = 0 the combined operator
// T = Gamma+ T+ + Gamma- T- has ||T|| = max(||T+||, ||T-||) exactly, and
// its R-quasi-norms interlace with the parts' quasi-norms with explicit
// constants. The norm equality is asserted at 1e-10.
inline TGammaReport tgamma_norm_check(const Matrix& t_plus, const Matrix& t_minus,
                                      const Conjugation& gamma,
                                      const std::vector<double>& ps) {
  const Eigen::Index n = gamma.dim();
  if (t_plus.rows() != n || t_plus.cols() != n || t_minus.rows() != n || t_minus.cols() != n)
    throw input_error("tgamma_norm_check: operators must match the conjugation dimension");
  const Matrix& ag = gamma.antilinear;
  const double scale_p = std::max(1.0, t_plus.norm());
  const double scale_m = std::max(1.0, t_minus.norm());
  if ((ag * t_plus.conjugate() - t_plus * ag).norm() > 1e-9 * scale_p)
    throw precondition_error("tgamma_norm_check: [Gamma, T+] = 0 fails");
  if ((ag * t_minus.conjugate() - t_minus * ag).norm() > 1e-9 * scale_m)
    throw precondition_error("tgamma_norm_check: [Gamma, T-] = 0 fails");

  const RealLinearOperator t =
      gamma.plus_projection().compose(RealLinearOperator::from_linear(t_plus)).add(
          gamma.minus_projection().compose(RealLinearOperator::from_linear(t_minus)));

  TGammaReport rep;
  rep.norm_combined = real_operator_norm(t);
  rep.norm_max_parts = std::max(operator_norm(t_plus), operator_norm(t_minus));
  if (std::abs(rep.norm_combined - rep.norm_max_parts) >
      1e-10 * std::max(1.0, rep.norm_max_parts))
    throw internal_error("tgamma_norm_check: norm equality failed");

  for (double p : ps) {
    TGammaRow row{};
    row.p = p;
    const double cp = quasinorm_triangle_constant(p);
    row.combined_rp = real_lp_quasinorm(t, p);
    row.part_plus_p = lp_quasinorm(t_plus, p);
    row.part_minus_p = lp_quasinorm(t_minus, p);
    row.upper_combined = std::pow(2.0, 1.0 / p) * cp * (row.part_plus_p + row.part_minus_p);
    row.upper_parts = 2.0 * cp * row.combined_rp;
    if (row.combined_rp > row.upper_combined * (1.0 + 1e-9))
      throw internal_error("tgamma_norm_check: combined quasi-norm bound failed");
    if (row.part_plus_p > row.upper_parts * (1.0 + 1e-9) ||
        row.part_minus_p > row.upper_parts * (1.0 + 1e-9))
      throw internal_error("tgamma_norm_check: part quasi-norm bound failed");
    rep.rows.push_back(row);
  }
  return rep;
}

}  // namespace modlp
