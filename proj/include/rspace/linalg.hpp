#pragma once

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <vector>

#include "rspace/fmatrix.hpp"

namespace rspace {

namespace detail {

// Quaternionic structure on the realization space C^{2c}: the map sending the
// first-half column [p; q] of an embedded vector to its partner [-conj(q); conj(p)].
inline CVec j_partner(const CVec& w) {
  const Index c = w.size() / 2;
  CVec out(w.size());
  out.head(c) = -w.tail(c).conjugate();
  out.tail(c) = w.head(c).conjugate();
  return out;
}

// Assembles an H matrix from first-half realization columns r_i = [A_i; -conj(B_i)].
inline FMatrix h_matrix_from_first_halves(const std::vector<CVec>& cols, Index rows) {
  CMat a(rows, static_cast<Index>(cols.size())), b(rows, static_cast<Index>(cols.size()));
  for (size_t j = 0; j < cols.size(); ++j) {
    a.col(static_cast<Index>(j)) = cols[j].head(rows);
    b.col(static_cast<Index>(j)) = -cols[j].tail(rows).conjugate();
  }
  return FMatrix::quaternion(a, b);
}

// Gram-Schmidt over H on the realization: each accepted vector brings its
// j-partner along, keeping the span quaternionic. Candidates whose residual
// is below cutoff are dropped.
inline std::vector<CVec> h_gram_schmidt(const std::vector<CVec>& candidates, double cutoff,
                                        Index max_count) {
  std::vector<CVec> basis;  // includes partners
  std::vector<CVec> firsts;
  for (const CVec& c : candidates) {
    if (static_cast<Index>(firsts.size()) >= max_count) break;
    CVec r = c;
    for (int pass = 0; pass < 2; ++pass)
      for (const CVec& q : basis) r -= q * q.dot(r);
    const double n = r.norm();
    if (n <= cutoff) continue;
    r /= n;
    CVec p = j_partner(r);
    basis.push_back(r);
    basis.push_back(p);
    firsts.push_back(r);
  }
  return firsts;
}

}  // namespace detail

/// Real coordinates of a matrix: Re A (R); Re A, Im A (C); Re A, Im A,
/// Re B, Im B (H), each column-major. This is a real-linear isometry from
/// F^{r x c} with its Frobenius norm onto R^{deg r c}.
inline RVec real_coordinates(const FMatrix& m) {
  const Index n = m.rows() * m.cols();
  RVec v(field_degree(m.field()) * n);
  auto put = [&](Index slot, const auto& block) {
    v.segment(slot * n, n) = Eigen::Map<const RMat>(RMat(block).data(), n, 1);
  };
  put(0, m.part_a().real());
  if (m.field() != Field::R) put(1, m.part_a().imag());
  if (m.field() == Field::H) {
    put(2, m.part_b().real());
    put(3, m.part_b().imag());
  }
  return v;
}

inline FMatrix from_real_coordinates(Field f, Index rows, Index cols, const RVec& v) {
  const Index n = rows * cols;
  auto get = [&](Index slot) { return Eigen::Map<const RMat>(v.data() + slot * n, rows, cols); };
  CMat a = get(0).cast<cd>();
  CMat b = CMat::Zero(rows, cols);
  if (f != Field::R) a.imag() = get(1);
  if (f == Field::H) {
    b.real() = get(2);
    b.imag() = get(3);
  }
  return FMatrix::from_parts(f, a, b);
}

struct RankKernel {
  Index rank = 0;
  FMatrix kernel;  // columns: orthonormal basis of ker M
};

/// Numerical rank and kernel over the matrix's field. Quaternionic matrices
/// go through the complex adjoint embedding; the complex rank and kernel are
/// halved and the kernel is rebuilt as an orthonormal H-basis.
inline RankKernel rank_kernel(const FMatrix& m, const Tolerance& tol = {}) {
  RankKernel out;
  const Index c = m.cols();
  if (m.rows() == 0 || c == 0) {
    out.rank = 0;
    out.kernel = FMatrix::identity(m.field(), c);
    return out;
  }
  auto count_rank = [&](const RVec& sv) {
    const double smax = sv.size() ? sv(0) : 0.0;
    Index r = 0;
    if (smax > 0)
      for (Index i = 0; i < sv.size(); ++i)
        if (sv(i) > tol.rank_rel * smax) ++r;
    return r;
  };
  if (m.field() == Field::R) {
    RMat re = m.part_a().real();
    Eigen::JacobiSVD<RMat> svd(re, Eigen::ComputeFullV);
    out.rank = count_rank(svd.singularValues());
    out.kernel = FMatrix::real(svd.matrixV().rightCols(c - out.rank));
    return out;
  }
  CMat r = m.realization();
  Eigen::JacobiSVD<CMat> svd(r, Eigen::ComputeFullV);
  const Index crank = count_rank(svd.singularValues());
  if (m.field() == Field::C) {
    out.rank = crank;
    out.kernel = FMatrix::complex(svd.matrixV().rightCols(c - crank));
    return out;
  }
  out.rank = (crank + 1) / 2;
  const Index kdim = c - out.rank;
  const CMat kv = svd.matrixV().rightCols(2 * c - crank);
  std::vector<CVec> cand;
  for (Index j = 0; j < kv.cols(); ++j) cand.push_back(kv.col(j));
  auto firsts = detail::h_gram_schmidt(cand, 1e-6, kdim);
  out.kernel = detail::h_matrix_from_first_halves(firsts, c);
  return out;
}

/// Orthonormal F-basis of the column span.
inline FMatrix orthonormal_basis(const FMatrix& m, const Tolerance& tol = {}) {
  if (m.field() != Field::H) {
    CMat r = m.realization();
    if (m.field() == Field::R) {
      RMat re = r.real();
      Eigen::JacobiSVD<RMat> svd(re, Eigen::ComputeThinU);
      const RVec& sv = svd.singularValues();
      Index k = 0;
      for (Index i = 0; i < sv.size(); ++i)
        if (sv(0) > 0 && sv(i) > tol.rank_rel * sv(0)) ++k;
      return FMatrix::real(svd.matrixU().leftCols(k));
    }
    Eigen::JacobiSVD<CMat> svd(r, Eigen::ComputeThinU);
    const RVec& sv = svd.singularValues();
    Index k = 0;
    for (Index i = 0; i < sv.size(); ++i)
      if (sv(0) > 0 && sv(i) > tol.rank_rel * sv(0)) ++k;
    return FMatrix::complex(svd.matrixU().leftCols(k));
  }
  const CMat r = m.realization();
  const double scale = std::max(1e-300, m.norm());
  std::vector<CVec> cand;
  for (Index j = 0; j < m.cols(); ++j) cand.push_back(r.col(j));
  auto firsts = detail::h_gram_schmidt(cand, tol.rank_rel * scale * 1e2, m.cols());
  return detail::h_matrix_from_first_halves(firsts, m.rows());
}

/// Orthonormal complex basis of the complex span of the realization.
inline CMat complex_span_basis(const FMatrix& m, const Tolerance& tol = {}) {
  CMat r = m.realization();
  Eigen::JacobiSVD<CMat> svd(r, Eigen::ComputeThinU);
  const RVec& sv = svd.singularValues();
  Index k = 0;
  for (Index i = 0; i < sv.size(); ++i)
    if (sv(0) > 0 && sv(i) > tol.rank_rel * sv(0)) ++k;
  return svd.matrixU().leftCols(k);
}

/// Largest principal angle between the column spans of a and b (pi/2 when
/// the dimensions differ).
inline double subspace_distance(const FMatrix& a, const FMatrix& b, const Tolerance& tol = {}) {
  const CMat qa = complex_span_basis(a, tol), qb = complex_span_basis(b, tol);
  if (qa.cols() != qb.cols() || qa.rows() != qb.rows()) return M_PI / 2;
  if (qa.cols() == 0) return 0.0;
  const CMat resid = qb - qa * (qa.adjoint() * qb);
  Eigen::JacobiSVD<CMat> svd(resid);
  const double s = svd.singularValues()(0);
  return std::asin(std::min(1.0, s));
}

/// True iff the column spans meet only in zero and have the combined rank.
inline bool spans_complementary(const FMatrix& a, const FMatrix& b, const Tolerance& tol = {}) {
  const Index ra = rank_kernel(a, tol).rank, rb = rank_kernel(b, tol).rank;
  return rank_kernel(FMatrix::hstack(a, b), tol).rank == ra + rb;
}

struct OrientedSvd2 {
  Eigen::Matrix2d u;
  double lambda1 = 0;
  double lambda2 = 0;
  Eigen::Matrix2d v;
};

/// M = U diag(l1, l2) V^T with U, V rotations, l1 >= |l2| and
/// sign(l2) = sign(det M).
inline OrientedSvd2 oriented_svd_2x2(const Eigen::Matrix2d& m) {
  Eigen::JacobiSVD<Eigen::Matrix2d> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  OrientedSvd2 out;
  out.u = svd.matrixU();
  out.v = svd.matrixV();
  out.lambda1 = svd.singularValues()(0);
  out.lambda2 = svd.singularValues()(1);
  if (out.u.determinant() < 0) {
    out.u.col(1) *= -1;
    out.lambda2 = -out.lambda2;
  }
  if (out.v.determinant() < 0) {
    out.v.col(1) *= -1;
    out.lambda2 = -out.lambda2;
  }
  return out;
}

}  // namespace rspace
