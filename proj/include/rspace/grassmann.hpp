#pragma once

#include "rspace/linalg.hpp"
#include "rspace/lie.hpp"

namespace rspace {

/// Validates a basis of an n-dimensional subspace of F^{2n}.
inline FMatrix subspace_point(const FMatrix& basis, const Tolerance& tol = {}) {
  if (basis.rows() != 2 * basis.cols() || basis.cols() == 0)
    throw DomainError("only half-dimensional subspaces of F^{2n} are supported");
  if (rank_kernel(basis, tol).rank != basis.cols()) throw DomainError("subspace basis is rank deficient");
  return basis;
}

inline bool is_opposite_gr(const FMatrix& p, const FMatrix& q, const Tolerance& tol = {}) {
  if (p.rows() != q.rows() || p.field() != q.field()) throw DomainError("subspaces live in different spaces");
  return rank_kernel(FMatrix::hstack(p, q), tol).rank == p.cols() + q.cols();
}

inline bool same_subspace(const FMatrix& a, const FMatrix& b, const Tolerance& tol = {}) {
  return subspace_distance(a, b, tol) <= tol.eq_abs;
}

/// T: P -> Q with P1 = graph of T over P in the splitting P + Q.
/// The matrix tm satisfies T(P e_i) = Q tm e_i.
struct ConnectingIso {
  FMatrix p, q, tm;

  FMatrix image_basis() const { return q * tm; }  // columns T(u_i)

  /// The element of sl(2n, F) acting as T on P and as zero on Q.
  FMatrix lie_element() const {
    const FMatrix inv = FMatrix::hstack(p, q).inverse();
    return image_basis() * inv.block(0, 0, p.cols(), inv.cols());
  }
};

/// Solves P1 = span(P a + Q b) and returns T with matrix b a^{-1}.
inline ConnectingIso connecting_iso(const FMatrix& p, const FMatrix& p1, const FMatrix& q, const Tolerance& tol = {}) {
  const Index n = p.cols();
  const FMatrix coeff = FMatrix::hstack(p, q).inverse() * p1;
  const FMatrix a = coeff.block(0, 0, n, n), b = coeff.block(n, 0, n, n);
  if (rank_kernel(a, tol).rank != n) throw InconsistencyError("P-component of P1 is singular");
  return {p, q, b * a.inverse()};
}

inline void require_pairwise_opposite_gr(const FMatrix& p, const FMatrix& p1, const FMatrix& q,
                                         const Tolerance& tol) {
  if (!is_opposite_gr(p, p1, tol)) throw PreconditionError("P and P1 are not opposite");
  if (!is_opposite_gr(p, q, tol)) throw PreconditionError("P and Q are not opposite");
  if (!is_opposite_gr(p1, q, tol)) throw PreconditionError("P1 and Q are not opposite");
}

/// Circle c(t) = {x + tT(x) | x in P}, c(inf) = Q.
class GrassmannCircle {
 public:
  GrassmannCircle(const FMatrix& p, const FMatrix& p1, const FMatrix& q, const Tolerance& tol = {}) {
    subspace_point(p, tol);
    subspace_point(p1, tol);
    subspace_point(q, tol);
    require_pairwise_opposite_gr(p, p1, q, tol);
    iso_ = connecting_iso(p, p1, q, tol);
  }
  explicit GrassmannCircle(ConnectingIso iso) : iso_(std::move(iso)) {}

  FMatrix operator()(const ProjParam& t) const {
    if (t.is_infinite()) return iso_.q;
    return iso_.p + t.value() * iso_.image_basis();
  }

  const ConnectingIso& iso() const { return iso_; }

 private:
  ConnectingIso iso_;
};

/// gamma(s) = span{cos(pi s) u_i + sin(pi s) T u_i}; period 1.
class GrassmannGeodesic {
 public:
  explicit GrassmannGeodesic(ConnectingIso iso, const Tolerance& tol = {}) : iso_(std::move(iso)) {
    if (rank_kernel(iso_.tm, tol).rank != iso_.tm.cols()) throw DomainError("T is not invertible");
  }

  FMatrix operator()(double s) const {
    return std::cos(M_PI * s) * iso_.p + std::sin(M_PI * s) * iso_.image_basis();
  }

 private:
  ConnectingIso iso_;
};

/// Gram matrix of the inner product making u_1..u_n, Tu_1..Tu_n orthonormal.
inline FMatrix invariant_metric_gram(const ConnectingIso& iso) {
  const FMatrix binv = FMatrix::hstack(iso.p, iso.image_basis()).inverse();
  return binv.adjoint() * binv;
}

/// Principal angles between column spans after mapping through w, i.e. in
/// the metric with Gram w^H w. Over H each angle appears twice.
inline RVec principal_angles(const FMatrix& a, const FMatrix& b, const FMatrix& w) {
  const CMat qa = complex_span_basis(w * a), qb = complex_span_basis(w * b);
  Eigen::JacobiSVD<CMat> svd(qa.adjoint() * qb, Eigen::ComputeFullV);
  const CMat resid = qb - qa * (qa.adjoint() * qb);
  RVec s = svd.singularValues();
  for (Index i = 0; i < s.size(); ++i) s(i) = std::atan2((resid * svd.matrixV().col(i)).norm(), s(i));
  return s;
}

}  // namespace rspace
