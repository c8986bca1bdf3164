#pragma once

#include <Eigen/QR>

#include "rspace/algebras.hpp"
#include "rspace/linalg.hpp"

namespace rspace {

/// Oriented 2-plane u ^ v in R^N, stored by an orthonormal frame.
struct OrientedPlane {
  RVec u, v;

  Index dim() const { return u.size(); }

  /// Gram-Schmidt on (u, v); keeps the orientation.
  static OrientedPlane from_frame(const RVec& u, const RVec& v, const Tolerance& tol = {}) {
    if (u.size() != v.size() || u.size() < 4) throw DomainError("oriented planes need N >= 4");
    const double nu = u.norm();
    if (nu <= tol.eq_abs) throw DomainError("degenerate frame");
    const RVec uu = u / nu;
    RVec vv = v - uu.dot(v) * uu;
    const double nv = vv.norm();
    if (nv <= tol.eq_abs * std::max(1.0, v.norm())) throw DomainError("degenerate frame");
    return {uu, vv / nv};
  }

  /// Validates an orthonormal frame.
  static OrientedPlane checked(const RVec& u, const RVec& v, const Tolerance& tol = {}) {
    if (u.size() != v.size() || u.size() < 4) throw DomainError("oriented planes need N >= 4");
    if (std::abs(u.norm() - 1) > tol.eq_abs || std::abs(v.norm() - 1) > tol.eq_abs || std::abs(u.dot(v)) > tol.eq_abs)
      throw DomainError("frame is not orthonormal");
    return {u, v};
  }

  RMat frame() const {
    RMat f(u.size(), 2);
    f << u, v;
    return f;
  }
};

/// Standard complex bilinear form <x, y> = x^T y (no conjugation).
inline cd bilinear(const CVec& x, const CVec& y) { return x.transpose() * y; }

inline CVec psi(const OrientedPlane& p) {
  return p.u.cast<cd>() + cd(0, 1) * p.v.cast<cd>();
}

inline OrientedPlane psi_inv(const CVec& x, const Tolerance& tol = {}) {
  const double n2 = x.squaredNorm();
  if (n2 <= 0) throw DomainError("zero vector is not a null line");
  if (std::abs(bilinear(x, x)) > tol.eq_abs * n2) throw DomainError("vector is not null");
  return OrientedPlane::from_frame(x.real(), x.imag(), tol);
}

/// Projective representative with its largest-modulus entry equal to 1.
inline CVec canonical_null(const CVec& x) {
  Index k = 0;
  x.cwiseAbs().maxCoeff(&k);
  return x / x(k);
}

/// Frame distance minimized over the rotation ambiguity of the second frame.
inline double plane_distance(const OrientedPlane& a, const OrientedPlane& b) {
  const CVec x = psi(a), y = psi(b);
  const cd ov = y.adjoint() * x;
  const cd phase = std::abs(ov) > 0 ? ov / std::abs(ov) : cd(1, 0);
  return (x - phase * y).norm();
}

/// Action of g in O(N, C) on oriented planes through psi.
inline OrientedPlane act_on_plane(const CMat& g, const OrientedPlane& p, const Tolerance& tol = {}) {
  return psi_inv(g * psi(p), tol);
}

struct CharacteristicAngles {
  double alpha = 0, beta = 0;
  // P = u1 ^ u2, Q = (cos a u1 + sin a v1) ^ (cos b u2 + sin b v2)
  RVec u1, u2, v1, v2;
};

inline CharacteristicAngles characteristic_angles(const OrientedPlane& p, const OrientedPlane& q) {
  if (p.dim() != q.dim()) throw DomainError("planes live in different spaces");
  const RMat fp = p.frame(), fq = q.frame();
  const Eigen::Matrix2d m = fp.transpose() * fq;
  const OrientedSvd2 s = oriented_svd_2x2(m);
  const RMat pp = fp * s.u, qq = fq * s.v;
  CharacteristicAngles out;
  out.u1 = pp.col(0);
  out.u2 = pp.col(1);
  const RVec r1 = qq.col(0) - pp * (pp.transpose() * qq.col(0));
  const RVec r2 = qq.col(1) - pp * (pp.transpose() * qq.col(1));
  out.alpha = std::atan2(r1.norm(), s.lambda1);
  out.beta = std::atan2(r2.norm(), s.lambda2);
  if (out.alpha > out.beta) out.alpha = out.beta;  // rounding at alpha = beta
  out.v1 = r1.norm() > 0 ? RVec(r1 / r1.norm()) : RVec::Zero(p.dim());
  out.v2 = r2.norm() > 0 ? RVec(r2 / r2.norm()) : RVec::Zero(p.dim());
  return out;
}

/// Plane (cos a u1 + sin a v1) ^ (cos b u2 + sin b v2).
inline OrientedPlane plane_from_angles(const RVec& u1, const RVec& u2, const RVec& v1, const RVec& v2, double a,
                                       double b) {
  return {std::cos(a) * u1 + std::sin(a) * v1, std::cos(b) * u2 + std::sin(b) * v2};
}

struct OppositeVerdict {
  bool opposite = false;
  double pairing = 0;     // |<psi P, psi Q>| for unit frames
  double angle_gap = 0;   // |cos alpha - cos beta|
};

/// Bilinear criterion |<X, Y>| > eq_abs, cross-checked against the
/// characteristic-angle criterion outside the band [eq_abs, 10 eq_abs].
inline OppositeVerdict opposite_quadric_verdict(const OrientedPlane& p, const OrientedPlane& q,
                                                const Tolerance& tol = {}) {
  OppositeVerdict v;
  v.pairing = std::abs(bilinear(psi(p), psi(q)));
  const auto ang = characteristic_angles(p, q);
  v.angle_gap = std::abs(std::cos(ang.alpha) - std::cos(ang.beta));
  v.opposite = v.pairing > tol.eq_abs;
  const bool by_angles = v.angle_gap > tol.eq_abs;
  const bool outside_band = v.pairing < tol.eq_abs || v.pairing > 10 * tol.eq_abs;
  if (by_angles != v.opposite && outside_band)
    throw InconsistencyError("bilinear and angle criteria for opposite planes disagree");
  return v;
}

inline bool is_opposite_quadric(const OrientedPlane& p, const OrientedPlane& q, const Tolerance& tol = {}) {
  return opposite_quadric_verdict(p, q, tol).opposite;
}

struct NullBasis {
  CVec x, xp, y, yp;  // Gram diag(R, R), R = [[0, 1], [1, 0]]
};

inline NullBasis adapted_null_basis(const CVec& x, const CVec& y, const Tolerance& tol = {}) {
  const double sx = x.squaredNorm(), sy = y.squaredNorm();
  if (std::abs(bilinear(x, x)) > tol.eq_abs * sx || std::abs(bilinear(y, y)) > tol.eq_abs * sy)
    throw PreconditionError("inputs are not null");
  if (std::abs(bilinear(x, y)) > tol.eq_abs * std::sqrt(sx * sy)) throw PreconditionError("<X, Y> != 0");
  CMat rows(2, x.size());
  rows.row(0) = x.transpose();
  rows.row(1) = y.transpose();
  Eigen::JacobiSVD<CMat> svd(rows, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const RVec& sv = svd.singularValues();
  if (sv(1) <= tol.rank_rel * sv(0)) throw InconsistencyError("X-perp equals Y-perp");
  const CVec a = svd.solve(CVec::Unit(2, 0)), b = svd.solve(CVec::Unit(2, 1));
  NullBasis out;
  out.x = x;
  out.y = y;
  out.xp = a - 0.5 * bilinear(a, a) * x;
  out.yp = b - bilinear(a, b) * x - 0.5 * bilinear(b, b) * y;
  return out;
}

/// {T in so(N, C) : TX = 0, T(X-perp) in CX} = {X a^T - a X^T : <a, X> = 0}.
inline SubalgebraRep stabilizer_polar_quadric(const CVec& x, const AlgebraBasis& g, const Tolerance& tol = {}) {
  const Index n = x.size();
  if (std::abs(bilinear(x, x)) > tol.eq_abs * x.squaredNorm()) throw PreconditionError("X is not null");
  // complex basis of X-perp
  CMat row = x.transpose();
  Eigen::JacobiSVD<CMat> svd(row, Eigen::ComputeFullV);
  const CMat perp = svd.matrixV().rightCols(n - 1);
  std::vector<FMatrix> elems;
  for (Index k = 0; k < perp.cols(); ++k) {
    const CVec a = perp.col(k);
    const CMat t = x * a.transpose() - a * x.transpose();
    elems.push_back(FMatrix::complex(t));
    elems.push_back(FMatrix::complex(cd(0, 1) * t));
  }
  return span_of(g.tag(), elems, tol);
}

/// e1 + i e2 and e1 - i e2 in C^N.
inline CVec e_plus(Index n) {
  CVec v = CVec::Zero(n);
  v(0) = 1;
  v(1) = cd(0, 1);
  return v;
}
inline CVec e_minus(Index n) {
  CVec v = CVec::Zero(n);
  v(0) = 1;
  v(1) = cd(0, -1);
  return v;
}

/// Columns E+, E-, e3, ..., eN of the basis in which the circle formulas are written.
inline CMat quadric_basis_matrix(Index n) {
  CMat b = CMat::Identity(n, n);
  b.col(0) = e_plus(n);
  b.col(1) = e_minus(n);
  return b;
}

namespace detail {

// Bilinear-orthonormal basis (w_k^T w_l = delta_kl) of span(cands).
inline CMat bilinear_orthonormalize(const CMat& cands, Index count, double tol) {
  std::vector<CVec> rest;
  for (Index j = 0; j < cands.cols(); ++j) rest.push_back(cands.col(j));
  const double tiny = 1e-20 * std::max(1e-300, cands.colwise().squaredNorm().maxCoeff());
  CMat out(cands.rows(), count);
  for (Index k = 0; k < count; ++k) {
    size_t best = 0;
    double bv = -1;
    for (size_t j = 0; j < rest.size(); ++j) {
      if (rest[j].squaredNorm() <= tiny) continue;
      const double v = std::abs(bilinear(rest[j], rest[j])) / std::max(1e-300, rest[j].squaredNorm());
      if (v > bv) bv = v, best = j;
    }
    CVec w = rest[best];
    if (bv < 0.1) {
      // every candidate is nearly isotropic: mix in the partner with the largest pairing
      size_t partner = best;
      double pv = -1;
      for (size_t j = 0; j < rest.size(); ++j) {
        if (j == best || rest[j].squaredNorm() <= tiny) continue;
        const double v = std::abs(bilinear(w, rest[j]));
        if (v > pv) pv = v, partner = j;
      }
      if (partner != best) w = w + rest[partner] * (std::conj(bilinear(w, rest[partner])) / std::max(1e-300, pv));
    }
    const cd nn = bilinear(w, w);
    if (std::abs(nn) <= tol * w.squaredNorm()) throw InconsistencyError("bilinear Gram-Schmidt broke down");
    w /= std::sqrt(nn);
    out.col(k) = w;
    rest.erase(rest.begin() + static_cast<long>(best));
    for (auto& r : rest) r -= w * bilinear(w, r);
  }
  return out;
}

}  // namespace detail

/// g in SO(N, C) with g X in C(e1 + i e2) and g Y in C(e1 - i e2).
inline CMat standardize_null_pair(const CVec& x, const CVec& y, const Tolerance& tol = {}) {
  const Index n = x.size();
  const cd xy = bilinear(x, y);
  if (std::abs(xy) <= tol.eq_abs * x.norm() * y.norm()) throw PreconditionError("null lines are not opposite");
  CMat src(n, n);
  src.col(0) = x * (2.0 / xy);
  src.col(1) = y;
  CMat rows(2, n);
  rows.row(0) = x.transpose();
  rows.row(1) = y.transpose();
  Eigen::JacobiSVD<CMat> svd(rows, Eigen::ComputeFullV);
  const CMat comp = svd.matrixV().rightCols(n - 2);
  src.rightCols(n - 2) = detail::bilinear_orthonormalize(comp, n - 2, tol.rank_rel);
  CMat g = quadric_basis_matrix(n) * src.inverse();
  if (std::real(g.determinant()) < 0) {
    src.col(n - 1) *= -1;
    g = quadric_basis_matrix(n) * src.inverse();
  }
  return g;
}

/// exp(tZ)(e1 + i e2) = E+ - t^2 (z^T z) E- + 2t z for Z of the block form
/// with vector z in the e3..eN slots.
inline CVec exp_tz_eplus(const CVec& z, double t) {
  const Index n = z.size() + 2;
  CVec out = e_plus(n) - t * t * bilinear(z, z) * e_minus(n);
  out.tail(n - 2) += 2 * t * z;
  return out;
}

/// Matrix of Z in standard coordinates: Z E+ = 2z-part, Z e_k = -z_k E-, Z E- = 0.
inline CMat z_matrix(const CVec& z) {
  const Index n = z.size() + 2;
  const CMat b = quadric_basis_matrix(n);
  CMat zb = CMat::Zero(n, n);  // in basis B
  zb.block(2, 0, n - 2, 1) = 2 * z;
  zb.block(1, 2, 1, n - 2) = -z.transpose();
  return b * zb * b.inverse();
}

/// Circle through three pairwise-opposite oriented planes.
class QuadricCircle {
 public:
  QuadricCircle(const OrientedPlane& p0, const OrientedPlane& p1, const OrientedPlane& q, const Tolerance& tol = {})
      : q_(q), tol_(tol) {
    if (!is_opposite_quadric(p0, p1, tol)) throw PreconditionError("P0 and P1 are not opposite");
    if (!is_opposite_quadric(p0, q, tol)) throw PreconditionError("P0 and Q are not opposite");
    if (!is_opposite_quadric(p1, q, tol)) throw PreconditionError("P1 and Q are not opposite");
    const CMat g = standardize_null_pair(psi(p0), psi(q), tol);
    ginv_ = g.inverse();
    const CVec w = g * psi(p1);
    const Index n = w.size();
    const cd cplus = bilinear(w, e_minus(n)) / 2.0;
    z_ = w.tail(n - 2) / (2.0 * cplus);
    if (std::abs(bilinear(z_, z_)) < tol.eq_abs) throw InconsistencyError("z^T z vanishes: y is not prevalent");
  }

  OrientedPlane operator()(const ProjParam& t) const {
    if (t.is_infinite()) return q_;
    return psi_inv(ginv_ * exp_tz_eplus(z_, t.value()), loose());
  }

  const CVec& z() const { return z_; }
  const CMat& g_inverse() const { return ginv_; }

 private:
  Tolerance loose() const {
    Tolerance l = tol_;
    l.eq_abs = std::max(tol_.eq_abs, 1e-6);
    return l;
  }

  OrientedPlane q_;
  Tolerance tol_;
  CMat ginv_;
  CVec z_;
};

/// gamma_o(s) = e1 ^ (cos(2 pi s) e2 + sin(2 pi s) e4).
inline OrientedPlane geodesic_gamma0(Index n, double s) {
  if (n < 4) throw DomainError("quadric model needs N >= 4");
  const RVec e1 = RVec::Unit(n, 0);
  return {e1, std::cos(2 * M_PI * s) * RVec::Unit(n, 1) + std::sin(2 * M_PI * s) * RVec::Unit(n, 3)};
}

/// c_o(t) = e1 ^ ((1 - t^2)/(1 + t^2) e2 + 2t/(1 + t^2) e4).
inline OrientedPlane circle_simple(Index n, const ProjParam& t) {
  if (t.is_infinite()) return {RVec::Unit(n, 1), RVec::Unit(n, 0)};
  const double s = t.value(), d = 1 + s * s;
  return {RVec::Unit(n, 0), (1 - s * s) / d * RVec::Unit(n, 1) + 2 * s / d * RVec::Unit(n, 3)};
}

/// Diametrical geodesic matching a QuadricCircle under t = tan(pi s): the
/// image of gamma_o under an element mapping the circle through e1^e2,
/// e1^e4, e2^e1 onto the given one.
class QuadricGeodesic {
 public:
  explicit QuadricGeodesic(const QuadricCircle& c, const Tolerance& tol = {}) : tol_(tol) {
    const CVec& z = c.z();
    const Index m = z.size();
    const Index n = m + 2;
    const cd lambda = 1.0 / std::sqrt(-bilinear(z, z));
    const CVec zhat = cd(0, -1) * lambda * z;  // bilinear unit vector, image of e4
    // orthonormalize with zhat kept first, then place it in the e4 slot
    CMat basis(m, m);
    basis.col(0) = zhat;
    {
      CMat rest(m, m);
      rest = CMat::Identity(m, m);
      for (Index j = 0; j < m; ++j) rest.col(j) -= zhat * bilinear(zhat, rest.col(j));
      basis.rightCols(m - 1) = detail::bilinear_orthonormalize(rest, m - 1, tol.rank_rel);
    }
    CMat a(m, m);
    a.col(1) = basis.col(0);
    a.col(0) = basis.col(1);
    if (m > 2) a.rightCols(m - 2) = basis.rightCols(m - 2);
    if (std::real(a.determinant()) < 0) a.col(0) *= -1;
    CMat hb = CMat::Zero(n, n);  // in basis B
    hb(0, 0) = lambda;
    hb(1, 1) = 1.0 / lambda;
    hb.bottomRightCorner(m, m) = a;
    const CMat b = quadric_basis_matrix(n);
    map_ = c.g_inverse() * b * hb * b.inverse();
  }

  OrientedPlane operator()(double s) const {
    Tolerance l = tol_;
    l.eq_abs = std::max(tol_.eq_abs, 1e-6);
    return act_on_plane(map_, geodesic_gamma0(map_.rows(), s), l);
  }

  /// Element of SO(N, C) carrying the simple circle onto this one.
  const CMat& map() const { return map_; }

 private:
  Tolerance tol_;
  CMat map_;
};

/// Frame (e1, e2, u, v) with angles alpha < beta, alpha + beta < pi.
struct QuadricCircleData {
  RVec e1, e2, u, v;
  double alpha = 0, beta = 0;
  double a = 0, b = 0, c = 0;

  static QuadricCircleData make(double alpha, double beta, const RVec& e1, const RVec& e2, const RVec& u,
                                const RVec& v, const Tolerance& tol = {}) {
    if (!(alpha >= 0 && alpha < beta && alpha + beta < M_PI)) throw PreconditionError("angles must satisfy 0 <= alpha < beta, alpha + beta < pi");
    RMat f(e1.size(), 4);
    f << e1, e2, u, v;
    if ((f.transpose() * f - RMat::Identity(4, 4)).norm() > tol.eq_abs) throw DomainError("frame is not orthonormal");
    QuadricCircleData d{e1, e2, u, v, alpha, beta};
    const double den = std::cos(alpha) + std::cos(beta);
    d.a = std::sin(alpha) / den;
    d.b = std::sin(beta) / den;
    d.c = (std::cos(alpha) - std::cos(beta)) / den;
    return d;
  }

  /// Standard frame e1, e2, e3, e4 of R^N.
  static QuadricCircleData standard(double alpha, double beta, Index n, const Tolerance& tol = {}) {
    return make(alpha, beta, RVec::Unit(n, 0), RVec::Unit(n, 1), RVec::Unit(n, 2), RVec::Unit(n, 3), tol);
  }

  /// The defining plane c(1) = (cos a e1 + sin a u) ^ (cos b e2 + sin b v).
  OrientedPlane p1() const { return plane_from_angles(e1, e2, u, v, alpha, beta); }
};

/// c(t) = u_t ^ v_t with u_t = (1 + t^2 C) e1 + 2ta u, v_t = (1 - t^2 C) e2 + 2tb v.
inline OrientedPlane circle_standard(const QuadricCircleData& d, const ProjParam& t) {
  if (t.is_infinite()) return {d.e2, d.e1};
  const double s = t.value();
  const RVec ut = (1 + s * s * d.c) * d.e1 + 2 * s * d.a * d.u;
  const RVec vt = (1 - s * s * d.c) * d.e2 + 2 * s * d.b * d.v;
  return {ut / ut.norm(), vt / vt.norm()};
}

/// O = F diag(1/r, r, R_sigma, I) in the basis E+, E-, e3, e4, ..., where F is
/// orthogonal, fixes e1, e2 and sends e3, e4 to u, v. Conjugates the simple
/// circle's generator (z = i e4) to the one with z = a u + i b v. When F
/// reverses orientation, a reflection of e3 is appended to land in SO(N, C).
inline CMat conjugating_element(double a, double b, const RVec& u, const RVec& v, const Tolerance& tol = {}) {
  if (!(a >= 0 && a < b)) throw DomainError("conjugating element needs 0 <= a < b");
  const Index n = u.size();
  RMat frame(n, 4);
  frame << RVec::Unit(n, 0), RVec::Unit(n, 1), u, v;
  if ((frame.transpose() * frame - RMat::Identity(4, 4)).norm() > tol.eq_abs)
    throw DomainError("u, v must be orthonormal and orthogonal to e1, e2");
  // complete to an orthogonal matrix F with F e3 = u, F e4 = v
  Eigen::HouseholderQR<RMat> qr(frame);
  RMat full = qr.householderQ();
  full.leftCols(4) = frame;
  const double r = std::sqrt(b * b - a * a), sigma = std::atanh(a / b);
  CMat ob = CMat::Identity(n, n);
  ob(0, 0) = 1.0 / r;
  ob(1, 1) = r;
  ob(2, 2) = std::cosh(sigma);
  ob(2, 3) = cd(0, -std::sinh(sigma));
  ob(3, 2) = cd(0, std::sinh(sigma));
  ob(3, 3) = std::cosh(sigma);
  const CMat bm = quadric_basis_matrix(n);
  const CMat fc = full.cast<cd>();
  CMat o = fc * bm * ob * bm.inverse();
  // the reflection of e3 fixes the simple circle pointwise and commutes with its generator
  if (full.determinant() < 0) o.col(2) *= -1;
  return o;
}

}  // namespace rspace
