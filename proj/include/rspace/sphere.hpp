#pragma once

#include <Eigen/QR>
#include <Eigen/SVD>

#include <optional>

#include "rspace/lie.hpp"

namespace rspace {

/// A point of F_q's chart q-perp, or infinity.
struct ChartPoint {
  std::optional<RVec> x;  // empty means infinity

  static ChartPoint infinity() { return {}; }
  bool is_infinite() const { return !x.has_value(); }
};

inline RVec sphere_point(const RVec& v, const Tolerance& tol = {}) {
  if (v.size() < 2) throw DomainError("sphere points need at least two coordinates");
  if (std::abs(v.norm() - 1.0) > tol.eq_abs) throw DomainError("sphere point is not a unit vector");
  return v;
}

/// Stereographic projection from the pole q onto the hyperplane q-perp.
inline ChartPoint stereo(const RVec& q, const RVec& p, const Tolerance& tol = {}) {
  if ((p - q).norm() <= tol.eq_abs) return ChartPoint::infinity();
  const double d = p.dot(q);
  return {(p - d * q) / (1.0 - d)};
}

inline RVec stereo_inv(const RVec& q, const ChartPoint& c) {
  if (c.is_infinite()) return q;
  const RVec& x = *c.x;
  const double r2 = x.squaredNorm();
  return (2.0 * x + (r2 - 1.0) * q) / (r2 + 1.0);
}

/// Circle on S^n: a straight line in the stereographic chart from q.
class SphereCircle {
 public:
  SphereCircle(const RVec& p, const RVec& p1, const RVec& q, const Tolerance& tol = {})
      : p_(sphere_point(p, tol)), p1_(sphere_point(p1, tol)), q_(sphere_point(q, tol)) {
    if (p.size() != p1.size() || p.size() != q.size()) throw DomainError("sphere points of different dimension");
    if ((p - p1).norm() <= tol.eq_abs || (p - q).norm() <= tol.eq_abs || (p1 - q).norm() <= tol.eq_abs)
      throw PreconditionError("sphere points are not pairwise distinct");
    x0_ = *stereo(q_, p_, tol).x;
    x1_ = *stereo(q_, p1_, tol).x;
  }

  RVec operator()(const ProjParam& t) const {
    if (t.is_infinite()) return q_;
    const double s = t.value();
    return stereo_inv(q_, ChartPoint{(1.0 - s) * x0_ + s * x1_});
  }

  const RVec& p() const { return p_; }
  const RVec& p1() const { return p1_; }
  const RVec& q() const { return q_; }

 private:
  RVec p_, p1_, q_, x0_, x1_;
};

/// diag(-1, 1, ..., 1) of size n + 2.
inline RMat lorentz_gram(Index n_plus_2) {
  RMat eta = RMat::Identity(n_plus_2, n_plus_2);
  eta(0, 0) = -1;
  return eta;
}

namespace detail {

inline RVec null_lift(const RVec& p) {
  RVec w(p.size() + 1);
  w << 1.0, p;
  return w;
}

inline RVec lorentz_apply(const RMat& g, const RVec& p) {
  const RVec w = g * null_lift(p);
  return w.tail(p.size()) / w(0);
}

}  // namespace detail

/// Conformal action of g in O_0(1, n+1) through the projectivized light cone.
inline RVec mobius_act(const RMat& g, const RVec& p, const Tolerance& tol = {}) {
  const Index m = p.size() + 1;
  if (g.rows() != m || g.cols() != m) throw DomainError("Lorentz matrix has the wrong size");
  const RMat eta = lorentz_gram(m);
  const double scale = std::max(1.0, g.squaredNorm());
  if ((g.transpose() * eta * g - eta).norm() > tol.eq_abs * scale) throw DomainError("matrix is not Lorentz");
  if (g(0, 0) <= 0) throw DomainError("Lorentz matrix reverses time orientation");
  return detail::lorentz_apply(g, p);
}

/// A Lorentz transformation sending the standard triple (e0, e1, -e0) to
/// (p, p1, q); its image of the great circle through e0 and e1 is the circle
/// through the three points.
inline RMat sphere_standardizing_map(const RVec& p, const RVec& p1, const RVec& q, const Tolerance& tol = {}) {
  const Index dim = p.size();  // n + 1
  const Index m = dim + 1;
  const RMat eta = lorentz_gram(m);
  auto lorentz = [&](const RVec& a, const RVec& b) { return a.dot(eta * b); };
  RVec s0 = RVec::Zero(dim), s1 = RVec::Zero(dim);
  s0(0) = 1;
  s1(1) = 1;
  const RVec n0 = detail::null_lift(s0), n1 = detail::null_lift(s1), ninf = detail::null_lift(-s0);
  const RVec t0 = detail::null_lift(p), t1 = detail::null_lift(p1), tinf = detail::null_lift(q);
  const double a = std::abs(lorentz(t0, tinf)), b = std::abs(lorentz(t0, t1)), c = std::abs(lorentz(t1, tinf));
  if (a <= tol.eq_abs || b <= tol.eq_abs || c <= tol.eq_abs)
    throw PreconditionError("sphere points are not pairwise distinct");
  // lambda0 lambda_inf a = 2, lambda0 lambda1 b = 1, lambda1 lambda_inf c = 1
  const double l0 = std::sqrt(2.0 * c / (a * b));
  const double l1 = 1.0 / (l0 * b), linf = 2.0 / (l0 * a);

  RMat src(m, m), dst(m, m);
  src.col(0) = n0;
  src.col(1) = n1;
  src.col(2) = ninf;
  for (Index k = 3; k < m; ++k) src.col(k) = RVec::Unit(m, k);
  dst.col(0) = l0 * t0;
  dst.col(1) = l1 * t1;
  dst.col(2) = linf * tinf;
  if (m > 3) {
    RMat cond(3, m);
    cond.row(0) = (eta * t0).transpose();
    cond.row(1) = (eta * t1).transpose();
    cond.row(2) = (eta * tinf).transpose();
    Eigen::JacobiSVD<RMat> svd(cond, Eigen::ComputeFullV);
    const RMat comp = svd.matrixV().rightCols(m - 3);
    // Gram-Schmidt in the Lorentz product, positive definite on the complement.
    Index k = 3;
    for (Index j = 0; j < comp.cols(); ++j, ++k) {
      RVec v = comp.col(j);
      for (Index i = 3; i < k; ++i) v -= lorentz(dst.col(i), v) * dst.col(i);
      dst.col(k) = v / std::sqrt(lorentz(v, v));
    }
  }
  return dst * src.inverse();
}

/// Great circle through p and p1 (orthonormal), period 1: gamma(1/2) = -p.
inline RVec great_circle(const RVec& p, const RVec& p1, double s) {
  return std::cos(2 * M_PI * s) * p + std::sin(2 * M_PI * s) * p1;
}

/// Diametrical geodesic matching SphereCircle(p, p1, q) under t = tan(pi s):
/// the image of the standard great circle under the standardizing map.
class SphereGeodesic {
 public:
  SphereGeodesic(const RVec& p, const RVec& p1, const RVec& q, const Tolerance& tol = {})
      : g_(sphere_standardizing_map(sphere_point(p, tol), sphere_point(p1, tol), sphere_point(q, tol), tol)),
        dim_(p.size()) {}

  RVec operator()(double s) const {
    const RVec e0 = RVec::Unit(dim_, 0), e1 = RVec::Unit(dim_, 1);
    return detail::lorentz_apply(g_, great_circle(e0, e1, s));
  }

  const RMat& standardizing_map() const { return g_; }

 private:
  RMat g_;
  Index dim_;
};

/// Best-fit affine 2-plane through sample points: returns (max residual,
/// distance of the plane from the origin).
inline std::pair<double, double> plane_fit(const std::vector<RVec>& pts) {
  const Index d = pts.front().size();
  RVec mean = RVec::Zero(d);
  for (const auto& x : pts) mean += x;
  mean /= static_cast<double>(pts.size());
  RMat dev(d, static_cast<Index>(pts.size()));
  for (size_t i = 0; i < pts.size(); ++i) dev.col(static_cast<Index>(i)) = pts[i] - mean;
  Eigen::JacobiSVD<RMat> svd(dev, Eigen::ComputeThinU);
  const RMat basis = svd.matrixU().leftCols(std::min<Index>(2, svd.matrixU().cols()));
  double resid = 0;
  for (Index i = 0; i < dev.cols(); ++i)
    resid = std::max(resid, (dev.col(i) - basis * (basis.transpose() * dev.col(i))).norm());
  const RVec off = mean - basis * (basis.transpose() * mean);
  return {resid, off.norm()};
}

}  // namespace rspace
