#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "rspace/linalg.hpp"

namespace rspace {

/// Identifies an ambient matrix Lie algebra, e.g. "sl(4,H)" or "so(5,C)".
struct AlgebraTag {
  std::string name;
  Field field = Field::R;
  Index size = 0;  // matrices are size x size over field

  bool operator==(const AlgebraTag& o) const {
    return name == o.name && field == o.field && size == o.size;
  }
  bool operator!=(const AlgebraTag& o) const { return !(*this == o); }
};

/// Real basis of a matrix Lie algebra g, stored as orthonormal columns in the
/// real coordinates of F^{size x size}.
class AlgebraBasis {
 public:
  AlgebraBasis() = default;
  AlgebraBasis(AlgebraTag tag, const RMat& coords, const Tolerance& tol = {}) : tag_(std::move(tag)) {
    Eigen::JacobiSVD<RMat> svd(coords, Eigen::ComputeThinU);
    const RVec& sv = svd.singularValues();
    Index k = 0;
    for (Index i = 0; i < sv.size(); ++i)
      if (sv(0) > 0 && sv(i) > tol.rank_rel * sv(0)) ++k;
    if (k != coords.cols()) throw DomainError("algebra basis elements are linearly dependent");
    coords_ = orthonormalize(coords);
    for (Index j = 0; j < coords_.cols(); ++j)
      elements_.push_back(from_real_coordinates(tag_.field, tag_.size, tag_.size, coords_.col(j)));
  }

  const AlgebraTag& tag() const { return tag_; }
  Index dim() const { return coords_.cols(); }
  Index size() const { return tag_.size; }
  Field field() const { return tag_.field; }
  const RMat& coords() const { return coords_; }
  const FMatrix& element(Index j) const { return elements_[static_cast<size_t>(j)]; }
  const std::vector<FMatrix>& elements() const { return elements_; }

  RVec coordinates_of(const FMatrix& x) const { return coords_.transpose() * real_coordinates(x); }
  FMatrix combine(const RVec& c) const {
    return from_real_coordinates(tag_.field, tag_.size, tag_.size, coords_ * c);
  }
  /// Distance from x to the algebra.
  double membership_residual(const FMatrix& x) const {
    const RVec v = real_coordinates(x.with_field(tag_.field));
    return (v - coords_ * (coords_.transpose() * v)).norm();
  }

 private:
  static RMat orthonormalize(const RMat& m) {
    Eigen::HouseholderQR<RMat> qr(m);
    return qr.householderQ() * RMat::Identity(m.rows(), m.cols());
  }

  AlgebraTag tag_;
  RMat coords_;
  std::vector<FMatrix> elements_;
};

/// A matrix in a tagged ambient Lie algebra.
struct LieElement {
  AlgebraTag tag;
  FMatrix matrix;

  static LieElement checked(const AlgebraBasis& g, const FMatrix& m, const Tolerance& tol = {}) {
    if (m.rows() != g.size() || m.cols() != g.size()) throw DomainError("element has wrong size");
    if (g.membership_residual(m) > tol.eq_abs * std::max(1.0, m.norm()))
      throw DomainError("matrix does not satisfy the defining conditions of " + g.tag().name);
    return {g.tag(), m.with_field(g.field())};
  }
};

/// Real subspace of g, stored as orthonormal columns of real coordinates.
class SubalgebraRep {
 public:
  SubalgebraRep() = default;
  SubalgebraRep(AlgebraTag tag, RMat coords) : tag_(std::move(tag)), coords_(std::move(coords)) {}

  const AlgebraTag& tag() const { return tag_; }
  Index dim() const { return coords_.cols(); }
  const RMat& coords() const { return coords_; }
  FMatrix element(Index j) const {
    return from_real_coordinates(tag_.field, tag_.size, tag_.size, coords_.col(j));
  }
  std::vector<FMatrix> elements() const {
    std::vector<FMatrix> out;
    for (Index j = 0; j < dim(); ++j) out.push_back(element(j));
    return out;
  }
  double residual(const FMatrix& x) const {
    const RVec v = real_coordinates(x.with_field(tag_.field));
    return (v - coords_ * (coords_.transpose() * v)).norm();
  }

 private:
  AlgebraTag tag_;
  RMat coords_;
};

/// Point of the projective line R u {inf}.
class ProjParam {
 public:
  static ProjParam at(double t) { return ProjParam(false, t); }
  static ProjParam infinity() { return ProjParam(true, 0.0); }
  /// tan(pi s), with tan(pi/2 + k pi) = inf.
  static ProjParam tan_pi(double s, double window = 0.0) {
    double frac = s - std::floor(s);
    if (std::abs(frac - 0.5) <= window) return infinity();
    return at(std::tan(M_PI * s));
  }
  bool is_infinite() const { return inf_; }
  double value() const {
    if (inf_) throw DomainError("parameter is infinite");
    return t_;
  }

 private:
  ProjParam(bool inf, double t) : inf_(inf), t_(t) {}
  bool inf_;
  double t_;
};

namespace detail {

inline void require_same(const AlgebraTag& a, const AlgebraTag& b) {
  if (a != b) throw DomainError("algebra tag mismatch: " + a.name + " vs " + b.name);
}

// Orthonormal basis of the column span (real).
inline RMat real_span(const RMat& m, const Tolerance& tol) {
  if (m.cols() == 0) return RMat(m.rows(), 0);
  Eigen::JacobiSVD<RMat> svd(m, Eigen::ComputeThinU);
  const RVec& sv = svd.singularValues();
  Index k = 0;
  for (Index i = 0; i < sv.size(); ++i)
    if (sv(0) > 0 && sv(i) > tol.rank_rel * sv(0)) ++k;
  return svd.matrixU().leftCols(k);
}

inline Index real_rank(const RMat& m, const Tolerance& tol) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  Eigen::JacobiSVD<RMat> svd(m);
  const RVec& sv = svd.singularValues();
  Index k = 0;
  for (Index i = 0; i < sv.size(); ++i)
    if (sv(0) > 0 && sv(i) > tol.rank_rel * sv(0)) ++k;
  return k;
}

inline RMat real_kernel(const RMat& m, const Tolerance& tol) {
  if (m.rows() == 0) return RMat::Identity(m.cols(), m.cols());
  return rank_kernel(FMatrix::real(m), tol).kernel.part_a().real();
}

}  // namespace detail

inline FMatrix commutator(const FMatrix& x, const FMatrix& y) { return x * y - y * x; }

inline LieElement bracket(const LieElement& x, const LieElement& y) {
  detail::require_same(x.tag, y.tag);
  return {x.tag, commutator(x.matrix, y.matrix)};
}

/// Re tr(XY) of the complex realization. On each simple algebra in use this
/// is a fixed nonzero multiple of the Killing form.
inline double trace_form(const FMatrix& x, const FMatrix& y) { return (x * y).real_trace(); }

inline double trace_form(const LieElement& x, const LieElement& y) {
  detail::require_same(x.tag, y.tag);
  return trace_form(x.matrix, y.matrix);
}

/// The whole algebra as a subspace.
inline SubalgebraRep full_subalgebra(const AlgebraBasis& g) { return {g.tag(), g.coords()}; }

inline SubalgebraRep span_of(const AlgebraTag& tag, const std::vector<FMatrix>& elems,
                             const Tolerance& tol = {}) {
  RMat c(field_degree(tag.field) * tag.size * tag.size, static_cast<Index>(elems.size()));
  for (size_t j = 0; j < elems.size(); ++j) c.col(static_cast<Index>(j)) = real_coordinates(elems[j].with_field(tag.field));
  return {tag, detail::real_span(c, tol)};
}

/// Polar of p with respect to the trace form: {x in g : tr(xy) = 0 for y in p}.
inline SubalgebraRep polar(const SubalgebraRep& p, const AlgebraBasis& g, const Tolerance& tol = {}) {
  detail::require_same(p.tag(), g.tag());
  RMat k(p.dim(), g.dim());
  const auto pe = p.elements();
  for (Index i = 0; i < p.dim(); ++i)
    for (Index j = 0; j < g.dim(); ++j) k(i, j) = trace_form(pe[static_cast<size_t>(i)], g.element(j));
  const RMat coeff = detail::real_kernel(k, tol);
  return {g.tag(), g.coords() * coeff};
}

/// Intersection of two subspaces of g.
inline SubalgebraRep intersect(const SubalgebraRep& a, const SubalgebraRep& b, const Tolerance& tol = {}) {
  detail::require_same(a.tag(), b.tag());
  RMat stacked(a.coords().rows(), a.dim() + b.dim());
  stacked << a.coords(), -b.coords();
  const RMat ker = detail::real_kernel(stacked, tol);
  return {a.tag(), detail::real_span(a.coords() * ker.topRows(a.dim()), tol)};
}

/// Max over basis pairs of the distance of [x_i, x_j] from span(target).
inline double bracket_residual(const SubalgebraRep& a, const SubalgebraRep& target) {
  const auto ae = a.elements();
  double worst = 0;
  for (size_t i = 0; i < ae.size(); ++i)
    for (size_t j = i + 1; j < ae.size(); ++j)
      worst = std::max(worst, target.residual(commutator(ae[i], ae[j])));
  return worst;
}

inline double abelian_residual(const SubalgebraRep& a) {
  const auto ae = a.elements();
  double worst = 0;
  for (size_t i = 0; i < ae.size(); ++i)
    for (size_t j = i + 1; j < ae.size(); ++j) worst = std::max(worst, commutator(ae[i], ae[j]).norm());
  return worst;
}

/// p is a subalgebra, p-polar lies in p, and p-polar is abelian.
inline bool is_height_one_parabolic(const SubalgebraRep& p, const AlgebraBasis& g, const Tolerance& tol = {}) {
  if (p.dim() == 0 || p.dim() == g.dim()) return false;
  if (bracket_residual(p, p) > tol.eq_abs) return false;
  const SubalgebraRep pp = polar(p, g, tol);
  if (pp.dim() == 0) return false;
  for (Index j = 0; j < pp.dim(); ++j)
    if (p.residual(pp.element(j)) > tol.eq_abs) return false;
  return abelian_residual(pp) <= tol.eq_abs;
}

/// p-polar and q-polar meet only in zero.
inline bool is_opposite(const SubalgebraRep& p, const SubalgebraRep& q, const AlgebraBasis& g,
                        const Tolerance& tol = {}) {
  const SubalgebraRep pp = polar(p, g, tol), qp = polar(q, g, tol);
  RMat stacked(pp.coords().rows(), pp.dim() + qp.dim());
  stacked << pp.coords(), qp.coords();
  return detail::real_rank(stacked, tol) == pp.dim() + qp.dim();
}

namespace detail {

inline FMatrix ad2(const FMatrix& y, const FMatrix& x) { return commutator(y, commutator(y, x)); }

inline double scale_of(const FMatrix& y) { return std::max(1.0, y.norm()); }

// |tr(y p_i)| for all basis elements of p.
inline double polar_residual(const FMatrix& y, const SubalgebraRep& p) {
  double worst = 0;
  for (Index i = 0; i < p.dim(); ++i) worst = std::max(worst, std::abs(trace_form(y, p.element(i))));
  return worst;
}

}  // namespace detail

/// y lies in p-polar and Ker (ad_y)^2 = p on g.
inline bool is_prevalent(const LieElement& y, const SubalgebraRep& p, const AlgebraBasis& g,
                         const Tolerance& tol = {}) {
  detail::require_same(y.tag, g.tag());
  const double s = detail::scale_of(y.matrix);
  if (y.matrix.norm() <= tol.eq_abs) return false;
  if (detail::polar_residual(y.matrix, p) > tol.eq_abs * s) return false;
  RMat ad(g.dim(), g.dim());
  for (Index j = 0; j < g.dim(); ++j) ad.col(j) = g.coordinates_of(detail::ad2(y.matrix, g.element(j)));
  const Index kernel_dim = g.dim() - detail::real_rank(ad, tol);
  if (kernel_dim != p.dim()) return false;
  for (Index i = 0; i < p.dim(); ++i)
    if (detail::ad2(y.matrix, p.element(i)).norm() > tol.eq_abs * s * s) return false;
  return true;
}

/// (ad_y)^2 restricted to p-polar is an isomorphism onto q-polar.
inline bool prevalent_iso_check(const LieElement& y, const SubalgebraRep& p, const SubalgebraRep& q,
                                const AlgebraBasis& g, const Tolerance& tol = {}) {
  detail::require_same(y.tag, g.tag());
  const double s = detail::scale_of(y.matrix);
  const SubalgebraRep pp = polar(p, g, tol), qp = polar(q, g, tol);
  if (qp.residual(y.matrix) > tol.eq_abs * s) throw PreconditionError("y is not in the polar of q");
  if (pp.dim() != qp.dim()) return false;
  RMat m(qp.dim(), pp.dim());
  for (Index j = 0; j < pp.dim(); ++j) {
    const FMatrix img = detail::ad2(y.matrix, pp.element(j));
    if (qp.residual(img) > 1e3 * tol.eq_abs * s * s)
      throw InconsistencyError("(ad_y)^2 does not map p-polar into q-polar");
    m.col(j) = qp.coords().transpose() * real_coordinates(img);
  }
  if (y.matrix.norm() <= tol.eq_abs) return false;
  return detail::real_rank(m, tol) == pp.dim();
}

/// z with ad_z = 1, 0, -1 on p-polar, p cap q, q-polar.
inline LieElement characteristic_element(const SubalgebraRep& p, const SubalgebraRep& q, const AlgebraBasis& g,
                                         const Tolerance& tol = {}) {
  const SubalgebraRep pp = polar(p, g, tol), qp = polar(q, g, tol), g0 = intersect(p, q, tol);
  struct Cond {
    FMatrix x;
    double eig;
  };
  std::vector<Cond> conds;
  for (Index i = 0; i < pp.dim(); ++i) conds.push_back({pp.element(i), 1.0});
  for (Index i = 0; i < g0.dim(); ++i) conds.push_back({g0.element(i), 0.0});
  for (Index i = 0; i < qp.dim(); ++i) conds.push_back({qp.element(i), -1.0});
  const Index d = g.dim();
  RMat a(d * static_cast<Index>(conds.size()), d);
  RVec b(a.rows());
  for (size_t c = 0; c < conds.size(); ++c) {
    const Index row = static_cast<Index>(c) * d;
    for (Index j = 0; j < d; ++j) a.block(row, j, d, 1) = g.coordinates_of(commutator(g.element(j), conds[c].x));
    b.segment(row, d) = conds[c].eig * g.coordinates_of(conds[c].x);
  }
  const RVec coeff = a.colPivHouseholderQr().solve(b);
  const double resid = (a * coeff - b).norm();
  if (resid > tol.eq_abs) throw InconsistencyError("characteristic element system is inconsistent");
  return {g.tag(), g.combine(coeff)};
}

/// Terminating exponential series of a nilpotent matrix.
inline FMatrix exp_nilpotent(const FMatrix& y, const Tolerance& tol = {}) {
  if (y.rows() != y.cols()) throw DomainError("exp_nilpotent expects a square matrix");
  const Index n = y.rows();
  const double s = std::max(1.0, y.norm());
  FMatrix sum = FMatrix::identity(y.field(), n);
  FMatrix power = FMatrix::identity(y.field(), n);
  double fact = 1;
  for (Index k = 1; k <= n; ++k) {
    power = power * y;
    if (power.norm() <= tol.eq_abs * std::pow(s, static_cast<double>(k))) return sum;
    fact *= static_cast<double>(k);
    sum = sum + (1.0 / fact) * power;
  }
  throw DomainError("matrix is not nilpotent");
}

inline FMatrix exp_nilpotent(const LieElement& y, const Tolerance& tol = {}) { return exp_nilpotent(y.matrix, tol); }

/// Adjoint action g X g^{-1} on a subspace of g.
inline SubalgebraRep adjoint_action(const FMatrix& grp, const SubalgebraRep& p, const Tolerance& tol = {}) {
  const FMatrix inv = grp.inverse();
  std::vector<FMatrix> out;
  for (Index i = 0; i < p.dim(); ++i) out.push_back(grp * p.element(i) * inv);
  return span_of(p.tag(), out, tol);
}

/// Infinitesimal stabilizer {X in g : X W within span W} of the F-subspace
/// spanned by the columns of w.
inline SubalgebraRep stabilizer(const AlgebraBasis& g, const FMatrix& w, const Tolerance& tol = {}) {
  const CMat q = complex_span_basis(w, tol);
  const CMat wr = w.realization();
  const Index n = q.rows();
  const CMat proj = CMat::Identity(n, n) - q * q.adjoint();
  RMat m(2 * proj.rows() * wr.cols(), g.dim());
  for (Index j = 0; j < g.dim(); ++j) {
    const CMat r = proj * (g.element(j).realization() * wr);
    const Eigen::Map<const CVec> flat(r.data(), r.size());
    m.col(j) << flat.real(), flat.imag();
  }
  const RMat coeff = detail::real_kernel(m, tol);
  return {g.tag(), g.coords() * coeff};
}

/// Circle t -> exp(ty) P, inf -> Q, in a model whose points are F-subspaces
/// stabilized by g.
class LieCircle {
 public:
  LieCircle(const AlgebraBasis& g, const LieElement& y, const FMatrix& p_point, const FMatrix& q_point,
            const Tolerance& tol = {})
      : y_(y), p_(p_point), q_(q_point), tol_(tol) {
    const SubalgebraRep q = stabilizer(g, q_point, tol);
    const SubalgebraRep qp = polar(q, g, tol);
    if (qp.residual(y.matrix) > tol.eq_abs * detail::scale_of(y.matrix))
      throw PreconditionError("y is not in the polar of q");
    if (!is_prevalent(y, q, g, tol)) throw DomainError("y is not prevalent; the curve is not a circle");
  }

  FMatrix operator()(const ProjParam& t) const {
    if (t.is_infinite()) return q_;
    return exp_nilpotent(t.value() * y_.matrix, tol_) * p_;
  }

 private:
  LieElement y_;
  FMatrix p_, q_;
  Tolerance tol_;
};

inline FMatrix circle_eval(const AlgebraBasis& g, const LieElement& y, const FMatrix& p_point,
                           const FMatrix& q_point, const ProjParam& t, const Tolerance& tol = {}) {
  return LieCircle(g, y, p_point, q_point, tol)(t);
}

}  // namespace rspace
