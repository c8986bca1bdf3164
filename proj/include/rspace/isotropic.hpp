#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "rspace/algebras.hpp"
#include "rspace/grassmann.hpp"

namespace rspace {

/// The seven split (sigma, eps)-form families.
enum class FormFamily { CSymmetric, RSymplectic, CSymplectic, RHermitian, CHermitian, HHermitian, HSkewHermitian };

inline const std::vector<FormFamily>& all_form_families() {
  static const std::vector<FormFamily> v{FormFamily::CSymmetric, FormFamily::RSymplectic,  FormFamily::CSymplectic,
                                         FormFamily::RHermitian, FormFamily::CHermitian,   FormFamily::HHermitian,
                                         FormFamily::HSkewHermitian};
  return v;
}

inline std::string family_name(FormFamily f) {
  switch (f) {
    case FormFamily::CSymmetric: return "C-symmetric";
    case FormFamily::RSymplectic: return "R-symplectic";
    case FormFamily::CSymplectic: return "C-symplectic";
    case FormFamily::RHermitian: return "R-hermitian";
    case FormFamily::CHermitian: return "C-hermitian";
    case FormFamily::HHermitian: return "H-hermitian";
    case FormFamily::HSkewHermitian: return "H-skew-hermitian";
  }
  return "?";
}

inline FormFamily parse_family(const std::string& s) {
  for (FormFamily f : all_form_families())
    if (family_name(f) == s) return f;
  throw DomainError("unknown form family '" + s + "'");
}

/// f(x, y) = sigma(x)^T G y on F^{2n}, with f(y, x) = eps sigma f(x, y).
struct SplitForm {
  FormFamily family;
  Field field;
  bool conj;  // sigma is conjugation
  int eps;
  Index n;
  FMatrix gram;

  /// Matrix of f between the columns of x and y.
  FMatrix pair(const FMatrix& x, const FMatrix& y) const { return sigma_transpose(x, conj) * gram * y; }

  /// J is conjugate-linear exactly when sigma is the identity on C.
  bool antilinear_j() const { return !conj && field == Field::C; }

  /// eps = +1 with sigma = id: h is skew and needs a symplectic basis.
  bool symplectic_branch() const { return family == FormFamily::CSymmetric || family == FormFamily::RHermitian; }

  bool self_dual() const { return !(symplectic_branch() && n % 2 == 1); }

  AlgebraBasis algebra(const Tolerance& tol = {}) const {
    return form_algebra("u(" + family_name(family) + "," + std::to_string(2 * n) + ")", gram, conj,
                        family == FormFamily::CHermitian, tol);
  }
};

namespace detail {

struct FamilyData {
  Field field;
  bool conj;
  int eps;
};

inline FamilyData family_data(FormFamily f) {
  switch (f) {
    case FormFamily::CSymmetric: return {Field::C, false, +1};
    case FormFamily::RSymplectic: return {Field::R, false, -1};
    case FormFamily::CSymplectic: return {Field::C, false, -1};
    case FormFamily::RHermitian: return {Field::R, true, +1};
    case FormFamily::CHermitian: return {Field::C, true, +1};
    case FormFamily::HHermitian: return {Field::H, true, +1};
    case FormFamily::HSkewHermitian: return {Field::H, true, -1};
  }
  throw DomainError("unknown form family");
}

}  // namespace detail

/// The standard model: Gram [[0, I], [eps I, 0]], so F^n x 0 and 0 x F^n are
/// isotropic.
inline SplitForm standard_form(FormFamily family, Index n) {
  if (n < 1) throw DomainError("form size must be positive");
  const auto d = detail::family_data(family);
  FMatrix g = FMatrix::zero(d.field, 2 * n, 2 * n);
  g.set_block(0, n, FMatrix::identity(d.field, n));
  g.set_block(n, 0, static_cast<double>(d.eps) * FMatrix::identity(d.field, n));
  return {family, d.field, d.conj, d.eps, n, g};
}

/// Hermitian form x^H x' - y^H y' on F^{2n}: graphs of unitary maps are
/// isotropic for it.
inline SplitForm graph_form(Field field, Index n) {
  const FormFamily fam =
      field == Field::R ? FormFamily::RHermitian : (field == Field::C ? FormFamily::CHermitian : FormFamily::HHermitian);
  FMatrix g = FMatrix::zero(field, 2 * n, 2 * n);
  g.set_block(0, 0, FMatrix::identity(field, n));
  g.set_block(n, n, -FMatrix::identity(field, n));
  return {fam, field, true, +1, n, g};
}

inline FMatrix coordinate_half(const SplitForm& f, bool second) {
  FMatrix m = FMatrix::zero(f.field, 2 * f.n, f.n);
  m.set_block(second ? f.n : 0, 0, FMatrix::identity(f.field, f.n));
  return m;
}

/// max |f(x, y)| over an orthonormal basis of the span.
inline double isotropy_residual(const FMatrix& basis, const SplitForm& f) {
  const FMatrix q = orthonormal_basis(basis);
  return f.pair(q, q).norm();
}

inline FMatrix isotropic_subspace(const FMatrix& basis, const SplitForm& f, const Tolerance& tol = {}) {
  if (basis.field() != f.field || basis.rows() != 2 * f.n) throw DomainError("subspace does not match the form");
  subspace_point(basis, tol);
  if (isotropy_residual(basis, f) > tol.eq_abs) throw DomainError("subspace is not isotropic");
  return basis;
}

/// Basis v of Q with f(u_i, v_j) = delta_ij.
inline FMatrix dual_basis(const FMatrix& b, const FMatrix& q, const SplitForm& f, const Tolerance& tol = {}) {
  const FMatrix m = f.pair(b, q);
  if (rank_kernel(m, tol).rank != m.cols()) throw PreconditionError("pairing between P and Q is degenerate");
  return q * m.inverse();
}

/// sigma-bar-linear J stored as a matrix: x -> Jm x, or x -> Jm conj(x) when
/// antilinear.
struct CompatibleJ {
  FMatrix jm;
  bool antilinear = false;
  SplitForm form;

  FMatrix apply(const FMatrix& x) const { return antilinear ? jm * x.conjugate() : jm * x; }
  /// D(x, y) = f(Jx, y) = x^H Dm y.
  FMatrix d_matrix() const { return sigma_transpose(jm, form.conj) * form.gram; }
  /// S commutes with J.
  double commutator_residual(const FMatrix& s) const {
    return antilinear ? (jm * s.conjugate() - s * jm).norm() : (jm * s - s * jm).norm();
  }
};

namespace detail {

// Signs of the eigenvalues of a Hermitian realization: +1 / -1 if definite, 0 otherwise.
inline int definiteness(const FMatrix& herm, double tol) {
  Eigen::SelfAdjointEigenSolver<CMat> es(herm.realization());
  const RVec ev = es.eigenvalues();
  if (ev.minCoeff() > tol) return +1;
  if (ev.maxCoeff() < -tol) return -1;
  return 0;
}

}  // namespace detail

/// J u_i = v_i, J v_i = eps u_i, extended sigma-bar-linearly; checks
/// J^2 = eps, f(Jx, Jy) = sigma-bar f(x, y) and definiteness of D.
inline CompatibleJ build_J(const FMatrix& b, const FMatrix& bp, const SplitForm& f, const Tolerance& tol = {}) {
  const FMatrix bf = FMatrix::hstack(b, bp), bj = FMatrix::hstack(bp, static_cast<double>(f.eps) * b);
  CompatibleJ j;
  j.antilinear = f.antilinear_j();
  j.form = f;
  j.jm = j.antilinear ? bj * bf.conjugate().inverse() : bj * bf.inverse();
  const Index m = 2 * f.n;
  const double scale = std::max(1.0, j.jm.norm() * j.jm.norm());
  const FMatrix sq = j.antilinear ? j.jm * j.jm.conjugate() : j.jm * j.jm;
  if ((sq - static_cast<double>(f.eps) * FMatrix::identity(f.field, m)).norm() > tol.eq_abs * scale)
    throw InconsistencyError("J^2 != eps id");
  const FMatrix lhs = sigma_transpose(j.jm, f.conj) * f.gram * j.jm;
  const FMatrix rhs = j.antilinear ? f.gram.conjugate() : f.gram;
  if ((lhs - rhs).norm() > tol.eq_abs * scale) throw InconsistencyError("J does not preserve f");
  const FMatrix dm = j.d_matrix();
  if ((dm - dm.adjoint()).norm() > tol.eq_abs * scale) throw InconsistencyError("D is not Hermitian");
  if (detail::definiteness(dm, tol.eq_abs) != f.eps) throw InconsistencyError("D is not definite with sign eps");
  const FMatrix du = b.adjoint() * dm * b;
  if ((du - static_cast<double>(f.eps) * FMatrix::identity(f.field, f.n)).norm() > tol.eq_abs * scale)
    throw InconsistencyError("D(u_i, u_j) != eps delta_ij");
  return j;
}

inline void require_self_dual(const SplitForm& f) {
  if (!f.self_dual())
    throw DomainError(family_name(f.family) + " with n odd is not self-dual; circles are not defined");
}

/// Circle through three pairwise complementary isotropic subspaces.
class IsotropicCircle {
 public:
  IsotropicCircle(const FMatrix& p, const FMatrix& p1, const FMatrix& q, SplitForm f, const Tolerance& tol = {})
      : form_(std::move(f)) {
    require_self_dual(form_);
    isotropic_subspace(p, form_, tol);
    isotropic_subspace(p1, form_, tol);
    isotropic_subspace(q, form_, tol);
    require_pairwise_opposite_gr(p, p1, q, tol);
    iso_ = connecting_iso(p, p1, q, tol);
    const double scale = std::max(1.0, iso_.tm.norm()) * std::max(1.0, p.norm()) * std::max(1.0, q.norm());
    if (tskew_residual() > tol.eq_abs * scale) throw InconsistencyError("T is not f-skew");
  }

  FMatrix operator()(const ProjParam& t) const {
    if (t.is_infinite()) return iso_.q;
    return iso_.p + t.value() * iso_.image_basis();
  }

  /// max |f(Tx, y) + f(x, Ty)| over the stored basis of P.
  double tskew_residual() const {
    const FMatrix tu = iso_.image_basis();
    return (form_.pair(tu, iso_.p) + form_.pair(iso_.p, tu)).norm();
  }

  /// Matrix of h(x, y) = f(x, Ty) in the stored basis of P.
  FMatrix h_matrix() const { return form_.pair(iso_.p, iso_.image_basis()); }

  const ConnectingIso& iso() const { return iso_; }
  const SplitForm& form() const { return form_; }

 private:
  SplitForm form_;
  ConnectingIso iso_;
};

struct AdaptedBasis {
  FMatrix basis;                       // u_1..u_n spanning P
  FMatrix dual;                        // v_1..v_n spanning Q, f(u_i, v_j) = delta_ij
  std::vector<DivisionScalar> diag;    // h(u_i, u_i) in the diagonal branch
  CompatibleJ j;
  FMatrix s;                           // S|_P = T, S|_Q = -T^{-1}
};

namespace detail {

inline DivisionScalar entry(const FMatrix& m) { return m(0, 0); }

// Scalar sqrt used to normalize h(u, u) = lambda to a unit value.
inline DivisionScalar normalizer(const DivisionScalar& lambda, const SplitForm& f) {
  if (!f.conj && f.field == Field::C) {
    const cd r = 1.0 / std::sqrt(lambda.a());
    return DivisionScalar::from_parts(Field::C, r, 0);
  }
  DivisionScalar s{f.field, 1.0 / std::sqrt(lambda.abs()), 0, 0, 0};
  return s;
}

// Congruence normal form of h with h(u_i, u_j) = delta_ij d_i, |d_i| = 1.
inline std::vector<FMatrix> diagonalize_h(const FMatrix& hm, const SplitForm& f, std::vector<DivisionScalar>& d,
                                          double tol) {
  const Index n = hm.rows();
  auto h = [&](const FMatrix& a, const FMatrix& b) { return entry(sigma_transpose(a, f.conj) * hm * b); };
  std::vector<FMatrix> rest;
  for (Index i = 0; i < n; ++i) rest.push_back(FMatrix::identity(f.field, n).col(i));
  std::vector<FMatrix> out;
  const double scale = std::max(1e-300, hm.norm());
  while (!rest.empty()) {
    size_t best = 0;
    double best_val = -1;
    for (size_t k = 0; k < rest.size(); ++k) {
      const double v = h(rest[k], rest[k]).abs() / std::pow(rest[k].norm(), 2);
      if (v > best_val) best_val = v, best = k;
    }
    FMatrix u = rest[best];
    size_t bi = 0, bj = 0;
    double bv = -1;
    for (size_t a = 0; a < rest.size(); ++a)
      for (size_t b = a + 1; b < rest.size(); ++b) {
        const double v = h(rest[a], rest[b]).abs() / (rest[a].norm() * rest[b].norm());
        if (v > bv) bv = v, bi = a, bj = b;
      }
    if (std::max(best_val, bv) <= tol * scale) throw InconsistencyError("h is degenerate; T is singular");
    if (best_val < 0.25 * bv) {
      // no good diagonal pivot: combine the pair with the largest coupling
      const DivisionScalar hxy = h(rest[bi], rest[bj]);
      DivisionScalar c = hxy.conj();
      if (f.eps == +1) c = c * DivisionScalar{f.field, 0, 1, 0, 0};
      u = rest[bi] + rest[bj].right_scale(c);
      best = bi;
    }
    u = u.right_scale(normalizer(h(u, u), f));
    const DivisionScalar du = h(u, u);
    const DivisionScalar dinv = du.inverse();
    rest.erase(rest.begin() + static_cast<long>(best));
    for (auto& w : rest) w = w - u.right_scale(dinv * h(u, w));
    out.push_back(u);
    d.push_back(du);
  }
  // positive real values first
  std::vector<size_t> order(out.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) { return d[a].w > 0 && !(d[b].w > 0); });
  std::vector<FMatrix> o2;
  std::vector<DivisionScalar> d2;
  for (size_t i : order) o2.push_back(out[i]), d2.push_back(d[i]);
  d = d2;
  return o2;
}

// Skew h (sigma = id, eps = +1): pairs (x_i, y_i) with h(x_i, y_i) = 1.
inline std::vector<FMatrix> symplectic_h(const FMatrix& hm, const SplitForm& f, double tol) {
  const Index n = hm.rows();
  if (n % 2) throw DomainError("the skew case needs n even");
  auto h = [&](const FMatrix& a, const FMatrix& b) { return entry(a.transpose() * hm * b); };
  std::vector<FMatrix> rest;
  for (Index i = 0; i < n; ++i) rest.push_back(FMatrix::identity(f.field, n).col(i));
  std::vector<FMatrix> xs, ys;
  const double scale = std::max(1e-300, hm.norm());
  while (!rest.empty()) {
    size_t bi = 0, bj = 1;
    double bv = -1;
    for (size_t a = 0; a < rest.size(); ++a)
      for (size_t b = a + 1; b < rest.size(); ++b) {
        const double v = h(rest[a], rest[b]).abs() / (rest[a].norm() * rest[b].norm());
        if (v > bv) bv = v, bi = a, bj = b;
      }
    if (bv <= tol * scale) throw InconsistencyError("h is degenerate; T is singular");
    FMatrix x = rest[bi], y = rest[bj].right_scale(h(rest[bi], rest[bj]).inverse());
    rest.erase(rest.begin() + static_cast<long>(bj));
    rest.erase(rest.begin() + static_cast<long>(bi));
    for (auto& z : rest) z = z + x.right_scale(h(y, z)) - y.right_scale(h(x, z));
    xs.push_back(x);
    ys.push_back(y);
  }
  xs.insert(xs.end(), ys.begin(), ys.end());
  return xs;
}

inline FMatrix columns(const std::vector<FMatrix>& cols) {
  FMatrix m = cols.front();
  for (size_t i = 1; i < cols.size(); ++i) m = FMatrix::hstack(m, cols[i]);
  return m;
}

}  // namespace detail

/// Basis of P adapted to h, its dual basis of Q, J and the generator S.
inline AdaptedBasis adapted_basis_and_S(const IsotropicCircle& c, const Tolerance& tol = {}) {
  const SplitForm& f = c.form();
  const ConnectingIso& iso = c.iso();
  const Index n = f.n;
  const FMatrix hm = c.h_matrix();
  AdaptedBasis out;
  FMatrix coords;
  if (f.symplectic_branch()) {
    coords = detail::columns(detail::symplectic_h(hm, f, tol.rank_rel));
    out.basis = iso.p * coords;
    const FMatrix tu = iso.image_basis() * coords;
    const Index k = n / 2;
    out.dual = FMatrix::hstack(tu.middle_cols(k, k), -tu.middle_cols(0, k));
  } else {
    coords = detail::columns(detail::diagonalize_h(hm, f, out.diag, tol.rank_rel));
    out.basis = iso.p * coords;
    const FMatrix tu = iso.image_basis() * coords;
    out.dual = FMatrix::zero(f.field, 2 * n, n);
    for (Index i = 0; i < n; ++i) out.dual.set_block(0, i, tu.col(i).right_scale(out.diag[i].inverse()));
  }
  const double scale = std::max(1.0, out.basis.norm() * out.dual.norm());
  if ((f.pair(out.basis, out.dual) - FMatrix::identity(f.field, n)).norm() > tol.eq_abs * scale)
    throw InconsistencyError("adapted basis is not dual");
  out.j = build_J(out.basis, out.dual, f, tol);
  const FMatrix tinv = iso.tm.inverse();
  out.s = FMatrix::hstack(iso.image_basis(), -(iso.p * tinv)) * FMatrix::hstack(iso.p, iso.q).inverse();
  const double sscale = std::max(1.0, out.s.norm() * out.s.norm());
  const Index m = 2 * n;
  if ((out.s * out.s + FMatrix::identity(f.field, m)).norm() > tol.eq_abs * sscale)
    throw InconsistencyError("S^2 != -1");
  if ((sigma_transpose(out.s, f.conj) * f.gram + f.gram * out.s).norm() > tol.eq_abs * sscale)
    throw InconsistencyError("S is not f-skew");
  if (out.j.commutator_residual(out.s) > tol.eq_abs * sscale * std::max(1.0, out.j.jm.norm()))
    throw InconsistencyError("S does not commute with J");
  return out;
}

/// gamma(s') = exp(pi s' S) P, with exp(theta S) = cos(theta) + sin(theta) S.
class IsotropicGeodesic {
 public:
  explicit IsotropicGeodesic(const IsotropicCircle& c, const Tolerance& tol = {})
      : adapted_(adapted_basis_and_S(c, tol)), p_(c.iso().p) {}

  FMatrix exp_s(double theta) const {
    return std::cos(theta) * FMatrix::identity(p_.field(), p_.rows()) + std::sin(theta) * adapted_.s;
  }
  FMatrix operator()(double s) const { return exp_s(M_PI * s) * p_; }

  const AdaptedBasis& adapted() const { return adapted_; }

 private:
  AdaptedBasis adapted_;
  FMatrix p_;
};

}  // namespace rspace
