#pragma once

#include <Eigen/Dense>

#include <random>
#include <string>

#include "rspace/scalars.hpp"

namespace rspace {

using Eigen::Index;
using CMat = Eigen::MatrixXcd;
using RMat = Eigen::MatrixXd;
using CVec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;

/// Dense matrix over R, C or H.
///
/// Entries are stored through the Cayley-Dickson split M = A + B j with A, B
/// complex (B is identically zero unless the field is H; A is real when the
/// field is R). Quaternionic matrices act on column vectors from the left and
/// scalars act on coordinates from the right, so j A = conj(A) j gives
///
///   (A1 + B1 j)(A2 + B2 j) = (A1 A2 - B1 conj(B2)) + (A1 B2 + B1 conj(A2)) j.
///
/// The complex realization of a quaternionic matrix is the 2r x 2c adjoint
/// embedding [[A, B], [-conj(B), conj(A)]]; it is an injective real-algebra
/// homomorphism compatible with conjugate transposition.
class FMatrix {
 public:
  FMatrix() = default;

  static FMatrix zero(Field f, Index rows, Index cols) {
    FMatrix m;
    m.field_ = f;
    m.a_ = CMat::Zero(rows, cols);
    m.b_ = CMat::Zero(rows, cols);
    return m;
  }
  static FMatrix identity(Field f, Index n) {
    FMatrix m = zero(f, n, n);
    m.a_.setIdentity();
    return m;
  }
  static FMatrix real(const RMat& r) {
    FMatrix m = zero(Field::R, r.rows(), r.cols());
    m.a_ = r.cast<cd>();
    return m;
  }
  static FMatrix complex(const CMat& c) {
    FMatrix m = zero(Field::C, c.rows(), c.cols());
    m.a_ = c;
    return m;
  }
  /// Quaternionic matrix A + B j.
  static FMatrix quaternion(const CMat& a, const CMat& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw DomainError("quaternion parts differ in shape");
    FMatrix m;
    m.field_ = Field::H;
    m.a_ = a;
    m.b_ = b;
    return m;
  }
  /// Builds a matrix of the given field from complex parts, discarding the
  /// components the field does not have.
  static FMatrix from_parts(Field f, const CMat& a, const CMat& b) {
    FMatrix m = zero(f, a.rows(), a.cols());
    switch (f) {
      case Field::R: m.a_ = a.real().cast<cd>(); break;
      case Field::C: m.a_ = a; break;
      case Field::H: m.a_ = a; m.b_ = b; break;
    }
    return m;
  }
  /// Inverse of realization() for a matrix of the given field. For H the
  /// input is projected onto the embedded structure.
  static FMatrix from_realization(Field f, const CMat& r) {
    if (f != Field::H) return from_parts(f, r, CMat::Zero(r.rows(), r.cols()));
    if (r.rows() % 2 || r.cols() % 2) throw DomainError("quaternionic realization must have even shape");
    const Index rr = r.rows() / 2, cc = r.cols() / 2;
    CMat a = 0.5 * (r.topLeftCorner(rr, cc) + r.bottomRightCorner(rr, cc).conjugate());
    CMat b = 0.5 * (r.topRightCorner(rr, cc) - r.bottomLeftCorner(rr, cc).conjugate());
    return quaternion(a, b);
  }

  Field field() const { return field_; }
  Index rows() const { return a_.rows(); }
  Index cols() const { return a_.cols(); }
  const CMat& part_a() const { return a_; }
  const CMat& part_b() const { return b_; }

  /// Complex matrix of the same left action: itself for R and C, the 2r x 2c
  /// adjoint embedding for H.
  CMat realization() const {
    if (field_ != Field::H) return a_;
    CMat r(2 * rows(), 2 * cols());
    r << a_, b_, -b_.conjugate(), a_.conjugate();
    return r;
  }

  DivisionScalar operator()(Index i, Index j) const {
    return DivisionScalar::from_parts(field_, a_(i, j), b_(i, j));
  }
  void set(Index i, Index j, const DivisionScalar& s) {
    a_(i, j) = field_ == Field::R ? cd(s.w, 0) : s.a();
    b_(i, j) = field_ == Field::H ? s.b() : cd(0);
  }

  FMatrix block(Index i, Index j, Index r, Index c) const {
    return from_parts(field_, a_.block(i, j, r, c), b_.block(i, j, r, c));
  }
  FMatrix col(Index j) const { return block(0, j, rows(), 1); }
  FMatrix middle_cols(Index j, Index n) const { return block(0, j, rows(), n); }
  void set_block(Index i, Index j, const FMatrix& m) {
    a_.block(i, j, m.rows(), m.cols()) = m.a_;
    b_.block(i, j, m.rows(), m.cols()) = m.b_;
  }

  static FMatrix hstack(const FMatrix& l, const FMatrix& r) {
    if (l.rows() != r.rows()) throw DomainError("hstack: row mismatch");
    const Field f = DivisionScalar::wider(l.field_, r.field_);
    CMat a(l.rows(), l.cols() + r.cols()), b(l.rows(), l.cols() + r.cols());
    a << l.a_, r.a_;
    b << l.b_, r.b_;
    return from_parts(f, a, b);
  }
  static FMatrix vstack(const FMatrix& t, const FMatrix& d) {
    if (t.cols() != d.cols()) throw DomainError("vstack: column mismatch");
    const Field f = DivisionScalar::wider(t.field_, d.field_);
    CMat a(t.rows() + d.rows(), t.cols()), b(t.rows() + d.rows(), t.cols());
    a << t.a_, d.a_;
    b << t.b_, d.b_;
    return from_parts(f, a, b);
  }

  /// Conjugate transpose (quaternionic conjugation for H).
  FMatrix adjoint() const {
    if (field_ != Field::H) return from_parts(field_, a_.adjoint(), b_);
    // (A + B j)^* = A^* - B^T j
    return quaternion(a_.adjoint(), -b_.transpose());
  }
  FMatrix transpose() const {
    if (field_ == Field::H) throw DomainError("plain transpose is not defined over H");
    return from_parts(field_, a_.transpose(), b_.transpose());
  }
  /// Entrywise conjugation. Antilinear maps do not exist over H.
  FMatrix conjugate() const {
    if (field_ == Field::H) throw DomainError("entrywise conjugation is not defined over H");
    return from_parts(field_, a_.conjugate(), b_);
  }

  friend FMatrix operator+(const FMatrix& l, const FMatrix& r) {
    check_same_shape(l, r);
    return from_parts(DivisionScalar::wider(l.field_, r.field_), l.a_ + r.a_, l.b_ + r.b_);
  }
  friend FMatrix operator-(const FMatrix& l, const FMatrix& r) {
    check_same_shape(l, r);
    return from_parts(DivisionScalar::wider(l.field_, r.field_), l.a_ - r.a_, l.b_ - r.b_);
  }
  FMatrix operator-() const { return from_parts(field_, -a_, -b_); }
  friend FMatrix operator*(const FMatrix& l, const FMatrix& r) {
    if (l.cols() != r.rows()) throw DomainError("product: inner dimension mismatch");
    const Field f = DivisionScalar::wider(l.field_, r.field_);
    if (f != Field::H) return from_parts(f, l.a_ * r.a_, CMat::Zero(l.rows(), r.cols()));
    return quaternion(l.a_ * r.a_ - l.b_ * r.b_.conjugate(), l.a_ * r.b_ + l.b_ * r.a_.conjugate());
  }
  friend FMatrix operator*(double s, const FMatrix& m) { return from_parts(m.field_, s * m.a_, s * m.b_); }
  friend FMatrix operator*(const FMatrix& m, double s) { return s * m; }

  /// Right multiplication of every entry by the scalar q (the right module
  /// action on columns).
  FMatrix right_scale(const DivisionScalar& q) const {
    FMatrix qm = zero(DivisionScalar::wider(field_, q.field), 1, 1);
    qm.set(0, 0, q);
    FMatrix out = zero(qm.field_, rows(), cols());
    for (Index j = 0; j < cols(); ++j) out.set_block(0, j, col(j) * qm);
    return out;
  }
  /// Left multiplication of every entry by the scalar q.
  FMatrix left_scale(const DivisionScalar& q) const {
    FMatrix qm = zero(DivisionScalar::wider(field_, q.field), 1, 1);
    qm.set(0, 0, q);
    FMatrix out = zero(qm.field_, rows(), cols());
    for (Index i = 0; i < rows(); ++i) out.set_block(i, 0, qm * block(i, 0, 1, cols()));
    return out;
  }

  /// Frobenius norm over F (sum of squared moduli of the entries).
  double norm() const { return std::sqrt(a_.squaredNorm() + b_.squaredNorm()); }

  FMatrix inverse() const {
    if (rows() != cols()) throw DomainError("inverse of a non-square matrix");
    Eigen::PartialPivLU<CMat> lu(realization());
    return from_realization(field_, lu.inverse());
  }

  /// Real part of the trace of the realization.
  double real_trace() const {
    const double t = a_.trace().real();
    return field_ == Field::H ? 2 * t : t;
  }

  FMatrix with_field(Field f) const {
    if (static_cast<int>(f) < static_cast<int>(field_)) throw DomainError("cannot narrow field");
    return from_parts(f, a_, b_);
  }

 private:
  static void check_same_shape(const FMatrix& l, const FMatrix& r) {
    if (l.rows() != r.rows() || l.cols() != r.cols()) throw DomainError("shape mismatch");
  }

  Field field_ = Field::R;
  CMat a_;
  CMat b_;
};

/// Standard complex adjoint embedding of a quaternionic matrix.
inline FMatrix quaternion_complex_embed(const FMatrix& m) {
  if (m.field() != Field::H) throw DomainError("quaternion_complex_embed expects a matrix over H");
  return FMatrix::complex(m.realization());
}

/// 1 x 1 matrix holding a scalar.
inline FMatrix scalar_matrix(const DivisionScalar& s) {
  FMatrix m = FMatrix::zero(s.field, 1, 1);
  m.set(0, 0, s);
  return m;
}

/// Matrix with independent standard-normal real components.
template <class Rng>
FMatrix random_fmatrix(Field f, Index rows, Index cols, Rng& rng) {
  std::normal_distribution<double> nd(0.0, 1.0);
  CMat a(rows, cols), b(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) {
      double w = nd(rng), x = f == Field::R ? 0.0 : nd(rng);
      double y = f == Field::H ? nd(rng) : 0.0, z = f == Field::H ? nd(rng) : 0.0;
      a(i, j) = cd(w, x);
      b(i, j) = cd(y, z);
    }
  return FMatrix::from_parts(f, a, b);
}

}  // namespace rspace
