#pragma once

#include <string>

#include "rspace/lie.hpp"

namespace rspace {

/// sigma(X)^T: the adjoint when sigma is conjugation, the transpose otherwise.
inline FMatrix sigma_transpose(const FMatrix& x, bool conj) { return conj ? x.adjoint() : x.transpose(); }

/// Real-linear conditions on gl(size, F) cut out an algebra. The condition
/// returns a real vector that vanishes exactly on the algebra.
template <class Condition>
AlgebraBasis algebra_from_conditions(AlgebraTag tag, Condition&& cond, const Tolerance& tol = {}) {
  const Index n = tag.size;
  const Index d = field_degree(tag.field) * n * n;
  RMat m;
  for (Index k = 0; k < d; ++k) {
    RVec e = RVec::Zero(d);
    e(k) = 1;
    const RVec c = cond(from_real_coordinates(tag.field, n, n, e));
    if (k == 0) m.resize(c.size(), d);
    m.col(k) = c;
  }
  const RMat ker = detail::real_kernel(m, tol);
  return AlgebraBasis(std::move(tag), ker, tol);
}

namespace detail {

inline RVec trace_condition(const FMatrix& x) {
  const cd t = x.part_a().trace();
  if (x.field() == Field::C) {
    RVec v(2);
    v << t.real(), t.imag();
    return v;
  }
  RVec v(1);
  v << t.real();  // over H only the real part of the trace is invariant
  return v;
}

}  // namespace detail

/// sl(m, F): trace-free matrices (real-trace-free over H).
inline AlgebraBasis sl_algebra(Field f, Index m, const Tolerance& tol = {}) {
  AlgebraTag tag{"sl(" + std::to_string(m) + "," + field_name(f) + ")", f, m};
  return algebra_from_conditions(tag, [](const FMatrix& x) { return detail::trace_condition(x); }, tol);
}

/// Algebra of a nondegenerate form x -> sigma(x)^T G y:
/// {X : sigma(X)^T G + G X = 0}, optionally intersected with sl.
inline AlgebraBasis form_algebra(const std::string& name, const FMatrix& gram, bool conj, bool traceless,
                                 const Tolerance& tol = {}) {
  AlgebraTag tag{name, gram.field(), gram.rows()};
  return algebra_from_conditions(
      tag,
      [&](const FMatrix& x) {
        RVec c = real_coordinates(sigma_transpose(x, conj) * gram + gram * x);
        if (!traceless) return c;
        RVec t = detail::trace_condition(x);
        RVec out(c.size() + t.size());
        out << c, t;
        return out;
      },
      tol);
}

/// so(N, C) regarded as a real Lie algebra of dimension N(N-1).
inline AlgebraBasis so_complex_algebra(Index n, const Tolerance& tol = {}) {
  return form_algebra("so(" + std::to_string(n) + ",C)", FMatrix::identity(Field::C, n), false, false, tol);
}

/// so(1, n+1) for the form diag(-1, 1, ..., 1).
inline AlgebraBasis lorentz_algebra(Index n, const Tolerance& tol = {}) {
  RMat eta = RMat::Identity(n + 2, n + 2);
  eta(0, 0) = -1;
  return form_algebra("so(1," + std::to_string(n + 1) + ")", FMatrix::real(eta), false, false, tol);
}

}  // namespace rspace
