#pragma once

#include <string>

#include "rspace/isotropic.hpp"

namespace rspace {

/// Compact classical groups embedded as graphs: SO_{2m} (real), U_n
/// (complex), Sp_n (quaternionic).
enum class ClassicalGroup { SO, U, Sp };

inline Field classical_field(ClassicalGroup g) {
  return g == ClassicalGroup::SO ? Field::R : (g == ClassicalGroup::U ? Field::C : Field::H);
}

inline std::string classical_name(ClassicalGroup g) {
  return g == ClassicalGroup::SO ? "SO" : (g == ClassicalGroup::U ? "U" : "Sp");
}

inline ClassicalGroup parse_classical(const std::string& s) {
  if (s == "SO") return ClassicalGroup::SO;
  if (s == "U") return ClassicalGroup::U;
  if (s == "Sp") return ClassicalGroup::Sp;
  throw DomainError("unknown classical group '" + s + "'");
}

inline FMatrix classical_element(ClassicalGroup g, const FMatrix& a, const Tolerance& tol = {}) {
  if (a.field() != classical_field(g) || a.rows() != a.cols()) throw DomainError("matrix does not match the group");
  const Index n = a.rows();
  if ((a.adjoint() * a - FMatrix::identity(a.field(), n)).norm() > tol.eq_abs)
    throw DomainError("matrix is not unitary for the standard form");
  if (g == ClassicalGroup::SO) {
    if (n % 2) throw DomainError("SO_{2m} needs even size");
    if (a.part_a().real().determinant() < 0) throw DomainError("determinant is not 1");
  }
  return a;
}

/// graph(A) = {(x, Ax)}, isotropic for x^H x' - y^H y'.
inline FMatrix graph_embed(ClassicalGroup g, const FMatrix& a, const Tolerance& tol = {}) {
  classical_element(g, a, tol);
  const FMatrix gr = FMatrix::vstack(FMatrix::identity(a.field(), a.rows()), a);
  if (isotropy_residual(gr, graph_form(a.field(), a.rows())) > tol.eq_abs)
    throw DomainError("graph is not isotropic");
  return gr;
}

/// Inverse of graph_embed on the chart of subspaces transverse to 0 x F^n.
inline FMatrix graph_chart(const FMatrix& subspace, const Tolerance& tol = {}) {
  const Index n = subspace.cols();
  const FMatrix top = subspace.block(0, 0, n, n);
  if (rank_kernel(top, tol).rank != n) throw DomainError("subspace is at infinity of the graph chart");
  return subspace.block(n, 0, n, n) * top.inverse();
}

/// Action of a block matrix [[a, c], [b, d]] preserving the graph form:
/// (x, Ax) -> (ax + cAx, bx + dAx), i.e. B = (b + dA)(a + cA)^{-1}.
inline FMatrix birational_act(const FMatrix& big, ClassicalGroup g, const FMatrix& a, const Tolerance& tol = {}) {
  const Index n = a.rows();
  const SplitForm f = graph_form(a.field(), n);
  if (big.rows() != 2 * n || big.cols() != 2 * n) throw DomainError("block matrix has the wrong size");
  const double scale = std::max(1.0, big.norm() * big.norm());
  if ((big.adjoint() * f.gram * big - f.gram).norm() > tol.eq_abs * scale)
    throw DomainError("block matrix does not preserve the form");
  const FMatrix ba = big.block(0, 0, n, n), bc = big.block(0, n, n, n);
  const FMatrix bb = big.block(n, 0, n, n), bd = big.block(n, n, n, n);
  const FMatrix den = ba + bc * a;
  if (rank_kernel(den, tol).rank != n) throw DomainError("image leaves the graph chart (point at infinity)");
  Tolerance loose = tol;
  loose.eq_abs = tol.eq_abs * scale;
  return classical_element(g, (bb + bd * a) * den.inverse(), loose);
}

/// Diagonal one-parameter subgroup at angle t: rotations R_t on consecutive
/// coordinate pairs for SO, e^{it} I otherwise.
inline FMatrix classical_diagonal(ClassicalGroup g, Index size, double t) {
  const Field f = classical_field(g);
  if (g == ClassicalGroup::SO) {
    if (size % 2) throw DomainError("SO_{2m} needs even size");
    RMat r = RMat::Zero(size, size);
    for (Index k = 0; k < size; k += 2) r.block(k, k, 2, 2) << std::cos(t), -std::sin(t), std::sin(t), std::cos(t);
    return FMatrix::real(r);
  }
  const DivisionScalar e{f, std::cos(t), std::sin(t), 0, 0};
  return FMatrix::identity(f, size).right_scale(e);
}

/// Period-1 curve of graphs s -> graph(diagonal(2 pi s)).
class ClassicalGeodesic {
 public:
  ClassicalGeodesic(ClassicalGroup g, Index size) : g_(g), size_(size) {}
  FMatrix element(double s) const { return classical_diagonal(g_, size_, 2 * M_PI * s); }
  FMatrix operator()(double s) const {
    return FMatrix::vstack(FMatrix::identity(classical_field(g_), size_), element(s));
  }

 private:
  ClassicalGroup g_;
  Index size_;
};

}  // namespace rspace
