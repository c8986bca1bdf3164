#include <gtest/gtest.h>

#include <random>

#include "rspace/algebras.hpp"

using namespace rspace;

namespace {

// Stabilizer of F^n x 0 in sl(2n, F): block upper-triangular.
FMatrix first_half(Field f, Index n) {
  FMatrix p = FMatrix::zero(f, 2 * n, n);
  p.set_block(0, 0, FMatrix::identity(f, n));
  return p;
}
FMatrix second_half(Field f, Index n) {
  FMatrix q = FMatrix::zero(f, 2 * n, n);
  q.set_block(n, 0, FMatrix::identity(f, n));
  return q;
}

LieElement random_element(const AlgebraBasis& g, std::mt19937_64& rng) {
  std::normal_distribution<double> nd;
  RVec c(g.dim());
  for (Index i = 0; i < g.dim(); ++i) c(i) = nd(rng);
  return {g.tag(), g.combine(c)};
}

}  // namespace

TEST(Algebras, Dimensions) {
  EXPECT_EQ(sl_algebra(Field::R, 3).dim(), 8);
  EXPECT_EQ(sl_algebra(Field::C, 2).dim(), 6);
  EXPECT_EQ(sl_algebra(Field::H, 2).dim(), 15);
  EXPECT_EQ(so_complex_algebra(5).dim(), 20);
  EXPECT_EQ(lorentz_algebra(2).dim(), 6);
}

TEST(Bracket, Examples) {
  const auto g = sl_algebra(Field::R, 2);
  RMat e12 = RMat::Zero(2, 2), e21 = RMat::Zero(2, 2);
  e12(0, 1) = 1;
  e21(1, 0) = 1;
  LieElement x{g.tag(), FMatrix::real(e12)}, y{g.tag(), FMatrix::real(e21)};
  const LieElement h = bracket(x, y);
  EXPECT_NEAR(h.matrix(0, 0).w, 1, 1e-15);
  EXPECT_NEAR(h.matrix(1, 1).w, -1, 1e-15);
  EXPECT_NEAR(bracket(x, x).matrix.norm(), 0, 0);
  EXPECT_NEAR(trace_form(h, h), 2.0, 1e-15);

  LieElement other{sl_algebra(Field::R, 3).tag(), FMatrix::identity(Field::R, 3)};
  EXPECT_THROW(bracket(x, other), DomainError);
}

TEST(Bracket, JacobiAndInvariance) {
  std::mt19937_64 rng(21);
  for (auto g : {sl_algebra(Field::H, 2), so_complex_algebra(4), sl_algebra(Field::C, 3)}) {
    for (int t = 0; t < 20; ++t) {
      auto x = random_element(g, rng), y = random_element(g, rng), z = random_element(g, rng);
      auto jac = bracket(x, bracket(y, z)).matrix + bracket(y, bracket(z, x)).matrix +
                 bracket(z, bracket(x, y)).matrix;
      EXPECT_LT(jac.norm(), 1e-8);
      EXPECT_NEAR(trace_form(bracket(z, x), y) + trace_form(x, bracket(z, y)), 0.0, 1e-8);
      EXPECT_LT(g.membership_residual(bracket(x, y).matrix), 1e-9);
    }
  }
}

TEST(Polar, GrassmannianStabilizer) {
  for (Field f : {Field::R, Field::C, Field::H}) {
    const Index n = 2;
    const auto g = sl_algebra(f, 2 * n);
    const auto p = stabilizer(g, first_half(f, n));
    const auto pp = polar(p, g);
    EXPECT_EQ(pp.dim(), field_degree(f) * n * n);
    EXPECT_EQ(p.dim() + pp.dim(), g.dim());
    // polar = maps vanishing on P with image in P: only the upper-right block
    for (Index k = 0; k < pp.dim(); ++k) {
      const FMatrix x = pp.element(k);
      EXPECT_LT(x.block(0, 0, n, n).norm() + x.block(n, 0, n, 2 * n).norm(), 1e-10);
    }
    EXPECT_TRUE(is_height_one_parabolic(p, g));
    EXPECT_EQ(polar(pp, g).dim(), p.dim());
    EXPECT_EQ(polar(full_subalgebra(g), g).dim(), 0);
  }
}

TEST(Parabolic, CartanSubalgebraIsNot) {
  const auto g = sl_algebra(Field::R, 3);
  std::vector<FMatrix> diag;
  for (int i = 0; i < 2; ++i) {
    RMat d = RMat::Zero(3, 3);
    d(i, i) = 1;
    d(i + 1, i + 1) = -1;
    diag.push_back(FMatrix::real(d));
  }
  EXPECT_FALSE(is_height_one_parabolic(span_of(g.tag(), diag), g));
}

TEST(Opposite, Grassmannian) {
  const auto g = sl_algebra(Field::C, 4);
  const auto p = stabilizer(g, first_half(Field::C, 2)), q = stabilizer(g, second_half(Field::C, 2));
  EXPECT_TRUE(is_opposite(p, q, g));
  EXPECT_FALSE(is_opposite(p, p, g));
}

TEST(Prevalence, GrassmannianInvertibleVsSingular) {
  std::mt19937_64 rng(2);
  for (Field f : {Field::R, Field::C, Field::H}) {
    const Index n = 2;
    const auto g = sl_algebra(f, 2 * n);
    const FMatrix pb = first_half(f, n), qb = second_half(f, n);
    const auto p = stabilizer(g, pb), q = stabilizer(g, qb);
    // y in q-polar: maps vanishing on Q with image in Q, i.e. lower-left block T.
    for (int singular = 0; singular < 2; ++singular) {
      FMatrix t = random_fmatrix(f, n, n, rng);
      if (singular) t = t.col(0) * random_fmatrix(f, 1, n, rng);
      FMatrix ym = FMatrix::zero(f, 2 * n, 2 * n);
      ym.set_block(n, 0, t);
      LieElement y{g.tag(), ym};
      EXPECT_EQ(is_prevalent(y, q, g), !singular) << field_name(f);
      EXPECT_FALSE(is_prevalent(y, p, g)) << field_name(f);
      EXPECT_EQ(prevalent_iso_check(y, p, q, g), !singular) << field_name(f);
    }
    EXPECT_FALSE(is_prevalent(LieElement{g.tag(), FMatrix::zero(f, 2 * n, 2 * n)}, q, g));
    EXPECT_FALSE(is_prevalent(LieElement{g.tag(), FMatrix::zero(f, 2 * n, 2 * n)}, p, g));
    EXPECT_FALSE(prevalent_iso_check(LieElement{g.tag(), FMatrix::zero(f, 2 * n, 2 * n)}, p, q, g));
    FMatrix bad = FMatrix::zero(f, 2 * n, 2 * n);
    bad.set_block(0, n, FMatrix::identity(f, n));
    EXPECT_THROW(prevalent_iso_check(LieElement{g.tag(), bad}, p, q, g), PreconditionError);
  }
}

TEST(CharacteristicElement, GrassmannianHalfIdentity) {
  for (Field f : {Field::R, Field::C, Field::H}) {
    const Index n = 2;
    const auto g = sl_algebra(f, 2 * n);
    const auto p = stabilizer(g, first_half(f, n)), q = stabilizer(g, second_half(f, n));
    const auto z = characteristic_element(p, q, g);
    FMatrix expected = FMatrix::zero(f, 2 * n, 2 * n);
    expected.set_block(0, 0, 0.5 * FMatrix::identity(f, n));
    expected.set_block(n, n, -0.5 * FMatrix::identity(f, n));
    EXPECT_LT((z.matrix - expected).norm(), 1e-8) << field_name(f);
    // eigenvalue conditions
    const auto pp = polar(p, g), qp = polar(q, g), g0 = intersect(p, q);
    for (auto x : pp.elements()) EXPECT_LT((commutator(z.matrix, x) - x).norm(), 1e-8);
    for (auto x : qp.elements()) EXPECT_LT((commutator(z.matrix, x) + x).norm(), 1e-8);
    for (auto x : g0.elements()) EXPECT_LT(commutator(z.matrix, x).norm(), 1e-8);
  }
}

TEST(ExpNilpotent, Basics) {
  EXPECT_LT((exp_nilpotent(FMatrix::zero(Field::R, 3, 3)) - FMatrix::identity(Field::R, 3)).norm(), 0.0 + 1e-15);
  std::mt19937_64 rng(4);
  for (Field f : {Field::R, Field::C, Field::H}) {
    for (int t = 0; t < 20; ++t) {
      // strictly upper triangular
      FMatrix y = random_fmatrix(f, 4, 4, rng);
      for (Index i = 0; i < 4; ++i)
        for (Index j = 0; j <= i; ++j) y.set(i, j, DivisionScalar{f, 0, 0, 0, 0});
      FMatrix e = exp_nilpotent(y), ei = exp_nilpotent(-y);
      EXPECT_LT((e * ei - FMatrix::identity(f, 4)).norm(), 1e-8);
    }
  }
  EXPECT_THROW(exp_nilpotent(FMatrix::identity(Field::R, 2)), DomainError);
}

TEST(LieCircle, EndpointsAndErrors) {
  const Field f = Field::C;
  const Index n = 2;
  const auto g = sl_algebra(f, 2 * n);
  const FMatrix pb = first_half(f, n), qb = second_half(f, n);
  std::mt19937_64 rng(8);
  FMatrix ym = FMatrix::zero(f, 2 * n, 2 * n);
  ym.set_block(n, 0, random_fmatrix(f, n, n, rng));
  LieElement y{g.tag(), ym};
  LieCircle c(g, y, pb, qb);
  EXPECT_LT(subspace_distance(c(ProjParam::at(0)), pb), 1e-12);
  EXPECT_LT(subspace_distance(c(ProjParam::infinity()), qb), 1e-12);
  EXPECT_LT(subspace_distance(c(ProjParam::at(1)), exp_nilpotent(ym) * pb), 1e-12);

  FMatrix sing = FMatrix::zero(f, 2 * n, 2 * n);
  sing.set_block(n, 0, random_fmatrix(f, n, 1, rng) * random_fmatrix(f, 1, n, rng));
  EXPECT_THROW(LieCircle(g, LieElement{g.tag(), sing}, pb, qb), DomainError);
}
