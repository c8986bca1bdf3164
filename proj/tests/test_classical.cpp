#include <gtest/gtest.h>

#include "rspace/classical.hpp"
#include "rspace/random.hpp"

using namespace rspace;

namespace {

AlgebraBasis compact_algebra(ClassicalGroup g, Index n) {
  return form_algebra("k", FMatrix::identity(classical_field(g), n), true, false);
}

const ClassicalGroup kGroups[] = {ClassicalGroup::SO, ClassicalGroup::U, ClassicalGroup::Sp};

}  // namespace

TEST(GraphEmbed, IdentityIsDiagonal) {
  for (ClassicalGroup g : kGroups) {
    const Field f = classical_field(g);
    const FMatrix gr = graph_embed(g, FMatrix::identity(f, 2));
    EXPECT_LT(isotropy_residual(gr, graph_form(f, 2)), 1e-15);
    EXPECT_THROW(graph_embed(g, 2.0 * FMatrix::identity(f, 2)), DomainError);
  }
  RMat refl = RMat::Identity(2, 2);
  refl(0, 0) = -1;
  EXPECT_THROW(graph_embed(ClassicalGroup::SO, FMatrix::real(refl)), DomainError);
}

TEST(GraphEmbed, InjectiveAndOppositeCriterion) {
  std::mt19937_64 rng(1);
  for (ClassicalGroup g : kGroups) {
    const auto k = compact_algebra(g, 4);
    for (int t = 0; t < 20; ++t) {
      const FMatrix a = random_group_element(k, rng), b = random_group_element(k, rng);
      EXPECT_LT((graph_chart(graph_embed(g, a)) - a).norm(), 1e-10);
      EXPECT_TRUE(is_opposite_gr(graph_embed(g, a), graph_embed(g, b)));
      // a and a composed with a rotation fixing one vector: S u = T u for some u
      FMatrix r = classical_diagonal(g, 4, 0.9);
      r.set_block(0, 0, FMatrix::identity(classical_field(g), 2));
      if (g != ClassicalGroup::SO) r.set_block(0, 0, FMatrix::identity(classical_field(g), 1));
      const FMatrix c = a * r;
      EXPECT_FALSE(is_opposite_gr(graph_embed(g, a), graph_embed(g, c)));
      EXPECT_LT(rank_kernel(a - c).rank, 4);
    }
  }
}

TEST(BirationalAct, IdentityBlockDiagonalAndSubspaces) {
  std::mt19937_64 rng(2);
  for (ClassicalGroup g : kGroups) {
    const Field f = classical_field(g);
    const auto k = compact_algebra(g, 2);
    const auto big = graph_form(f, 2).algebra();
    for (int t = 0; t < 20; ++t) {
      const FMatrix a = random_group_element(k, rng);
      EXPECT_LT((birational_act(FMatrix::identity(f, 4), g, a) - a).norm(), 1e-12);
      const FMatrix x = random_group_element(k, rng), y = random_group_element(k, rng);
      FMatrix diag = FMatrix::zero(f, 4, 4);
      diag.set_block(0, 0, x);
      diag.set_block(2, 2, y);
      EXPECT_LT((birational_act(diag, g, a) - y * a * x.inverse()).norm(), 1e-10);
      const FMatrix m = random_group_element(big, rng, 0.5);
      try {
        const FMatrix b = birational_act(m, g, a);
        EXPECT_LT(subspace_distance(graph_embed(g, b, Tolerance{1e-10, 1e-7}), m * graph_embed(g, a)), 1e-8);
      } catch (const DomainError&) {
        ADD_FAILURE() << "unexpected chart exit";
      }
    }
  }
}

TEST(BirationalAct, StaysInChart) {
  // For x^H x' - y^H y' every maximal isotropic subspace is a graph, so the
  // denominator a + cA stays invertible; only non-graphs leave the chart.
  std::mt19937_64 rng(3);
  const Field f = Field::C;
  const auto big = graph_form(f, 2).algebra();
  const auto k = compact_algebra(ClassicalGroup::U, 2);
  for (int t = 0; t < 50; ++t)
    EXPECT_NO_THROW(birational_act(random_group_element(big, rng, 3.0), ClassicalGroup::U, random_group_element(k, rng)));
  FMatrix vertical = FMatrix::zero(f, 4, 2);
  vertical.set_block(2, 0, FMatrix::identity(f, 2));
  EXPECT_THROW(graph_chart(vertical), DomainError);
  EXPECT_THROW(birational_act(FMatrix::identity(f, 3), ClassicalGroup::U, FMatrix::identity(f, 1)), DomainError);
  EXPECT_THROW(birational_act(2.0 * FMatrix::identity(f, 2), ClassicalGroup::U, FMatrix::identity(f, 1)), DomainError);
}

TEST(ClassicalGeodesic, DiagonalAndCircle) {
  for (ClassicalGroup g : kGroups) {
    const Index size = 4;
    const Field f = classical_field(g);
    EXPECT_LT((classical_diagonal(g, size, 0) - FMatrix::identity(f, size)).norm(), 1e-15);
    ClassicalGeodesic geo(g, size);
    const SplitForm form = graph_form(f, size);
    IsotropicCircle c(geo(0), geo(0.25), geo(0.5), form);
    EXPECT_LT((geo.element(0.5) + FMatrix::identity(f, size)).norm(), 1e-12);
    for (int k = 0; k < 50; ++k) {
      const double s = k / 50.0;
      EXPECT_LT(subspace_distance(geo(s), c(ProjParam::tan_pi(s))), 1e-8) << classical_name(g);
    }
  }
  const FMatrix r = classical_diagonal(ClassicalGroup::SO, 4, M_PI / 2);
  EXPECT_NEAR(r(1, 0).w, 1.0, 1e-15);
  EXPECT_NEAR(r(3, 2).w, 1.0, 1e-15);
  EXPECT_NEAR(r(0, 1).w, -1.0, 1e-15);
}
