#include <gtest/gtest.h>

#include <random>

#include "rspace/linalg.hpp"

using namespace rspace;

namespace {

// Entry-by-entry quaternion product, independent of the A + B j formula.
FMatrix naive_product(const FMatrix& a, const FMatrix& b) {
  FMatrix out = FMatrix::zero(Field::H, a.rows(), b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < b.cols(); ++j) {
      DivisionScalar s = DivisionScalar::quaternion(0, 0, 0, 0);
      for (Index k = 0; k < a.cols(); ++k) s = s + a(i, k) * b(k, j);
      out.set(i, j, s);
    }
  return out;
}

}  // namespace

TEST(Quaternion, ScalarAlgebra) {
  const auto i = DivisionScalar::quaternion(0, 1, 0, 0), j = DivisionScalar::quaternion(0, 0, 1, 0);
  const auto k = i * j;
  EXPECT_DOUBLE_EQ(k.z, 1.0);
  EXPECT_DOUBLE_EQ((j * i).z, -1.0);
  std::mt19937_64 rng(3);
  std::normal_distribution<double> nd;
  for (int t = 0; t < 50; ++t) {
    auto p = DivisionScalar::quaternion(nd(rng), nd(rng), nd(rng), nd(rng));
    auto q = DivisionScalar::quaternion(nd(rng), nd(rng), nd(rng), nd(rng));
    auto lhs = (p * q).conj(), rhs = q.conj() * p.conj();
    EXPECT_NEAR((lhs - rhs).abs(), 0.0, 1e-12);
    EXPECT_NEAR((p.conj().conj() - p).abs(), 0.0, 0.0);
  }
}

TEST(QuaternionEmbed, IdentityAndJ) {
  FMatrix one = FMatrix::identity(Field::H, 1);
  EXPECT_TRUE(quaternion_complex_embed(one).realization().isApprox(CMat::Identity(2, 2)));

  FMatrix j = scalar_matrix(DivisionScalar::quaternion(0, 0, 1, 0));
  const CMat ej = quaternion_complex_embed(j).realization();
  CMat expected(2, 2);
  expected << 0, 1, -1, 0;
  EXPECT_TRUE(ej.isApprox(expected));
  EXPECT_TRUE((ej * ej).isApprox(-CMat::Identity(2, 2)));

  EXPECT_THROW(quaternion_complex_embed(FMatrix::identity(Field::C, 2)), DomainError);
}

TEST(QuaternionEmbed, HomomorphismProperty) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 100; ++t) {
    FMatrix a = random_fmatrix(Field::H, 2, 3, rng), b = random_fmatrix(Field::H, 3, 2, rng);
    FMatrix c = random_fmatrix(Field::H, 2, 3, rng);
    const CMat lhs = quaternion_complex_embed(a * b).realization();
    const CMat rhs = a.realization() * b.realization();
    EXPECT_LT((lhs - rhs).norm(), 1e-8);
    EXPECT_LT(((a * b) - naive_product(a, b)).norm(), 1e-10);
    EXPECT_LT(((a + c).realization() - (a.realization() + c.realization())).norm(), 1e-12);
    EXPECT_LT((a.adjoint().realization() - a.realization().adjoint()).norm(), 1e-12);
  }
}

TEST(RankKernel, Examples) {
  auto id = rank_kernel(FMatrix::identity(Field::R, 3));
  EXPECT_EQ(id.rank, 3);
  EXPECT_EQ(id.kernel.cols(), 0);

  RMat ones = RMat::Ones(2, 2);
  auto rk = rank_kernel(FMatrix::real(ones));
  EXPECT_EQ(rk.rank, 1);
  ASSERT_EQ(rk.kernel.cols(), 1);
  const double x = rk.kernel(0, 0).w, y = rk.kernel(1, 0).w;
  EXPECT_NEAR(std::abs(x), 1 / std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(x + y, 0.0, 1e-12);

  auto empty = rank_kernel(FMatrix::zero(Field::R, 0, 0));
  EXPECT_EQ(empty.rank, 0);
}

TEST(RankKernel, ForcedRankAllFields) {
  std::mt19937_64 rng(5);
  for (Field f : {Field::R, Field::C, Field::H}) {
    for (int t = 0; t < 20; ++t) {
      FMatrix a = random_fmatrix(f, 5, 3, rng), b = random_fmatrix(f, 3, 5, rng);
      FMatrix m = a * b;
      auto rk = rank_kernel(m);
      EXPECT_EQ(rk.rank, 3) << field_name(f);
      ASSERT_EQ(rk.kernel.cols(), 2);
      EXPECT_LT((m * rk.kernel).norm(), 1e-8);
      const FMatrix gram = rk.kernel.adjoint() * rk.kernel;
      EXPECT_LT((gram - FMatrix::identity(f, 2)).norm(), 1e-10);
      // scale invariance
      EXPECT_EQ(rank_kernel(1e-6 * m).rank, 3);
      EXPECT_EQ(rank_kernel(1e6 * m).rank, 3);
    }
  }
}

TEST(OrientedSvd2x2, Examples) {
  auto s = oriented_svd_2x2(Eigen::Matrix2d::Identity());
  EXPECT_NEAR(s.lambda1, 1, 1e-15);
  EXPECT_NEAR(s.lambda2, 1, 1e-15);
  Eigen::Matrix2d d;
  d << 1, 0, 0, -1;
  s = oriented_svd_2x2(d);
  EXPECT_NEAR(s.lambda1, 1, 1e-15);
  EXPECT_NEAR(s.lambda2, -1, 1e-15);
}

TEST(OrientedSvd2x2, ReconstructionProperty) {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> nd;
  for (int t = 0; t < 500; ++t) {
    Eigen::Matrix2d m;
    m << nd(rng), nd(rng), nd(rng), nd(rng);
    auto s = oriented_svd_2x2(m);
    Eigen::Matrix2d rec = s.u * Eigen::Vector2d(s.lambda1, s.lambda2).asDiagonal() * s.v.transpose();
    EXPECT_LT((rec - m).norm(), 1e-8);
    EXPECT_GE(s.lambda1, std::abs(s.lambda2));
    EXPECT_NEAR(s.lambda1 * s.lambda2, m.determinant(), 1e-10);
    EXPECT_NEAR(s.u.determinant(), 1.0, 1e-8);
    EXPECT_NEAR(s.v.determinant(), 1.0, 1e-8);
    EXPECT_EQ(s.lambda2 < 0, m.determinant() < 0);
  }
}

TEST(Subspaces, DistanceAndComplement) {
  std::mt19937_64 rng(9);
  for (Field f : {Field::R, Field::C, Field::H}) {
    FMatrix a = random_fmatrix(f, 4, 2, rng), g = random_fmatrix(f, 2, 2, rng);
    EXPECT_LT(subspace_distance(a, a * g), 1e-10);
    FMatrix b = random_fmatrix(f, 4, 2, rng);
    EXPECT_GT(subspace_distance(a, b), 1e-3);
    EXPECT_TRUE(spans_complementary(a, b));
    EXPECT_FALSE(spans_complementary(a, a * g));
    FMatrix q = orthonormal_basis(a);
    EXPECT_LT((q.adjoint() * q - FMatrix::identity(f, 2)).norm(), 1e-10);
    EXPECT_LT(subspace_distance(q, a), 1e-10);
  }
}
