#include <gtest/gtest.h>

#include "rspace/quadric.hpp"
#include "rspace/random.hpp"

using namespace rspace;

namespace {

OrientedPlane random_plane(Index n, std::mt19937_64& rng) {
  return OrientedPlane::from_frame(random_normal_vector(n, rng), random_normal_vector(n, rng));
}

RVec e(Index n, Index k) { return RVec::Unit(n, k); }

// Orthonormal (e1, e2, u, v) with e1, e2 standard and u, v random.
std::pair<RVec, RVec> random_uv(Index n, std::mt19937_64& rng) {
  RVec u = random_normal_vector(n, rng), v = random_normal_vector(n, rng);
  u.head(2).setZero();
  v.head(2).setZero();
  u.normalize();
  v -= u.dot(v) * u;
  v.normalize();
  return {u, v};
}

}  // namespace

TEST(Psi, Examples) {
  const Index n = 5;
  const OrientedPlane p{e(n, 0), e(n, 1)};
  EXPECT_LT((psi(p) - e_plus(n)).norm(), 1e-15);
  const OrientedPlane rev{e(n, 1), e(n, 0)};
  EXPECT_LT((psi(rev) - cd(0, 1) * e_minus(n)).norm(), 1e-15);
  EXPECT_LT((canonical_null(psi(rev)) - canonical_null(e_minus(n))).norm(), 1e-15);
  EXPECT_THROW(psi_inv(e(n, 0).cast<cd>()), DomainError);
  EXPECT_THROW(OrientedPlane::from_frame(e(3, 0), e(3, 1)), DomainError);
}

TEST(Psi, RoundTrip) {
  std::mt19937_64 rng(1);
  for (Index n = 4; n <= 7; ++n)
    for (int t = 0; t < 50; ++t) {
      const OrientedPlane p = random_plane(n, rng);
      const cd scale(random_uniform(-2, 2, rng), random_uniform(-2, 2, rng));
      const OrientedPlane back = psi_inv(scale * psi(p));
      EXPECT_LT(plane_distance(back, p), 1e-12);
      EXPECT_GT(plane_distance(OrientedPlane{p.v, p.u}, p), 1.0);
    }
}

TEST(CharacteristicAngles, Examples) {
  const Index n = 4;
  const OrientedPlane p{e(n, 0), e(n, 1)};
  auto a = characteristic_angles(p, p);
  EXPECT_NEAR(a.alpha, 0, 1e-15);
  EXPECT_NEAR(a.beta, 0, 1e-15);
  a = characteristic_angles(p, OrientedPlane{e(n, 1), e(n, 0)});
  EXPECT_NEAR(a.alpha, 0, 1e-12);
  EXPECT_NEAR(a.beta, M_PI, 1e-12);
}

TEST(CharacteristicAngles, RecoverAndReconstruct) {
  std::mt19937_64 rng(2);
  for (int t = 0; t < 500; ++t) {
    const Index n = 4 + t % 4;
    const double al = random_uniform(0, M_PI / 2, rng);
    const double be = random_uniform(al, M_PI - al, rng);
    const auto [u, v] = random_uv(n, rng);
    const OrientedPlane p{e(n, 0), e(n, 1)};
    const OrientedPlane q = plane_from_angles(e(n, 0), e(n, 1), u, v, al, be);
    const auto ang = characteristic_angles(p, q);
    EXPECT_NEAR(ang.alpha, al, 1e-9);
    EXPECT_NEAR(ang.beta, be, 1e-9);
    // random planes: reconstruct Q from the decomposition
    const OrientedPlane a = random_plane(n, rng), b = random_plane(n, rng);
    const auto d = characteristic_angles(a, b);
    EXPECT_LE(d.alpha, d.beta);
    EXPECT_LE(d.alpha + d.beta, M_PI + 1e-12);
    EXPECT_LT(plane_distance(OrientedPlane{d.u1, d.u2}, a), 1e-10);
    EXPECT_LT(plane_distance(plane_from_angles(d.u1, d.u2, d.v1, d.v2, d.alpha, d.beta), b), 1e-9);
  }
}

TEST(Opposite, Examples) {
  std::mt19937_64 rng(3);
  const OrientedPlane p = random_plane(6, rng);
  EXPECT_TRUE(is_opposite_quadric(p, OrientedPlane{p.v, p.u}));
  EXPECT_FALSE(is_opposite_quadric(p, p));
  const Index n = 5;
  EXPECT_NEAR(std::abs(bilinear(e_plus(n), e(n, 1).cast<cd>() + cd(0, 1) * e(n, 0).cast<cd>())), 2, 1e-15);
}

TEST(Opposite, PairingEqualsCosineGap) {
  std::mt19937_64 rng(4);
  for (int t = 0; t < 500; ++t) {
    const Index n = 4 + t % 4;
    const OrientedPlane a = random_plane(n, rng), b = random_plane(n, rng);
    const auto v = opposite_quadric_verdict(a, b);
    EXPECT_NEAR(v.pairing, v.angle_gap, 1e-9);
  }
}

TEST(Opposite, AgreesWithPolarIntersection) {
  std::mt19937_64 rng(5);
  const Index n = 4;
  const auto g = so_complex_algebra(n);
  for (int t = 0; t < 20; ++t) {
    const OrientedPlane a = random_plane(n, rng);
    // half of the partners have equal characteristic angles with a
    OrientedPlane b = random_plane(n, rng);
    if (t % 2) {
      const OrientedPlane w = random_plane(n, rng);
      RMat f(n, 4);
      f << a.u, a.v, w.u, w.v;
      const RMat qf = Eigen::HouseholderQR<RMat>(f).householderQ() * RMat::Identity(n, 4);
      const double th = random_uniform(0.1, 1.4, rng);
      b = OrientedPlane::from_frame(std::cos(th) * a.u + std::sin(th) * qf.col(2),
                                    std::cos(th) * a.v + std::sin(th) * qf.col(3));
    }
    const auto pa = stabilizer(g, FMatrix::complex(psi(a))), pb = stabilizer(g, FMatrix::complex(psi(b)));
    EXPECT_EQ(is_opposite(pa, pb, g), is_opposite_quadric(a, b));
    EXPECT_EQ(is_opposite_quadric(a, b), t % 2 == 0);
  }
}

TEST(AdaptedNullBasis, GramAndGuards) {
  const Index n = 5;
  const CVec x = e_plus(n);
  CVec y = CVec::Zero(n);
  y(2) = 1;
  y(3) = cd(0, 1);
  const NullBasis nb = adapted_null_basis(x, y);
  CMat b(n, 4);
  b << nb.x, nb.xp, nb.y, nb.yp;
  Eigen::Matrix4cd expected = Eigen::Matrix4cd::Zero();
  expected(0, 1) = expected(1, 0) = expected(2, 3) = expected(3, 2) = 1;
  EXPECT_LT((b.transpose() * b - expected).norm(), 1e-12);
  EXPECT_THROW(adapted_null_basis(x, e_minus(n)), PreconditionError);
  EXPECT_THROW(adapted_null_basis(x, cd(0, 2) * x), InconsistencyError);
}

TEST(AdaptedNullBasis, Random) {
  std::mt19937_64 rng(6);
  for (Index n = 4; n <= 7; ++n) {
    const auto g = so_complex_algebra(n);
    for (int t = 0; t < 10; ++t) {
      const FMatrix m = random_group_element(g, rng, 0.5);
      CVec y = CVec::Zero(n);
      y(2) = 1;
      y(3) = cd(0, 1);
      const CVec gx = m.part_a() * e_plus(n), gy = m.part_a() * y;
      const NullBasis nb = adapted_null_basis(gx, gy);
      CMat b(n, 4);
      b << nb.x, nb.xp, nb.y, nb.yp;
      Eigen::Matrix4cd expected = Eigen::Matrix4cd::Zero();
      expected(0, 1) = expected(1, 0) = expected(2, 3) = expected(3, 2) = 1;
      EXPECT_LT((b.transpose() * b - expected).norm(), 1e-9);
    }
  }
}

TEST(StabilizerPolar, BlockFormAbelianAndDoublePolar) {
  for (Index n = 4; n <= 6; ++n) {
    const auto g = so_complex_algebra(n);
    const CMat b = quadric_basis_matrix(n);
    for (const CVec& x : {e_plus(n), e_minus(n)}) {
      const auto sp = stabilizer_polar_quadric(x, g);
      EXPECT_EQ(sp.dim(), 2 * (n - 2));
      EXPECT_LT(abelian_residual(sp), 1e-12);
      const auto direct = polar(stabilizer(g, FMatrix::complex(x)), g);
      EXPECT_EQ(direct.dim(), sp.dim());
      for (Index k = 0; k < sp.dim(); ++k) {
        const CMat t = sp.element(k).part_a();
        EXPECT_LT(direct.residual(sp.element(k)), 1e-10);
        EXPECT_LT((t * x).norm(), 1e-12);
      }
    }
    // at the point E-, the circle generators: z in the E+ column, -z^T in the E- row
    const auto sp = stabilizer_polar_quadric(e_minus(n), g);
    for (Index k = 0; k < sp.dim(); ++k) {
      const CMat zb = b.inverse() * sp.element(k).part_a() * b;
      const CVec z = zb.block(2, 0, n - 2, 1) / 2.0;
      EXPECT_LT((zb - b.inverse() * z_matrix(z) * b).norm(), 1e-12);
    }
  }
}

TEST(ZMatrix, ExpClosedForm) {
  std::mt19937_64 rng(7);
  for (Index n = 4; n <= 7; ++n)
    for (int t = 0; t < 10; ++t) {
      const CVec z = random_normal_vector(n - 2, rng).cast<cd>() + cd(0, 1) * random_normal_vector(n - 2, rng).cast<cd>();
      const double s = random_uniform(-2, 2, rng);
      const CMat zm = z_matrix(z);
      EXPECT_LT((zm * zm * zm).norm(), 1e-12 * std::pow(zm.norm(), 3));
      const CMat ex = exp_nilpotent(FMatrix::complex(s * zm)).part_a();
      const CMat b = quadric_basis_matrix(n);
      CMat closed = CMat::Identity(n, n);  // [exp tZ]_B
      closed(1, 0) = -s * s * bilinear(z, z);
      closed.block(2, 0, n - 2, 1) = 2 * s * z;
      closed.block(1, 2, 1, n - 2) = -s * z.transpose();
      EXPECT_LT((b.inverse() * ex * b - closed).norm(), 1e-12 * std::max(1.0, closed.norm()));
      EXPECT_LT((ex * e_plus(n) - exp_tz_eplus(z, s)).norm(), 1e-12 * std::max(1.0, closed.norm()));
    }
  EXPECT_LT((z_matrix(CVec::Unit(2, 1) * cd(0, 1)).transpose() + z_matrix(CVec::Unit(2, 1) * cd(0, 1))).norm(), 1e-15);
}

TEST(CircleStandard, SimpleCircleAndInvariants) {
  const Index n = 5;
  const auto d = QuadricCircleData::standard(0, M_PI / 2, n);
  for (double t : {-3.0, -1.0, -0.2, 0.0, 0.5, 2.0}) {
    const OrientedPlane c = circle_standard(d, ProjParam::at(t));
    const OrientedPlane s = circle_simple(n, ProjParam::at(t));
    EXPECT_LT((c.u - s.u).norm() + (c.v - s.v).norm(), 1e-15);
  }
  std::mt19937_64 rng(8);
  for (int t = 0; t < 100; ++t) {
    const double al = random_uniform(0, M_PI / 2, rng);
    const double be = random_uniform(al + 1e-3, M_PI - al - 1e-3, rng);
    const auto [u, v] = random_uv(n, rng);
    const auto q = QuadricCircleData::make(al, be, e(n, 0), e(n, 1), u, v);
    EXPECT_NEAR(q.c, q.b * q.b - q.a * q.a, 1e-12 * std::max(1.0, q.b * q.b));
    if (al > 1e-3) EXPECT_NEAR(1 / std::tan(al), (1 + q.b * q.b - q.a * q.a) / (2 * q.a), 1e-9);
    const OrientedPlane p0{e(n, 0), e(n, 1)};
    EXPECT_LT(plane_distance(circle_standard(q, ProjParam::at(0)), p0), 1e-15);
    EXPECT_LT(plane_distance(circle_standard(q, ProjParam::at(1)), q.p1()), 1e-12);
    EXPECT_LT(plane_distance(circle_standard(q, ProjParam::infinity()), OrientedPlane{e(n, 1), e(n, 0)}), 1e-15);
    const auto ang = characteristic_angles(p0, circle_standard(q, ProjParam::at(1)));
    EXPECT_NEAR(ang.alpha, al, 1e-9);
    EXPECT_NEAR(ang.beta, be, 1e-9);
  }
  EXPECT_THROW(QuadricCircleData::standard(0.3, 0.3, n), PreconditionError);
  EXPECT_THROW(QuadricCircleData::standard(1.0, M_PI - 1.0, n), PreconditionError);
}

TEST(QuadricCircle, SimpleTripleAndStandardForm) {
  const Index n = 6;
  const OrientedPlane p0{e(n, 0), e(n, 1)}, p1{e(n, 0), e(n, 3)}, q{e(n, 1), e(n, 0)};
  QuadricCircle c(p0, p1, q);
  for (double t : {-2.0, -0.5, 0.0, 0.3, 1.0, 4.0})
    EXPECT_LT(plane_distance(c(ProjParam::at(t)), circle_simple(n, ProjParam::at(t))), 1e-12);
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 200; ++trial) {
    const Index m = 4 + trial % 4;
    const double al = random_uniform(0, M_PI / 2, rng);
    const double be = random_uniform(al + 1e-2, M_PI - al - 1e-2, rng);
    const auto [u, v] = random_uv(m, rng);
    const auto d = QuadricCircleData::make(al, be, e(m, 0), e(m, 1), u, v);
    const OrientedPlane a{e(m, 0), e(m, 1)}, b{e(m, 1), e(m, 0)};
    QuadricCircle cc(a, d.p1(), b);
    for (double t : {-5.0, -1.0, -0.1, 0.4, 1.0, 2.5})
      EXPECT_LT(plane_distance(cc(ProjParam::at(t)), circle_standard(d, ProjParam::at(t))), 1e-9);
  }
}

TEST(QuadricCircle, DefiningPointsOppositenessAndGuards) {
  std::mt19937_64 rng(10);
  for (int trial = 0; trial < 50; ++trial) {
    const Index n = 4 + trial % 4;
    const OrientedPlane p0 = random_plane(n, rng), p1 = random_plane(n, rng), q = random_plane(n, rng);
    QuadricCircle c(p0, p1, q);
    EXPECT_LT(plane_distance(c(ProjParam::at(0)), p0), 1e-9);
    EXPECT_LT(plane_distance(c(ProjParam::at(1)), p1), 1e-9);
    EXPECT_LT(plane_distance(c(ProjParam::infinity()), q), 1e-15);
    const OrientedPlane m = c(ProjParam::at(-1));
    EXPECT_TRUE(is_opposite_quadric(m, p0) && is_opposite_quadric(m, p1) && is_opposite_quadric(m, q));
  }
  const OrientedPlane p = random_plane(5, rng);
  EXPECT_THROW(QuadricCircle(p, p, OrientedPlane{p.v, p.u}), PreconditionError);
}

TEST(QuadricCircle, MatchesLieCircle) {
  std::mt19937_64 rng(11);
  for (Index n = 4; n <= 5; ++n) {
    const auto g = so_complex_algebra(n);
    for (int trial = 0; trial < 5; ++trial) {
      const OrientedPlane p0 = random_plane(n, rng), p1 = random_plane(n, rng), q = random_plane(n, rng);
      QuadricCircle c(p0, p1, q);
      const CMat gi = c.g_inverse();
      const CMat y = gi * z_matrix(c.z()) * gi.inverse();
      const LieElement le = LieElement::checked(g, FMatrix::complex(y), Tolerance{1e-10, 1e-6});
      LieCircle lc(g, le, FMatrix::complex(psi(p0)), FMatrix::complex(psi(q)), Tolerance{1e-10, 1e-6});
      for (double t : {-1.5, 0.5, 2.0})
        EXPECT_LT(plane_distance(psi_inv(lc(ProjParam::at(t)).part_a().col(0), Tolerance{1e-10, 1e-6}),
                                 c(ProjParam::at(t))),
                  1e-8);
    }
  }
}

TEST(QuadricCircle, Equivariance) {
  std::mt19937_64 rng(12);
  for (Index n = 4; n <= 6; ++n) {
    const auto g = so_complex_algebra(n);
    for (int trial = 0; trial < 10; ++trial) {
      const OrientedPlane p0 = random_plane(n, rng), p1 = random_plane(n, rng), q = random_plane(n, rng);
      const CMat m = random_group_element(g, rng, 0.5).part_a();
      QuadricCircle c(p0, p1, q), img(act_on_plane(m, p0), act_on_plane(m, p1), act_on_plane(m, q));
      for (double t : {-2.0, -0.5, 0.5, 3.0})
        EXPECT_LT(plane_distance(act_on_plane(m, c(ProjParam::at(t))), img(ProjParam::at(t))), 1e-8);
    }
  }
}

TEST(Gamma0, SimpleCircleAndPeriod) {
  const Index n = 4;
  EXPECT_LT(plane_distance(geodesic_gamma0(n, 0), OrientedPlane{e(n, 0), e(n, 1)}), 1e-15);
  EXPECT_LT(plane_distance(geodesic_gamma0(n, 0.5), OrientedPlane{e(n, 1), e(n, 0)}), 1e-15);
  for (int k = 0; k < 50; ++k) {
    const double s = k / 50.0;
    if (k == 25) continue;
    EXPECT_LT(plane_distance(geodesic_gamma0(n, s), circle_simple(n, ProjParam::tan_pi(s))), 1e-9);
    EXPECT_LT(plane_distance(geodesic_gamma0(n, s), geodesic_gamma0(n, s + 1)), 1e-12);
  }
  EXPECT_THROW(geodesic_gamma0(3, 0), DomainError);
}

TEST(QuadricGeodesic, MatchesCircle) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 40; ++trial) {
    const Index n = 4 + trial % 4;
    const OrientedPlane p0 = random_plane(n, rng), p1 = random_plane(n, rng), q = random_plane(n, rng);
    QuadricCircle c(p0, p1, q);
    QuadricGeodesic geo(c);
    double worst = 0;
    for (int k = 0; k < 50; ++k)
      worst = std::max(worst, plane_distance(geo(k / 50.0), c(ProjParam::tan_pi(k / 50.0))));
    EXPECT_LT(worst, 1e-8);
  }
}

TEST(ConjugatingElement, Examples) {
  const Index n = 6;
  const CMat o = conjugating_element(0, 1, e(n, 2), e(n, 3));
  EXPECT_LT((o - CMat::Identity(n, n)).norm(), 1e-14);
  EXPECT_THROW(conjugating_element(1, 1, e(n, 2), e(n, 3)), DomainError);
  EXPECT_THROW(conjugating_element(0.2, 1, e(n, 0), e(n, 3)), DomainError);
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 100; ++trial) {
    const Index m = 4 + trial % 4;
    const double al = random_uniform(0, M_PI / 2, rng);
    const double be = random_uniform(al + 1e-2, M_PI - al - 1e-2, rng);
    const auto [u, v] = random_uv(m, rng);
    const auto d = QuadricCircleData::make(al, be, e(m, 0), e(m, 1), u, v);
    const CMat om = conjugating_element(d.a, d.b, u, v);
    EXPECT_LT((om.transpose() * om - CMat::Identity(m, m)).norm(), 1e-10);
    EXPECT_NEAR(std::abs(om.determinant() - 1.0), 0, 1e-10);
    const CVec z0 = cd(0, 1) * RVec::Unit(m - 2, 1).cast<cd>();
    const CVec z = d.a * u.tail(m - 2).cast<cd>() + cd(0, d.b) * v.tail(m - 2).cast<cd>();
    EXPECT_LT((om * z_matrix(z0) * om.inverse() - z_matrix(z)).norm(), 1e-8);
    for (int k = 0; k < 20; ++k) {
      const double t = std::tan(M_PI * (k + 0.5) / 20 - M_PI / 2);
      EXPECT_LT(plane_distance(act_on_plane(om, circle_simple(m, ProjParam::at(t))), circle_standard(d, ProjParam::at(t))),
                1e-8);
    }
  }
}
