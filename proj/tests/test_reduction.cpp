#include <gtest/gtest.h>

#include "galilax/errors.hpp"
#include "galilax/reduction.hpp"
#include "galilax/sampling.hpp"

using namespace galilax;

TEST(Gram, ZeroState) { EXPECT_EQ(gram(CenteredState(Matrix::Zero(3, 4))).g().norm(), 0.0); }

TEST(Gram, LaxImageIsJG) {
  Sampler rng(1);
  const CenteredState z = random_state(rng, 3, 3);
  const GramElement g = gram(z);
  EXPECT_EQ(g.k(), symplectic_j(3) * g.g());
  EXPECT_LT((GramElement::from_lax(g.k()).g() - g.g()).norm(), 1e-14);
}

TEST(Gram, RejectsMalformed) {
  EXPECT_THROW(GramElement{Matrix::Identity(3, 3)}, InvalidInput);
  Matrix a = Matrix::Identity(2, 2);
  a(0, 1) = 1.0;
  EXPECT_THROW(GramElement{a}, InvalidInput);
}

TEST(Gram, RotationInvariant) {
  Sampler rng(2);
  for (int t = 0; t < 20; ++t) {
    const int d = 1 + t % 4;
    const CenteredState z = random_state(rng, d, 1 + t % 4);
    const Matrix g = rng.orthogonal(d);
    EXPECT_LT((gram(CenteredState(g * z.z())).g() - gram(z).g()).norm(), 1e-12 * std::max(1.0, z.z().squaredNorm()));
  }
}

TEST(Gram, RankBoundedByDimension) {
  Sampler rng(3);
  for (int t = 0; t < 10; ++t) EXPECT_LE(numerical_rank(gram(random_state(rng, 3, 4)).g()), 3);
}

TEST(Gram, SymplecticEquivariance) {
  Sampler rng(4);
  for (int t = 0; t < 20; ++t) {
    const int m = 1 + t % 4;
    const CenteredState z = random_state(rng, 1 + t % 3, m);
    const Matrix s = rng.symplectic(m);
    const Matrix lhs = gram(CenteredState(z.z() * s)).g();
    const Matrix rhs = s.transpose() * gram(z).g() * s;
    EXPECT_LT((lhs - rhs).norm(), 1e-10 * std::max(1.0, rhs.norm()));
  }
}

TEST(AngularMomentum, SingleWedge) {
  Matrix z = Matrix::Zero(3, 2);
  z(0, 0) = 1.0;  // X_1 = e_1
  z(1, 1) = 1.0;  // Y_1 = e_2
  Matrix expected = Matrix::Zero(3, 3);
  expected(0, 1) = 1.0;
  expected(1, 0) = -1.0;
  EXPECT_EQ(angular_momentum(CenteredState(z)).l, expected);
}

TEST(AngularMomentum, CollinearIsZero) {
  Sampler rng(5);
  Vector u = rng.gaussian(3, 1);
  u.normalize();
  const Matrix z = u * rng.gaussian(1, 8);
  EXPECT_LT(angular_momentum(CenteredState(z)).norm(), 1e-14);
}

TEST(AngularMomentum, WedgeSumAgreesAndIsAntisymmetric) {
  Sampler rng(6);
  for (int t = 0; t < 30; ++t) {
    const CenteredState z = random_state(rng, 1 + t % 4, 1 + t % 5);
    const Matrix l = angular_momentum(z).l;
    EXPECT_LT((l - angular_momentum_wedges(z).l).norm(), 1e-12 * std::max(1.0, l.norm()));
    EXPECT_LT((l + l.transpose()).norm(), 1e-12);
  }
}

TEST(AngularMomentum, RotationEquivariance) {
  Sampler rng(7);
  for (int t = 0; t < 20; ++t) {
    const int d = 2 + t % 3;
    const CenteredState z = random_state(rng, d, 3);
    const Matrix g = rng.orthogonal(d);
    const Matrix lhs = angular_momentum(CenteredState(g * z.z())).l;
    const Matrix rhs = g * angular_momentum(z).l * g.transpose();
    EXPECT_LT((lhs - rhs).norm(), 1e-12 * std::max(1.0, rhs.norm()));
  }
}

TEST(AngularMomentum, RankEvenAndBoundedByGramRank) {
  Sampler rng(8);
  for (int t = 0; t < 50; ++t) {
    const int d = 1 + t % 5;
    const int m = 1 + t % 4;
    const CenteredState z = random_state(rng, d, m);
    // Both ranks are read against the scale of Z: L itself may be pure round-off.
    const double scale = z.z().squaredNorm();
    const Vector sl = singular_values(angular_momentum(z).l);
    const Vector sg = singular_values(gram(z).g());
    const int rl = static_cast<int>((sl.array() > kRankTol * scale).count());
    const int rg = static_cast<int>((sg.array() > kRankTol * scale).count());
    EXPECT_EQ(rl % 2, 0);
    EXPECT_LE(rl, rg);
    EXPECT_LE(rg, std::min(d, 2 * m));
  }
}

TEST(SpectralTraces, AgreeAndOddVanish) {
  Sampler rng(9);
  for (int t = 0; t < 20; ++t) {
    const SpectralTraces tr = spectral_traces(random_state(rng, 3, 3), 6);
    for (int k = 1; k <= 6; ++k) {
      EXPECT_LE(std::abs(tr.l[k - 1] - tr.k[k - 1]), 1e-9 * std::max(1.0, std::abs(tr.k[k - 1])));
      if (k % 2 == 1) {
        EXPECT_LE(std::abs(tr.l[k - 1]), 1e-10 * std::max(1.0, std::pow(std::abs(tr.k[1]), k / 2.0)));
        EXPECT_LE(std::abs(tr.k[k - 1]), 1e-10 * std::max(1.0, std::pow(std::abs(tr.k[1]), k / 2.0)));
      }
    }
  }
}

TEST(SpectralTraces, LagrangeIdentityForTwoBodies) {
  Sampler rng(10);
  for (int t = 0; t < 20; ++t) {
    const Vector x = rng.gaussian(3, 1);
    const Vector y = rng.gaussian(3, 1);
    const CenteredState z{Matrix(x), Matrix(y)};
    const double expected = -2.0 * (x.squaredNorm() * y.squaredNorm() - x.dot(y) * x.dot(y));
    EXPECT_NEAR(spectral_traces(z, 2).l[1], expected, 1e-12 * std::max(1.0, std::abs(expected)));
  }
}

TEST(ConeMembership, Verdicts) {
  Sampler rng(11);
  const CenteredState z = random_state(rng, 3, 3);
  const ConeMembership in = cone_membership(gram(z).g(), 3);
  EXPECT_EQ(in.verdict, ConeVerdict::inside);
  EXPECT_EQ(in.rank, 3);

  Matrix neg = Matrix::Identity(4, 4);
  neg(2, 2) = -1.0;
  EXPECT_EQ(cone_membership(neg, 4).verdict, ConeVerdict::outside);

  const ConeMembership zero = cone_membership(Matrix::Zero(4, 4), 3);
  EXPECT_EQ(zero.verdict, ConeVerdict::boundary);
  EXPECT_EQ(zero.rank, 0);

  const CenteredState planar = random_state(rng, 2, 3);
  const ConeMembership b = cone_membership(gram(planar).g(), 3);
  EXPECT_EQ(b.verdict, ConeVerdict::boundary);
  EXPECT_EQ(b.rank, 2);

  // Rank above d is outside the image for that d.
  EXPECT_EQ(cone_membership(gram(z).g(), 2).verdict, ConeVerdict::outside);
}
