#include <gtest/gtest.h>

#include "emodel/algebra.hpp"
#include "emodel/rng.hpp"

using namespace emodel;

namespace {

constexpr uint64_t kSeed = 20240817;

TEST(Bracket, AntisymmetryAndJacobi) {
  Rng rng(kSeed);
  for (int rep = 0; rep < 10; ++rep) {
    const Mat a = random_traceless(rng, 3);
    const Mat b = random_traceless(rng, 3);
    const Mat c = random_traceless(rng, 3);
    EXPECT_LT((bracket(a, b) + bracket(b, a)).norm(), 1e-12);
    const Mat jac = bracket(a, bracket(b, c)) + bracket(b, bracket(c, a)) +
                    bracket(c, bracket(a, b));
    EXPECT_LT(jac.norm(), 1e-10);
  }
}

TEST(KillingForm, SymmetricAndAdInvariant) {
  Rng rng(kSeed + 1);
  for (int rep = 0; rep < 10; ++rep) {
    const Mat a = random_su(rng, 3);
    const Mat b = random_su(rng, 3);
    const Mat z = random_su(rng, 3);
    EXPECT_NEAR(killing_form(a, b), killing_form(b, a), 1e-12);
    EXPECT_NEAR(killing_form(bracket(z, a), b) + killing_form(a, bracket(z, b)),
                0.0, 1e-10);
  }
}

TEST(TStarAlgebra, JacobiAndInvariantForm) {
  Rng rng(kSeed + 2);
  for (int rep = 0; rep < 10; ++rep) {
    const TStarElem a = random_tstar(rng, 2);
    const TStarElem b = random_tstar(rng, 2);
    const TStarElem c = random_tstar(rng, 2);
    const TStarElem jac = bracket_tstar(a, bracket_tstar(b, c)) +
                          bracket_tstar(b, bracket_tstar(c, a)) +
                          bracket_tstar(c, bracket_tstar(a, b));
    EXPECT_LT(jac.norm(), 1e-10);
    EXPECT_NEAR(form_tstar(a, b), form_tstar(b, a), 1e-12);
    EXPECT_NEAR(form_tstar(bracket_tstar(c, a), b) +
                    form_tstar(a, bracket_tstar(c, b)),
                0.0, 1e-10);
  }
}

TEST(TStarAlgebra, HalvesAreIsotropic) {
  Rng rng(kSeed + 3);
  const Mat z = Mat::Zero(2, 2);
  for (int rep = 0; rep < 5; ++rep) {
    const Mat a = random_su(rng, 2);
    const Mat b = random_su(rng, 2);
    EXPECT_NEAR(form_tstar({a, z}, {b, z}), 0.0, 1e-14);
    EXPECT_NEAR(form_tstar({z, a}, {z, b}), 0.0, 1e-14);
  }
}

TEST(SlForm, AdInvariantAndIsotropicHalves) {
  Rng rng(kSeed + 4);
  const double eta = 0.8;
  for (int rep = 0; rep < 10; ++rep) {
    const Mat a = random_traceless(rng, 3);
    const Mat b = random_traceless(rng, 3);
    const Mat z = random_traceless(rng, 3);
    EXPECT_NEAR(form_sl(a, b, eta), form_sl(b, a, eta), 1e-12);
    EXPECT_NEAR(form_sl(bracket(z, a), b, eta) + form_sl(a, bracket(z, b), eta),
                0.0, 1e-10);
  }
  // su(N) and the triangular half are both isotropic.
  const Mat u = random_su(rng, 3), v = random_su(rng, 3);
  EXPECT_NEAR(form_sl(u, v, eta), 0.0, 1e-13);
  Mat p = Mat::Zero(3, 3), q = Mat::Zero(3, 3);
  p(0, 1) = cplx(1.0, 2.0); p(0, 0) = 1.0; p(1, 1) = -1.0;
  q(1, 2) = cplx(-0.5, 1.0); q(0, 0) = 2.0; q(2, 2) = -2.0;
  EXPECT_NEAR(form_sl(p, q, eta), 0.0, 1e-13);
}

TEST(SuBasis, DimensionAndXNormalization) {
  for (int N : {2, 3, 4}) {
    const RealBasis b = su_basis(N);
    EXPECT_EQ(static_cast<int>(b.generators.size()), N * N - 1);
    for (const Mat& g : b.generators) {
      EXPECT_TRUE(is_su(g));
      EXPECT_TRUE(is_traceless(g));
    }
  }
  // The su(3) basis pairs to diag(1,...,1,3) under -tr(xy)/2.
  const RealBasis b3 = su_basis(3);
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) {
      const double want = (i == j) ? (i == 7 ? 3.0 : 1.0) : 0.0;
      EXPECT_NEAR(-0.5 * b3.gram(i, j), want, 1e-14);
    }
}

TEST(SuBasis, CoordinateRoundTrip) {
  Rng rng(kSeed + 5);
  for (int N : {2, 3, 4}) {
    const RealBasis b = su_basis(N);
    const Mat x = random_su(rng, N);
    const RVec c = real_coords(b, x);
    EXPECT_LT((from_coords(b, c) - x).norm(), 1e-10);
  }
}

TEST(Su3Encoding, RoundTripMatchesBasis) {
  Rng rng(kSeed + 6);
  const Mat x = random_su(rng, 3);
  const RVec v = su3_encode(x);
  EXPECT_LT((su3_decode(v) - x).norm(), 1e-12);
  const RealBasis b = su_basis(3);
  EXPECT_LT((real_coords(b, x) - v).norm(), 1e-10);
}

TEST(YangBaxter, ActionOnRootsAndCartan) {
  Mat e01 = Mat::Zero(2, 2), e10 = Mat::Zero(2, 2), h = Mat::Zero(2, 2);
  e01(0, 1) = 1.0;
  e10(1, 0) = 1.0;
  h(0, 0) = 1.0;
  h(1, 1) = -1.0;
  EXPECT_LT((yang_baxter_R(e01) - cplx(0, -1) * e01).norm(), 1e-15);
  EXPECT_LT((yang_baxter_R(e10) - cplx(0, 1) * e10).norm(), 1e-15);
  EXPECT_LT(yang_baxter_R(h).norm(), 1e-15);
}

TEST(YangBaxter, Su2IsHalfAdjointOfCartan) {
  Rng rng(kSeed + 7);
  Mat xi = Mat::Zero(2, 2);
  xi(0, 0) = cplx(0, 1);
  xi(1, 1) = cplx(0, -1);
  for (int rep = 0; rep < 5; ++rep) {
    const Mat x = random_traceless(rng, 2);
    EXPECT_LT((yang_baxter_R(x) + 0.5 * bracket(xi, x)).norm(), 1e-12);
  }
}

TEST(YangBaxter, SkewForInvariantForm) {
  Rng rng(kSeed + 8);
  for (int rep = 0; rep < 5; ++rep) {
    const Mat a = random_su(rng, 3);
    const Mat b = random_su(rng, 3);
    EXPECT_NEAR(killing_form(yang_baxter_R(a), b) +
                    killing_form(a, yang_baxter_R(b)),
                0.0, 1e-12);
  }
}

TEST(TwistedYangBaxter, IdentityAndEquivariance) {
  Rng rng(kSeed + 9);
  const Mat id = Mat::Identity(3, 3);
  const Mat x = random_su(rng, 3);
  EXPECT_LT((r_twisted(id, x) - yang_baxter_R(x)).norm(), 1e-12);

  // R_{kh} = Ad_{h^-1} R_k Ad_h.
  const Mat k = random_unitary(rng, 3);
  const Mat h = random_unitary(rng, 3);
  const Mat lhs = r_twisted(k * h, x);
  const Mat rhs = h.adjoint() * r_twisted(k, h * x * h.adjoint()) * h;
  EXPECT_LT((lhs - rhs).norm(), 1e-10);
}

TEST(StabilizerProjectors, SplitKerAdXi) {
  Rng rng(kSeed + 10);
  Mat xi = Mat::Zero(3, 3);
  xi(0, 0) = cplx(0, 1.0);
  xi(1, 1) = cplx(0, 0.4);
  xi(2, 2) = cplx(0, -1.4);
  auto [p, pperp] = stabilizer_projectors(xi);
  const int d = static_cast<int>(p.matrix.rows());
  EXPECT_LT((p.matrix + pperp.matrix - RMat::Identity(d, d)).norm(), 1e-10);
  EXPECT_LT((p.matrix * p.matrix - p.matrix).norm(), 1e-10);
  // Generic diagonal xi in su(3): the centralizer is the 2d Cartan.
  EXPECT_NEAR(p.matrix.trace(), 2.0, 1e-8);
  const Mat x = random_su(rng, 3);
  EXPECT_LT(bracket(xi, p.apply(x)).norm(), 1e-9);
  EXPECT_LT((p.apply(x) + pperp.apply(x) - x).norm(), 1e-10);
  // Orthogonality of the two ranges for the trace form.
  EXPECT_NEAR(killing_form(p.apply(x), pperp.apply(random_su(rng, 3))), 0.0,
              1e-9);
}

TEST(LinearMap, MatchesDirectApplication) {
  Rng rng(kSeed + 11);
  const RealBasis b = su_basis(2);
  const Mat z = random_su(rng, 2);
  auto fn = [&](const Mat& x) { return bracket(z, x); };
  const LinearMap m = make_linear_map(fn, b, b);
  const Mat x = random_su(rng, 2);
  EXPECT_LT((m.apply(x) - fn(x)).norm(), 1e-10);
}

}  // namespace
