#include <gtest/gtest.h>

#include "emodel/integrability.hpp"

using namespace emodel;

namespace {

constexpr uint64_t kSeed = 20240820;

Mat cartan_su(int N) {
  // Regular element of the Cartan subalgebra of su(N).
  Mat z = Mat::Zero(N, N);
  double trace = 0.0;
  for (int i = 0; i + 1 < N; ++i) {
    z(i, i) = cplx(0, 1.0 + 0.3 * i);
    trace += 1.0 + 0.3 * i;
  }
  z(N - 1, N - 1) = cplx(0, -trace);
  return z;
}

TEST(PcmSpectral, ClosedFormsAndPoles) {
  Rng rng(kSeed);
  PcmSpectral sd;
  const TStarElem x = random_tstar(rng, 3);
  EXPECT_LT((sd.O(0.0, x) - x.mu).norm(), 1e-14);
  const Mat w = random_su(rng, 3);
  const cplx lm(0.3, 0.1), rho(-0.2, 0.4);
  EXPECT_LT((sd.rhat(lm, rho, w) - sd.rhat_coeff(lm, rho) * w).norm(), 1e-14);
  EXPECT_THROW(sd.O(1.0, x), std::domain_error);
  EXPECT_THROW(sd.O(-1.0, x), std::domain_error);
  EXPECT_THROW(sd.rhat(0.5, 0.5, w), std::domain_error);
  EXPECT_THROW(sd.rhat(0.3, 1.0, w), std::domain_error);
}

TEST(PcmSpectral, ConditionsPass) {
  PcmSpectral sd;
  for (int N : {2, 3}) {
    const TStarModel m(N, cartan_su(N));
    const auto reports = verify_conditions(m, sd, 200, kSeed + N);
    ASSERT_EQ(reports.size(), 6u);
    for (const auto& r : reports) {
      EXPECT_TRUE(r.pass) << r.condition << " residual " << r.max_residual;
      EXPECT_LE(r.max_residual, 1e-10) << r.condition;
    }
  }
}

TEST(BiYbSpectral, FunctionIdentityAndLimits) {
  Rng rng(kSeed + 1);
  for (auto [eta, mu] : {std::pair{0.7, 0.3}, {1.3, 0.8}}) {
    BiYbSpectral sd{eta, mu};
    for (int rep = 0; rep < 20; ++rep) {
      const cplx lm(rng.uniform(-2, 2), rng.uniform(-2, 2));
      const cplx f0 = sd.f0(lm), f1 = sd.f1(lm);
      const cplx res = f0 * f0 - f1 * f1 - (1.0 + eta * eta - mu * mu) * f0 -
                       cplx(mu * mu);
      EXPECT_LT(std::abs(res), 1e-12);
    }
  }
  BiYbSpectral plain{1.0, 0.0};
  const cplx lm(0.4, -0.7);
  EXPECT_LT(std::abs(plain.f0(lm) - (1.0 + std::cosh(lm))), 1e-13);
  EXPECT_LT(std::abs(plain.f1(lm) - std::sinh(lm)), 1e-13);
}

TEST(BiYbSpectral, ConditionsPassAndNegativeControl) {
  for (auto [eta, mu] : {std::pair{0.7, 0.3}, {1.3, 0.8}}) {
    BiYbSpectral sd{eta, mu};
    for (int N : {2, 3}) {
      const SLModel m(N, eta, mu, cartan_su(N));
      const auto reports = verify_conditions(m, sd, 200, kSeed + N);
      for (const auto& r : reports) {
        EXPECT_TRUE(r.pass) << "eta=" << eta << " mu=" << mu << " N=" << N
                            << " " << r.condition << " residual "
                            << r.max_residual;
      }
    }
  }
  // Flipping the sign of R inside rhat must break the bracket condition.
  BiYbSpectral bad{0.7, 0.3, /*flip_r=*/true};
  const SLModel m(3, 0.7, 0.3, cartan_su(3));
  const auto reports = verify_conditions(m, bad, 50, kSeed + 9);
  double one_db = 0.0;
  for (const auto& r : reports)
    if (r.condition == "1db") one_db = r.max_residual;
  EXPECT_GT(one_db, 1e-3);
}

TEST(LaxPair, ZeroCurrentAndChiralClosedForm) {
  Rng rng(kSeed + 2);
  const TStarModel m(2, cartan_su(2));
  PcmSpectral sd;
  const LaxPair at0 = lax_pair(m, sd, TStarElem::Zero(2), cplx(0.3, 0.0));
  EXPECT_LT((at0.L - m.xi.mu).norm(), 1e-14);
  EXPECT_LT(at0.M.norm(), 1e-14);

  // Parametrize l = (k,0)(1,rho) and compare with the closed form
  // L = zeta - (k'k^-1 - lambda k rho' k^-1)/(1-lambda^2),
  // M = -(lambda k'k^-1 - k rho' k^-1)/(1-lambda^2).
  const Mat zeta = m.xi.mu;
  const Mat k = random_unitary(rng, 2);
  const Mat rho = random_su(rng, 2);
  const TStarPoint l = tstar_multiply({k, Mat::Zero(2, 2)},
                                      {Mat::Identity(2, 2), rho});
  const TStarElem j = m.current(l);
  const Mat w = zeta - k * zeta * k.adjoint();
  const Mat krho = k * bracket(zeta, rho) * k.adjoint();
  for (const cplx lm : {cplx(0.3, 0.0), cplx(0.0, 0.7), cplx(-0.5, 0.2)}) {
    const LaxPair lp = lax_pair(m, sd, j, lm);
    const cplx den = 1.0 - lm * lm;
    EXPECT_LT((lp.L - Mat(zeta - (w - lm * krho) / den)).norm(), 1e-12);
    EXPECT_LT((lp.M - Mat(-(lm * w - krho) / den)).norm(), 1e-12);
  }
}

template <class Model, class Spectral, class Elem>
void check_lax_equation(const Model& m, const Spectral& sd, const Elem& j,
                        cplx lm) {
  // dL/dt = -O(lambda) dj/dt must equal [L, M] as an algebraic identity.
  const LaxPair lp = lax_pair(m, sd, j, lm);
  const Mat dl = -sd.O(lm, eom_rhs(m, j));
  EXPECT_LT((dl - bracket(lp.L, lp.M)).norm(), 1e-10);
}

TEST(LaxPair, AlgebraicLaxEquation) {
  Rng rng(kSeed + 3);
  const TStarModel mt(3, cartan_su(3));
  PcmSpectral sp;
  const SLModel ms(3, 0.7, 0.3, cartan_su(3));
  BiYbSpectral sb{0.7, 0.3};
  for (int rep = 0; rep < 10; ++rep) {
    const cplx lm(rng.uniform(-0.6, 0.6), rng.uniform(-0.6, 0.6));
    check_lax_equation(mt, sp, random_tstar(rng, 3), lm);
    check_lax_equation(ms, sb, Mat(random_traceless(rng, 3)), lm);
  }
}

TEST(LaxPair, ResidualAlongTrajectories) {
  Rng rng(kSeed + 4);
  const TStarModel m(2, cartan_su(2));
  PcmSpectral sd;
  const TStarPoint l0{random_unitary(rng, 2), random_su(rng, 2)};
  const auto traj = integrate(m, l0, 5.0, 1e-3);
  const auto [res, drift] = lax_residual(m, sd, traj, cplx(0.3, 0.0));
  EXPECT_LT(res, 1e-6);
  EXPECT_LT(drift, 1e-8);

  const auto flat = integrate(m, TStarPoint::Identity(2), 0.5, 1e-2);
  const auto [res0, drift0] = lax_residual(m, sd, flat, cplx(0.3, 0.0));
  EXPECT_LT(res0, 1e-14);
  EXPECT_LT(drift0, 1e-14);
}

TEST(RMatrixIdentity, HoldsForBothModels) {
  Rng rng(kSeed + 5);
  const TStarModel mt(3, cartan_su(3));
  PcmSpectral sp;
  const SLModel ms(3, 0.7, 0.3, cartan_su(3));
  BiYbSpectral sb{0.7, 0.3};
  for (int rep = 0; rep < 50; ++rep) {
    const Mat x = random_su(rng, 3);
    const Mat y = random_su(rng, 3);
    const auto [lm, rho] = detail::sample_pair_pcm(rng);
    const auto [lhs, rhs] =
        rmatrix_identity(mt, sp, random_tstar(rng, 3), x, y, lm, rho);
    EXPECT_LT(std::abs(lhs - rhs), 1e-10);
    const auto [lm2, rho2] = detail::sample_pair_biyb(rng, sb);
    const auto [lhs2, rhs2] =
        rmatrix_identity(ms, sb, Mat(random_traceless(rng, 3)), x, y, lm2, rho2);
    EXPECT_LT(std::abs(lhs2 - rhs2), 1e-10);
  }
  // Zero current: only the xi terms survive; both sides must still match.
  const auto [lhs, rhs] = rmatrix_identity(mt, sp, TStarElem::Zero(3),
                                           random_su(rng, 3), random_su(rng, 3),
                                           cplx(0.3, 0.1), cplx(-0.4, 0.2));
  EXPECT_LT(std::abs(lhs - rhs), 1e-12);
}

TEST(RMatrixTensor, CasimirFormContractionAndBasisInvariance) {
  Rng rng(kSeed + 6);
  PcmSpectral sd;
  const cplx lm(0.25, 0.0), rho(-0.4, 0.0);
  const RealBasis b3 = su_basis(3);
  const Eigen::MatrixXcd t = rmatrix_tensor(sd, lm, rho, b3);
  // rhat proportional to Id means the tensor is the scaled inverse Gram.
  const Eigen::MatrixXcd want =
      sd.rhat_coeff(lm, rho) * b3.gram.cast<cplx>().inverse();
  EXPECT_LT((t - want).norm(), 1e-10);

  const Mat x = random_su(rng, 3);
  const Mat y = random_su(rng, 3);
  EXPECT_LT(std::abs(rmatrix_contract(t, b3, x, y) -
                     killing_form_c(x, sd.rhat(lm, rho, y))),
            1e-10);

  // A rescaled basis must give the same contraction values.
  std::vector<Mat> scaled;
  for (size_t i = 0; i < b3.generators.size(); ++i)
    scaled.push_back(Mat((1.0 + 0.1 * double(i)) * b3.generators[i]));
  const RealBasis b3s = make_real_basis(scaled);
  const Eigen::MatrixXcd t2 = rmatrix_tensor(sd, lm, rho, b3s);
  EXPECT_LT(std::abs(rmatrix_contract(t2, b3s, x, y) -
                     rmatrix_contract(t, b3, x, y)),
            1e-10);

  // The deformed data contracts consistently as well.
  BiYbSpectral sb{0.9, 0.4};
  const Eigen::MatrixXcd tb = rmatrix_tensor(sb, lm, rho, b3);
  EXPECT_LT(std::abs(rmatrix_contract(tb, b3, x, y) -
                     killing_form_c(x, sb.rhat(lm, rho, y))),
            1e-10);
}

}  // namespace
