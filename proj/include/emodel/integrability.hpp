#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "emodel/algebra.hpp"
#include "emodel/doubles.hpp"
#include "emodel/dynamics.hpp"
#include "emodel/rng.hpp"

// Spectral data O(lambda), O^dagger(lambda), rhat(lambda,rho) for the chiral
// and deformed models, the Lax pair L = xi - O(lambda) j, M = -O(lambda) E j,
// the sufficient-condition verifier and the fundamental r-matrix identity.
//
// Complex lambda conventions: outputs of O, rhat, L, M live in the
// complexification of su(N), which is materialized as sl(N,C) (the matrix i
// doubles as the formal unit); pairings on it extend complex-bilinearly via
// the plain trace. For the SL(N,C) double, whose own scalars already use the
// matrix i, the complexified double carrier keeps the formal unit explicit as
// a (re, im) pair.

namespace emodel {

// ---------------------------------------------------------------------------
// Formal complexification of sl(N,C)-as-real.
// ---------------------------------------------------------------------------

struct CElem {
  Mat re, im;

  static CElem embed(const Mat& x) { return {x, Mat::Zero(x.rows(), x.cols())}; }
  CElem operator+(const CElem& o) const { return {re + o.re, im + o.im}; }
  CElem operator-(const CElem& o) const { return {re - o.re, im - o.im}; }
  /// Multiplication by the formal unit.
  CElem formal_i() const { return {-im, re}; }
  double norm() const { return std::sqrt(re.squaredNorm() + im.squaredNorm()); }
};

inline CElem cbracket(const CElem& a, const CElem& b) {
  return {bracket(a.re, b.re) - bracket(a.im, b.im),
          bracket(a.re, b.im) + bracket(a.im, b.re)};
}

/// Complex-bilinear extension of the imaginary-trace form to CElem pairs.
inline cplx cform_sl(const CElem& a, const CElem& b, double eta) {
  return cplx(form_sl(a.re, b.re, eta) - form_sl(a.im, b.im, eta),
              form_sl(a.re, b.im, eta) + form_sl(a.im, b.re, eta));
}

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

struct ConditionReport {
  std::string condition;
  int samples = 0;
  uint64_t seed = 0;
  double max_residual = 0.0;
  double threshold = 0.0;
  bool pass = false;
};

struct LaxPair {
  Mat L, M;
  cplx lambda;
};

// ---------------------------------------------------------------------------
// Chiral spectral data on the cotangent-bundle double.
// ---------------------------------------------------------------------------

struct PcmSpectral {
  static void check_lambda(cplx lm) {
    if (std::abs(1.0 - lm * lm) < 1e-12)
      throw std::domain_error("spectral pole: 1-lambda^2 vanishes");
  }
  static void check_pair(cplx lm, cplx rho) {
    check_lambda(rho);
    if (std::abs(rho - lm) < 1e-12)
      throw std::domain_error("spectral pole: rho-lambda vanishes");
  }

  /// O(lambda)(mu, nu) = (mu - lambda nu) / (1 - lambda^2); accepts the
  /// materialized complexified carrier.
  Mat O(cplx lm, const TStarElem& x) const {
    check_lambda(lm);
    return (x.mu - lm * x.nu) / (1.0 - lm * lm);
  }

  /// O^dagger(lambda) mu = (-lambda mu, mu) / (1 - lambda^2).
  TStarElem O_dagger(cplx lm, const Mat& w) const {
    check_lambda(lm);
    const cplx den = 1.0 - lm * lm;
    return {Mat(-lm / den * w), Mat(w / den)};
  }

  Mat rhat(cplx lm, cplx rho, const Mat& y) const {
    check_pair(lm, rho);
    return (rho * rho / ((1.0 - rho * rho) * (rho - lm))) * y;
  }

  cplx rhat_coeff(cplx lm, cplx rho) const {
    check_pair(lm, rho);
    return rho * rho / ((1.0 - rho * rho) * (rho - lm));
  }
};

// ---------------------------------------------------------------------------
// Deformed spectral data on the SL(N,C) double.
// ---------------------------------------------------------------------------

struct BiYbSpectral {
  double eta = 1.0;
  double mu = 0.0;
  bool flip_r = false;  ///< negative control: R -> -R inside rhat only

  cplx f0(cplx lm) const {
    const double a = 1.0 + eta * eta - mu * mu;
    const double b = std::sqrt(a * a + 4.0 * mu * mu);
    return 0.5 * a + 0.5 * b * std::cosh(lm);
  }
  cplx f1(cplx lm) const {
    const double a = 1.0 + eta * eta - mu * mu;
    const double b = std::sqrt(a * a + 4.0 * mu * mu);
    return 0.5 * b * std::sinh(lm);
  }

  void check_pair(cplx lm, cplx rho) const {
    if (std::abs(f0(lm) - f0(rho)) < 1e-12)
      throw std::domain_error("spectral pole: f0(lambda)-f0(rho) vanishes");
  }

  /// O(lambda) j = f0 (j - j^dag)/2 + (f1 + mu(1 - f0) R)(j + j^dag)/(2 i eta).
  Mat O(cplx lm, const Mat& j) const {
    const Mat su_part = 0.5 * (j - Mat(j.adjoint()));
    const Mat herm = (j + Mat(j.adjoint())) / (cplx(0, 2) * eta);
    return f0(lm) * su_part + f1(lm) * herm +
           mu * (1.0 - f0(lm)) * yang_baxter_R(herm);
  }

  /// O^dagger(lambda) W = (-i eta f0 - f1 + mu(1 - f0) R) W, valued in the
  /// complexified double (formal unit kept explicit).
  CElem O_dagger(cplx lm, const Mat& w) const {
    const cplx c0 = f0(lm), c1 = f1(lm);
    const Mat rw = yang_baxter_R(w);
    const Mat re = -eta * c0.real() * Mat(cplx(0, 1) * w) - c1.real() * w +
                   mu * (1.0 - c0.real()) * rw;
    const Mat im = -eta * c0.imag() * Mat(cplx(0, 1) * w) - c1.imag() * w -
                   mu * c0.imag() * rw;
    return {re, im};
  }

  /// Complex-linear extension of O^dagger to the materialized su-
  /// complexification (split w into anti-Hermitian and Hermitian parts).
  CElem O_dagger_c(cplx lm, const Mat& w) const {
    const Mat wre = 0.5 * (w - Mat(w.adjoint()));
    const Mat wim = (w + Mat(w.adjoint())) / cplx(0, 2);
    const CElem a = O_dagger(lm, wre);
    const CElem b = O_dagger(lm, wim);
    return a + b.formal_i();
  }

  Mat rhat(cplx lm, cplx rho, const Mat& y) const {
    check_pair(lm, rho);
    const cplx coeff = (f0(lm) * f1(rho) + f1(lm) * f0(rho)) / (f0(lm) - f0(rho));
    const double sgn = flip_r ? -1.0 : 1.0;
    return (1.0 - f0(rho)) * (coeff * y - sgn * mu * yang_baxter_R(y));
  }
};

// ---------------------------------------------------------------------------
// Lax pairs
// ---------------------------------------------------------------------------

inline LaxPair lax_pair(const TStarModel& m, const PcmSpectral& sd,
                        const TStarElem& j, cplx lm) {
  return {Mat(m.xi.mu - sd.O(lm, j)), Mat(-sd.O(lm, m.e_apply(j))), lm};
}

inline LaxPair lax_pair(const SLModel& m, const BiYbSpectral& sd, const Mat& j,
                        cplx lm) {
  return {Mat(m.xi - sd.O(lm, j)), Mat(-sd.O(lm, m.e_apply(j))), lm};
}

/// Finite-difference Lax-equation residual and isospectral drift along a
/// trajectory sampled at uniform dt.
template <class Model, class Spectral>
std::pair<double, double> lax_residual(const Model& m, const Spectral& sd,
                                       const Trajectory<Model>& traj, cplx lm) {
  double worst = 0.0;
  double drift = 0.0;
  if (traj.times.size() < 5) return {0.0, 0.0};
  const double dt = traj.times[1] - traj.times[0];
  std::vector<cplx> ref;
  std::vector<Mat> ls;
  ls.reserve(traj.currents.size());
  for (const auto& j : traj.currents) ls.push_back(lax_pair(m, sd, j, lm).L);
  for (size_t s = 2; s + 2 < traj.times.size(); ++s) {
    const LaxPair b = lax_pair(m, sd, traj.currents[s], lm);
    // Fourth-order centered difference (a Richardson refinement of the
    // three-point stencil).
    const Mat fd =
        (-ls[s + 2] + 8.0 * ls[s + 1] - 8.0 * ls[s - 1] + ls[s - 2]) / (12.0 * dt);
    worst = std::max(worst, (fd - bracket(b.L, b.M)).norm());
    const cplx t2 = (b.L * b.L).trace();
    const cplx t3 = (b.L * b.L * b.L).trace();
    if (ref.empty()) {
      ref = {t2, t3};
    } else {
      // Trace powers that start at (numerical) zero stay compared on an
      // absolute scale.
      drift = std::max(drift, std::abs(t2 - ref[0]) / std::max(1.0, std::abs(ref[0])));
      drift = std::max(drift, std::abs(t3 - ref[1]) / std::max(1.0, std::abs(ref[1])));
    }
  }
  return {worst, drift};
}

// ---------------------------------------------------------------------------
// Sufficient-condition verification
// ---------------------------------------------------------------------------

namespace detail {

inline cplx sample_lambda_pcm(Rng& rng) {
  for (;;) {
    const cplx lm(rng.uniform(-0.8, 0.8), rng.uniform(-0.8, 0.8));
    if (std::abs(1.0 - lm * lm) > 0.05) return lm;
  }
}

inline std::pair<cplx, cplx> sample_pair_pcm(Rng& rng) {
  for (;;) {
    const cplx lm = sample_lambda_pcm(rng);
    const cplx rho = sample_lambda_pcm(rng);
    if (std::abs(lm - rho) > 0.05) return {lm, rho};
  }
}

inline std::pair<cplx, cplx> sample_pair_biyb(Rng& rng, const BiYbSpectral& sd) {
  for (;;) {
    const cplx lm(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
    const cplx rho(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
    if (std::abs(sd.f0(lm) - sd.f0(rho)) > 0.05) return {lm, rho};
  }
}

inline ConditionReport finish(std::string id, int samples, uint64_t seed,
                              double max_res, double threshold) {
  return {std::move(id), samples, seed, max_res, threshold, max_res <= threshold};
}

}  // namespace detail

/// Verifies the five sufficient conditions plus adjointness for the chiral
/// data on T*SU(N). Draws are seeded; residuals are Frobenius norms.
inline std::vector<ConditionReport> verify_conditions(const TStarModel& m,
                                                      const PcmSpectral& sd,
                                                      int samples, uint64_t seed,
                                                      double threshold = 1e-10) {
  Rng rng(seed);
  const int N = m.N;
  const Mat zeta = m.xi.mu;
  double r_sucb = 0, r_sufcb = 0, r_suc2b = 0, r_1db = 0, r_2db = 0, r_adj = 0;

  for (int s = 0; s < samples; ++s) {
    const TStarElem x = random_tstar(rng, N);
    const Mat gx = random_su(rng, N);
    const Mat gy = random_su(rng, N);
    const auto [lm, rho] = detail::sample_pair_pcm(rng);

    // ad_xi O(lm) = O(lm) ad_xi.
    r_sucb = std::max(r_sucb, (bracket(zeta, sd.O(lm, x)) -
                               sd.O(lm, m.lie(m.xi, x))).norm());

    // [O x, O E x] = O [x, E x].
    const TStarElem ex = m.e_apply(x);
    r_sufcb = std::max(r_sufcb, (bracket(sd.O(lm, x), sd.O(lm, ex)) -
                                 sd.O(lm, m.lie(x, ex))).norm());

    // ad_xi rhat = rhat ad_xi.
    r_suc2b = std::max(r_suc2b, (bracket(zeta, sd.rhat(lm, rho, gy)) -
                                 sd.rhat(lm, rho, bracket(zeta, gy))).norm());

    // [O+ x, O+ y] + O+(lm)[x, rhat(lm,rho) y] + O+(rho)[rhat(rho,lm) x, y] = 0.
    const TStarElem odx = sd.O_dagger(lm, gx);
    const TStarElem ody = sd.O_dagger(rho, gy);
    const TStarElem one_db =
        bracket_tstar(odx, ody) +
        sd.O_dagger(lm, bracket(gx, sd.rhat(lm, rho, gy))) +
        sd.O_dagger(rho, bracket(sd.rhat(rho, lm, gx), gy));
    r_1db = std::max(r_1db, one_db.norm());

    // (O+ x, O+ y) + (x, rhat(lm,rho) y) + (rhat(rho,lm) x, y) = 0.
    const cplx two_db = form_tstar_c(odx, ody) +
                        killing_form_c(gx, sd.rhat(lm, rho, gy)) +
                        killing_form_c(sd.rhat(rho, lm, gx), gy);
    r_2db = std::max(r_2db, std::abs(two_db));

    // (O x, y)_G = (x, O+ y)_D.
    const cplx adj = killing_form_c(sd.O(lm, x), gy) -
                     form_tstar_c(x, sd.O_dagger(lm, gy));
    r_adj = std::max(r_adj, std::abs(adj));
  }

  return {detail::finish("sucb", samples, seed, r_sucb, threshold),
          detail::finish("sufcb", samples, seed, r_sufcb, threshold),
          detail::finish("suc2b", samples, seed, r_suc2b, threshold),
          detail::finish("1db", samples, seed, r_1db, threshold),
          detail::finish("2db", samples, seed, r_2db, threshold),
          detail::finish("adjointness", samples, seed, r_adj, threshold)};
}

/// The same suite for the deformed data on the SL(N,C) double.
inline std::vector<ConditionReport> verify_conditions(const SLModel& m,
                                                      const BiYbSpectral& sd,
                                                      int samples, uint64_t seed,
                                                      double threshold = 1e-10) {
  Rng rng(seed);
  const int N = m.N;
  double r_sucb = 0, r_sufcb = 0, r_suc2b = 0, r_1db = 0, r_2db = 0, r_adj = 0;

  for (int s = 0; s < samples; ++s) {
    const Mat x = random_traceless(rng, N);
    const Mat gx = random_su(rng, N);
    const Mat gy = random_su(rng, N);
    const auto [lm, rho] = detail::sample_pair_biyb(rng, sd);

    r_sucb = std::max(r_sucb, (bracket(m.xi, sd.O(lm, x)) -
                               sd.O(lm, bracket(m.xi, x))).norm());

    const Mat ex = m.e_apply(x);
    r_sufcb = std::max(r_sufcb, (bracket(sd.O(lm, x), sd.O(lm, ex)) -
                                 sd.O(lm, bracket(x, ex))).norm());

    r_suc2b = std::max(r_suc2b, (bracket(m.xi, sd.rhat(lm, rho, gy)) -
                                 sd.rhat(lm, rho, bracket(m.xi, gy))).norm());

    const CElem odx = sd.O_dagger(lm, gx);
    const CElem ody = sd.O_dagger(rho, gy);
    const CElem one_db = cbracket(odx, ody) +
                         sd.O_dagger_c(lm, bracket(gx, sd.rhat(lm, rho, gy))) +
                         sd.O_dagger_c(rho, bracket(sd.rhat(rho, lm, gx), gy));
    r_1db = std::max(r_1db, one_db.norm());

    const cplx two_db = cform_sl(odx, ody, m.eta) +
                        killing_form_c(gx, sd.rhat(lm, rho, gy)) +
                        killing_form_c(sd.rhat(rho, lm, gx), gy);
    r_2db = std::max(r_2db, std::abs(two_db));

    const cplx adj = killing_form_c(sd.O(lm, x), gy) -
                     cform_sl(CElem::embed(x), sd.O_dagger(lm, gy), m.eta);
    r_adj = std::max(r_adj, std::abs(adj));
  }

  return {detail::finish("sucb", samples, seed, r_sucb, threshold),
          detail::finish("sufcb", samples, seed, r_sufcb, threshold),
          detail::finish("suc2b", samples, seed, r_suc2b, threshold),
          detail::finish("1db", samples, seed, r_1db, threshold),
          detail::finish("2db", samples, seed, r_2db, threshold),
          detail::finish("adjointness", samples, seed, r_adj, threshold)};
}

// ---------------------------------------------------------------------------
// Fundamental r-matrix identity
// ---------------------------------------------------------------------------

/// Both sides of the Poisson-bracket identity for Lax matrix elements:
/// lhs per the current algebra, rhs per the r-matrix combination.
inline std::pair<cplx, cplx> rmatrix_identity(const TStarModel& m,
                                              const PcmSpectral& sd,
                                              const TStarElem& j, const Mat& x,
                                              const Mat& y, cplx lm, cplx rho) {
  const TStarElem odx = sd.O_dagger(lm, x);
  const TStarElem ody = sd.O_dagger(rho, y);
  const cplx lhs = form_tstar_c(j, bracket_tstar(odx, ody)) +
                   form_tstar_c(odx, bracket_tstar(m.xi, ody));
  const cplx rhs = -killing_form_c(sd.O(lm, j), bracket(x, sd.rhat(lm, rho, y))) -
                   killing_form_c(sd.O(rho, j), bracket(sd.rhat(rho, lm, x), y)) +
                   killing_form_c(bracket(m.xi.mu, x), sd.rhat(lm, rho, y)) -
                   killing_form_c(bracket(m.xi.mu, y), sd.rhat(rho, lm, x));
  return {lhs, rhs};
}

inline std::pair<cplx, cplx> rmatrix_identity(const SLModel& m,
                                              const BiYbSpectral& sd, const Mat& j,
                                              const Mat& x, const Mat& y, cplx lm,
                                              cplx rho) {
  const CElem odx = sd.O_dagger(lm, x);
  const CElem ody = sd.O_dagger(rho, y);
  const CElem xi_ody = {bracket(m.xi, ody.re), bracket(m.xi, ody.im)};
  const cplx lhs = cform_sl(CElem::embed(j), cbracket(odx, ody), m.eta) +
                   cform_sl(odx, xi_ody, m.eta);
  const cplx rhs = -killing_form_c(sd.O(lm, j), bracket(x, sd.rhat(lm, rho, y))) -
                   killing_form_c(sd.O(rho, j), bracket(sd.rhat(rho, lm, x), y)) +
                   killing_form_c(bracket(m.xi, x), sd.rhat(lm, rho, y)) -
                   killing_form_c(bracket(m.xi, y), sd.rhat(rho, lm, x));
  return {lhs, rhs};
}

// ---------------------------------------------------------------------------
// r-matrix as a tensor over a basis of the isotropic half
// ---------------------------------------------------------------------------

/// Coefficients t_{CB} with r = sum t_{CB} T^C (x) T^B, built from the Gram
/// matrix C^{AB} = (T^A, T^B) of the supplied basis.
template <class Spectral>
Eigen::MatrixXcd rmatrix_tensor(const Spectral& sd, cplx lm, cplx rho,
                                const RealBasis& basis) {
  const int d = static_cast<int>(basis.generators.size());
  Eigen::MatrixXcd mcoef(d, d);  // rhat T^A over T^C
  for (int a = 0; a < d; ++a)
    mcoef.col(a) = complex_coords(basis, sd.rhat(lm, rho, basis.generators[a]));
  const Eigen::MatrixXcd gram = basis.gram.cast<cplx>();
  return mcoef * gram.inverse();
}

/// Contraction of the tensor against (x, y) through the Gram pairing; equals
/// (x, rhat(lm,rho) y).
inline cplx rmatrix_contract(const Eigen::MatrixXcd& t, const RealBasis& basis,
                             const Mat& x, const Mat& y) {
  const int d = static_cast<int>(basis.generators.size());
  CVec px(d), py(d);
  for (int i = 0; i < d; ++i) {
    px(i) = killing_form_c(x, basis.generators[i]);
    py(i) = killing_form_c(y, basis.generators[i]);
  }
  return px.transpose() * t * py;
}

}  // namespace emodel
