#pragma once

#include <Eigen/Dense>
#include <vector>

#include "emodel/dynamics.hpp"

// The T*SU(2) model with zeta = diag(i,-i): the spherical pendulum. Also the
// second-order checks of the chiral model on any SU(N): the Bianchi identity
// and the equation of motion extracted from the lambda-expansion of the Lax
// equation.

namespace emodel {

using Vec3 = Eigen::Vector3d;

inline Mat pendulum_zeta() {
  Mat z = Mat::Zero(2, 2);
  z(0, 0) = cplx(0, 1);
  z(1, 1) = cplx(0, -1);
  return z;
}

inline TStarModel pendulum_model() {
  return TStarModel(2, pendulum_zeta(), "pendulum");
}

struct PendulumState {
  Vec3 x;  ///< unit vector on the sphere
  Vec3 v;  ///< velocity, tangent to the sphere
};

/// Coordinates of an su(2) element n = i (a . sigma).
inline Vec3 su2_coords(const Mat& n) {
  return {n(0, 1).imag(), n(0, 1).real(), n(0, 0).imag()};
}

inline Mat su2_from_coords(const Vec3& a) {
  Mat n(2, 2);
  n(0, 0) = cplx(0, a(2));
  n(0, 1) = cplx(a(1), a(0));
  n(1, 0) = cplx(-a(1), a(0));
  n(1, 1) = cplx(0, -a(2));
  return n;
}

/// Maps a phase-space point of the T*SU(2) model to sphere coordinates:
/// x from Ad_k zeta = i (x . sigma), v from the current's momentum part.
inline PendulumState pendulum_state(const TStarModel& m, const TStarPoint& l) {
  const TStarElem j = m.current(l);
  const Vec3 x = su2_coords(Mat(m.xi.mu - j.mu));  // Ad_k zeta
  const Vec3 y = su2_coords(j.nu);
  // d/dt (Ad_k zeta) = [Ad_k zeta, j_nu]; in coordinates [ia.s, ib.s] maps to
  // -2 a x b, so v = -2 x cross y.
  return {x, -2.0 * x.cross(y)};
}

/// Right-hand side of the independent constrained-pendulum oracle:
/// xdd = 4 e3 - (4 x3 + |v|^2) x on the unit sphere.
inline Eigen::Matrix<double, 6, 1> pendulum_oracle_rhs(
    const Eigen::Matrix<double, 6, 1>& s) {
  const Vec3 x = s.head<3>(), v = s.tail<3>();
  Eigen::Matrix<double, 6, 1> d;
  d.head<3>() = v;
  d.tail<3>() = 4.0 * Vec3::UnitZ() - (4.0 * x(2) + v.squaredNorm()) * x;
  return d;
}

inline double pendulum_oracle_energy(const Vec3& x, const Vec3& v) {
  return 0.5 * v.squaredNorm() - 4.0 * x(2);
}

/// RK4 integration of the oracle; returns (x, v) samples at step dt.
inline std::vector<PendulumState> pendulum_oracle_integrate(PendulumState s0,
                                                            double t_end,
                                                            double dt) {
  Eigen::Matrix<double, 6, 1> y;
  y << s0.x, s0.v;
  const int nsteps = static_cast<int>(std::llround(t_end / dt));
  std::vector<PendulumState> out;
  out.reserve(nsteps + 1);
  for (int step = 0; step <= nsteps; ++step) {
    out.push_back({y.head<3>(), y.tail<3>()});
    if (step == nsteps) break;
    const auto k1 = pendulum_oracle_rhs(y);
    const auto k2 = pendulum_oracle_rhs(Eigen::Matrix<double, 6, 1>(y + 0.5 * dt * k1));
    const auto k3 = pendulum_oracle_rhs(Eigen::Matrix<double, 6, 1>(y + 0.5 * dt * k2));
    const auto k4 = pendulum_oracle_rhs(Eigen::Matrix<double, 6, 1>(y + dt * k3));
    y += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Second-order chiral-model residuals from the Lax lambda-expansion.
// ---------------------------------------------------------------------------

/// Given uniformly sampled unitaries k(t), evaluates the two lambda
/// coefficients of the Lax equation: the Bianchi combination (identically
/// zero for any smooth path) and the second-order equation of motion (zero
/// on solutions only). Returns their max finite-difference residuals.
inline std::pair<double, double> pcm_second_order_residual(
    const Mat& zeta, const std::vector<Mat>& k_samples, double dt) {
  const int N = static_cast<int>(zeta.rows());
  auto [p, pperp] = stabilizer_projectors(zeta);
  const size_t n = k_samples.size();
  if (n < 5) return {0.0, 0.0};

  auto deriv = [&](const std::vector<Mat>& f, size_t s) {
    return Mat((-f[s + 2] + 8.0 * f[s + 1] - 8.0 * f[s - 1] + f[s - 2]) /
               (12.0 * dt));
  };

  // w = zeta - Ad_k zeta and q = Ad_k Pperp(k^-1 kdot).
  std::vector<Mat> w(n), q(n);
  for (size_t s = 2; s + 2 < n; ++s) {
    const Mat& k = k_samples[s];
    const Mat kdot = deriv(k_samples, s);
    const Mat body = k.adjoint() * kdot;
    w[s] = zeta - k * zeta * k.adjoint();
    q[s] = k * pperp.apply(body) * k.adjoint();
  }
  double bia = 0.0, te = 0.0;
  for (size_t s = 4; s + 4 < n; ++s) {
    const Mat wdot = deriv(w, s);
    const Mat qdot = deriv(q, s);
    bia = std::max(bia, (-wdot + bracket(zeta, q[s]) - bracket(w[s], q[s])).norm());
    te = std::max(te, (bracket(zeta, w[s]) - qdot).norm());
  }
  (void)N;
  return {bia, te};
}

}  // namespace emodel
