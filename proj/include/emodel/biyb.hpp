#pragma once

// Second-order bi-Yang-Baxter mechanics on K = SU(N): the operator block
// 1_perp - Pperp (eta R + mu R_k)^2 Pperp on the orthogonal complement of the
// stabilizer of xi, the on-shell momentum and multiplier, the deformed
// Lagrangian, the Hamiltonian in (k, rho') variables, and the closed forms:
// SU(2) in sphere coordinates, the SU(3)/CP^2 pipeline in the (a, b, theta)
// parametrization, and the mu = 0 CP^N chart/homogeneous expressions.
//
// Conventions: k' k^-1 := xi - Ad_k xi (so k^-1 k' = Ad_{k^-1} xi - xi) and
// R_k := Ad_{k^-1} R Ad_k.

#include <cmath>
#include <stdexcept>
#include <string>

#include "emodel/algebra.hpp"
#include "emodel/cpn.hpp"

namespace emodel {

inline Mat kinv_kprime(const Mat& k, const Mat& xi) {
  check_unitary(k);
  return k.adjoint() * xi * k - xi;
}

inline Mat kprime_kinv(const Mat& k, const Mat& xi) {
  check_unitary(k);
  return xi - k * xi * k.adjoint();
}

/// Per-(xi, eta, mu) machinery for the deformed flag-manifold mechanics.
struct BiYbOps {
  Mat xi;
  double eta;
  double mu;
  RealBasis basis;
  LinearMap pstab;
  LinearMap pperp;

  BiYbOps(Mat xi_, double eta_, double mu_)
      : xi(std::move(xi_)), eta(eta_), mu(mu_) {
    if (!is_su(xi)) throw std::invalid_argument("BiYbOps: xi must lie in su(N)");
    if (eta < 0.0) throw std::invalid_argument("BiYbOps: eta must be >= 0");
    basis = su_basis(int(xi.rows()));
    auto projs = stabilizer_projectors(xi);
    pstab = std::move(projs.first);
    pperp = std::move(projs.second);
  }

  Mat deformer(const Mat& k, const Mat& x) const {
    return eta * yang_baxter_R(x) + mu * r_twisted(k, x);
  }

  /// V(k) = k^-1 kdot - (eta R + mu R_k) k^-1 k'.
  Mat V(const Mat& k, const Mat& kdot) const {
    const Mat body = k.adjoint() * kdot;
    return body - deformer(k, kinv_kprime(k, xi));
  }

  /// Coordinate matrix of P + Pperp - Pperp (eta R + mu R_k)^2 Pperp, which
  /// acts as the identity on the stabilizer and as the deformation block on
  /// its complement.
  RMat block_matrix(const Mat& k) const {
    auto op = [&](const Mat& x) {
      const Mat xp = pperp.apply(x);
      return Mat(pstab.apply(x) + xp -
                 pperp.apply(deformer(k, deformer(k, xp))));
    };
    return make_linear_map(op, basis, basis).matrix;
  }

  double block_condition(const Mat& k) const {
    Eigen::JacobiSVD<RMat> svd(block_matrix(k));
    return svd.singularValues().maxCoeff() / svd.singularValues().minCoeff();
  }

  /// Inverse deformation block applied to a perpendicular element.
  Mat block_solve(const Mat& k, const Mat& rhs_perp) const {
    const RMat t = block_matrix(k);
    Eigen::FullPivLU<RMat> lu(t);
    if (!lu.isInvertible()) {
      throw std::runtime_error(
          "BiYbOps: singular deformation block, condition number " +
          std::to_string(block_condition(k)));
    }
    const RVec sol = lu.solve(real_coords(basis, rhs_perp));
    return pperp.apply(from_coords(basis, sol));
  }

  /// On-shell momentum rho'(k) = -(1_perp - Pperp(eta R + mu R_k)^2 Pperp)^-1
  /// Pperp V(k).
  Mat rho_prime(const Mat& k, const Mat& kdot) const {
    return -block_solve(k, pperp.apply(V(k, kdot)));
  }

  /// On-shell multiplier A(k) = P V + P (eta R + mu R_k)^2 Pperp rho'-solve.
  Mat multiplier(const Mat& k, const Mat& kdot) const {
    const Mat v = V(k, kdot);
    const Mat inv = block_solve(k, pperp.apply(v));
    return pstab.apply(v) + pstab.apply(deformer(k, deformer(k, inv)));
  }

  /// Second-order integrand
  ///   1/2 tr(-Pperp V block^-1 Pperp V + (k^-1 k')^2).
  double lagrangian(const Mat& k, const Mat& kdot) const {
    const Mat vp = pperp.apply(V(k, kdot));
    const Mat inv = block_solve(k, vp);
    const Mat kk = kinv_kprime(k, xi);
    return 0.5 * (-killing_form(vp, inv) + killing_form(kk, kk));
  }

  /// Hamiltonian in (k, rho') variables:
  ///   -1/2 tr(rho'^2 + (k^-1 k' + (eta R + mu R_k) rho')^2).
  double hamiltonian(const Mat& k, const Mat& rho_p) const {
    const Mat shifted = kinv_kprime(k, xi) + deformer(k, rho_p);
    return -0.5 * (killing_form(rho_p, rho_p) +
                   killing_form(shifted, shifted));
  }

  /// Group-theoretic current of the Iwasawa-factorized configuration,
  ///   l' l^-1 = k' k^-1 + eta (R_{k^-1} - i)(k rho' k^-1),
  /// with R_{k^-1} = Ad_k R Ad_{k^-1}.
  Mat current(const Mat& k, const Mat& rho_p) const {
    const Mat body = yang_baxter_R(rho_p) - cplx(0.0, 1.0) * rho_p;
    return kprime_kinv(k, xi) + eta * (k * body * k.adjoint());
  }
};

// ---------------------------------------------------------------------------
// SU(2) closed form on the sphere x1^2 + x2^2 + x3^2 = 1.

inline Eigen::Vector3d su2_sphere_point(cplx u, cplx v) {
  const cplx w = 2.0 * u * std::conj(v);
  return {w.real(), -w.imag(), std::norm(u) - std::norm(v)};
}

inline Eigen::Vector3d su2_sphere_velocity(cplx u, cplx v, cplx udot,
                                           cplx vdot) {
  const cplx w = 2.0 * (udot * std::conj(v) + u * std::conj(vdot));
  const double x3dot = 2.0 * (std::conj(u) * udot).real() -
                       2.0 * (std::conj(v) * vdot).real();
  return {w.real(), -w.imag(), x3dot};
}

inline Mat su2_from_uv(cplx u, cplx v) {
  Mat k(2, 2);
  k << u, -std::conj(v), v, std::conj(u);
  return k;
}

inline Mat su2_from_uv_velocity(cplx udot, cplx vdot) {
  Mat k(2, 2);
  k << udot, -std::conj(vdot), vdot, std::conj(udot);
  return k;
}

/// Deformed spherical-pendulum integrand in Cartesian sphere coordinates.
inline double biyb_su2_lagrangian(const Eigen::Vector3d& x,
                                  const Eigen::Vector3d& xdot, double eta,
                                  double mu) {
  const double den = 1.0 + eta * eta + mu * mu + 2.0 * mu * eta * x(2);
  const double ang = x(0) * xdot(1) - x(1) * xdot(0);
  const double kin = xdot.squaredNorm() +
                     mu * mu * ang * ang /
                         (1.0 + (eta + mu * x(2)) * (eta + mu * x(2)));
  const double pot = 4.0 * (x(2) - 1.0) *
                     (2.0 - (eta - mu) * (eta - mu) * (x(2) - 1.0));
  return 0.25 * (kin + pot) / den;
}

/// The same integrand in spherical coordinates.
inline double biyb_su2_lagrangian_spherical(double theta, double phi,
                                            double thetadot, double phidot,
                                            double eta, double mu) {
  (void)phi;
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  const double den = 1.0 + eta * eta + mu * mu + 2.0 * mu * eta * c;
  const double den_phi = 1.0 + eta * eta + mu * mu * c * c + 2.0 * mu * eta * c;
  return 0.25 * (thetadot * thetadot / den +
                 s * s * phidot * phidot / den_phi) +
         (c - 1.0) * (2.0 - (eta - mu) * (eta - mu) * (c - 1.0)) / den;
}

/// Exact pointwise bridge between the group-level integrand and the sphere
/// closed form:
///   L_group(k, kdot) = biyb_su2_lagrangian(x, xdot)
///                      + (eta + mu) x3dot / (1 + eta^2 + mu^2 + 2 mu eta x3).
/// The extra piece is d/dt of a function of x3 alone, so both integrands give
/// the same dynamics.
inline double biyb_su2_total_derivative(const Eigen::Vector3d& x,
                                        const Eigen::Vector3d& xdot, double eta,
                                        double mu) {
  const double den = 1.0 + eta * eta + mu * mu + 2.0 * mu * eta * x(2);
  return (eta + mu) * xdot(2) / den;
}

// ---------------------------------------------------------------------------
// SU(3)/CP^2 closed-form pipeline in the dense parametrization
//   k = [[a,-conj b,0],[b,conj a,0],[0,0,1]] . rot_y(theta),  |a|^2+|b|^2 = 1.

struct Su3Config {
  cplx a, b;
  double theta;
  cplx adot, bdot;
  double thetadot;
};

inline void su3_check_config(const Su3Config& cf) {
  if (std::abs(std::norm(cf.a) + std::norm(cf.b) - 1.0) > 1e-10) {
    throw std::invalid_argument("Su3Config: need |a|^2 + |b|^2 = 1");
  }
}

inline Mat su3_config_k(const Su3Config& cf) {
  su3_check_config(cf);
  Mat left = Mat::Zero(3, 3);
  left(0, 0) = cf.a;
  left(0, 1) = -std::conj(cf.b);
  left(1, 0) = cf.b;
  left(1, 1) = std::conj(cf.a);
  left(2, 2) = 1.0;
  Mat rot = Mat::Zero(3, 3);
  const double c = std::cos(cf.theta), s = std::sin(cf.theta);
  rot(0, 0) = c;
  rot(0, 2) = s;
  rot(1, 1) = 1.0;
  rot(2, 0) = -s;
  rot(2, 2) = c;
  return left * rot;
}

inline Mat su3_config_kdot(const Su3Config& cf) {
  su3_check_config(cf);
  Mat leftdot = Mat::Zero(3, 3);
  leftdot(0, 0) = cf.adot;
  leftdot(0, 1) = -std::conj(cf.bdot);
  leftdot(1, 0) = cf.bdot;
  leftdot(1, 1) = std::conj(cf.adot);
  Mat left = Mat::Zero(3, 3);
  left(0, 0) = cf.a;
  left(0, 1) = -std::conj(cf.b);
  left(1, 0) = cf.b;
  left(1, 1) = std::conj(cf.a);
  left(2, 2) = 1.0;
  const double c = std::cos(cf.theta), s = std::sin(cf.theta);
  Mat rot = Mat::Zero(3, 3), rotdot = Mat::Zero(3, 3);
  rot(0, 0) = c;
  rot(0, 2) = s;
  rot(1, 1) = 1.0;
  rot(2, 0) = -s;
  rot(2, 2) = c;
  rotdot(0, 0) = -s * cf.thetadot;
  rotdot(0, 2) = c * cf.thetadot;
  rotdot(2, 0) = -c * cf.thetadot;
  rotdot(2, 2) = -s * cf.thetadot;
  return leftdot * rot + left * rotdot;
}

/// Scalars entering the 4x4 deformation block and its closed-form inverse.
struct Su3Scalars {
  double sigma, tau, c, s, gamma, xs;
  double eps1, eps2, p, q, beta, delta;
  double d1, d2;  ///< Delta_1, Delta_2
};

inline Su3Scalars su3_scalars(const Su3Config& cf, double eta, double mu) {
  su3_check_config(cf);
  Su3Scalars sc;
  const cplx ab = cf.a * cf.b;
  sc.sigma = ab.imag();
  sc.tau = -ab.real();
  sc.c = std::cos(cf.theta);
  sc.s = std::sin(cf.theta);
  sc.gamma = std::cos(2.0 * cf.theta);
  sc.xs = std::sin(2.0 * cf.theta);
  const double ab2 = sc.sigma * sc.sigma + sc.tau * sc.tau;  // |a|^2 |b|^2
  sc.eps1 = 1.0 + (eta + mu * sc.gamma) * (eta + mu * sc.gamma) +
            mu * mu * sc.xs * sc.xs * ab2;
  sc.eps2 = 1.0 + eta * eta + mu * mu + 2.0 * eta * mu * sc.gamma;
  sc.p = mu * sc.xs * sc.s * (eta - mu * (std::norm(cf.a) - std::norm(cf.b)));
  sc.q = eta * mu * sc.xs * sc.s;
  sc.beta = 1.0 + (eta + mu) * (eta + mu) -
            4.0 * eta * mu * sc.s * sc.s * std::norm(cf.a);
  sc.delta = -4.0 * mu * mu * sc.s * sc.s;
  sc.d1 = ab2 / (sc.eps1 * sc.beta + (sc.eps1 * sc.delta - sc.p * sc.p) * ab2);
  sc.d2 = ab2 / (sc.eps2 * sc.beta - sc.q * sc.q * ab2);
  return sc;
}

/// The 8x8 Yang-Baxter table in the (x1..x7, y) encoding.
inline RMat su3_table_R() {
  RMat r = RMat::Zero(8, 8);
  r(0, 1) = -1.0;
  r(1, 0) = 1.0;
  r(3, 4) = -1.0;
  r(4, 3) = 1.0;
  r(5, 6) = -1.0;
  r(6, 5) = 1.0;
  return r;
}

inline RMat su3_table_Pperp() {
  RMat p = RMat::Zero(8, 8);
  for (int i = 3; i <= 6; ++i) p(i, i) = 1.0;
  return p;
}

/// Ad_k as the product of the (a,b)-rotation and theta-rotation tables.
inline RMat su3_table_adk(const Su3Config& cf) {
  su3_check_config(cf);
  const double a1 = cf.a.real(), a2 = cf.a.imag();
  const double b1 = cf.b.real(), b2 = cf.b.imag();
  const double c = std::cos(cf.theta), s = std::sin(cf.theta);
  RMat left = RMat::Zero(8, 8);
  left(0, 0) = 2 * a1 * a1 + 2 * b2 * b2 - 1;
  left(0, 1) = 2 * (a1 * a2 - b1 * b2);
  left(0, 2) = 2 * (a1 * b1 + a2 * b2);
  left(1, 0) = -2 * (a1 * a2 + b1 * b2);
  left(1, 1) = 2 * a1 * a1 + 2 * b1 * b1 - 1;
  left(1, 2) = 2 * (a1 * b2 - a2 * b1);
  left(2, 0) = 2 * (a2 * b2 - a1 * b1);
  left(2, 1) = -2 * (a1 * b2 + a2 * b1);
  left(2, 2) = 2 * a1 * a1 + 2 * a2 * a2 - 1;
  left(3, 3) = a1;
  left(3, 4) = a2;
  left(3, 5) = -b1;
  left(3, 6) = b2;
  left(4, 3) = -a2;
  left(4, 4) = a1;
  left(4, 5) = -b2;
  left(4, 6) = -b1;
  left(5, 3) = b1;
  left(5, 4) = b2;
  left(5, 5) = a1;
  left(5, 6) = -a2;
  left(6, 3) = -b2;
  left(6, 4) = b1;
  left(6, 5) = a2;
  left(6, 6) = a1;
  left(7, 7) = 1.0;
  RMat rot = RMat::Zero(8, 8);
  rot(0, 0) = c;
  rot(0, 5) = s;
  rot(1, 1) = c;
  rot(1, 6) = -s;
  rot(2, 2) = 1 - s * s / 2;
  rot(2, 3) = s * c;
  rot(2, 7) = -3 * s * s / 2;
  rot(3, 2) = -s * c;
  rot(3, 3) = 1 - 2 * s * s;
  rot(3, 7) = -3 * s * c;
  rot(4, 4) = 1.0;
  rot(5, 0) = -s;
  rot(5, 5) = c;
  rot(6, 1) = s;
  rot(6, 6) = c;
  rot(7, 2) = -s * s / 2;
  rot(7, 3) = s * c;
  rot(7, 7) = 1 - 3 * s * s / 2;
  return left * rot;
}

/// The conjugated Yang-Baxter table R_k in the x-encoding.
inline RMat su3_table_rk(const Su3Config& cf) {
  const Su3Scalars v = su3_scalars(cf, 0.0, 0.0);
  const double c = v.c, s = v.s, sg = v.sigma, ta = v.tau;
  const double aa = std::norm(cf.a);
  RMat r = RMat::Zero(8, 8);
  r(0, 1) = 1 - 2 * c * c * aa;
  r(0, 2) = -c * (c * c + 1) * sg;
  r(0, 3) = -2 * c * c * s * sg;
  r(0, 6) = 2 * c * s * aa;
  r(0, 7) = 3 * c * s * s * sg;
  r(1, 0) = 2 * c * c * aa - 1;
  r(1, 2) = -c * (c * c + 1) * ta;
  r(1, 3) = -2 * c * c * s * ta;
  r(1, 5) = 2 * c * s * aa;
  r(1, 7) = 3 * c * s * s * ta;
  r(2, 0) = c * (c * c + 1) * sg;
  r(2, 1) = c * (c * c + 1) * ta;
  r(2, 4) = c * s;
  r(2, 5) = s * (c * c + 1) * sg;
  r(2, 6) = -s * (c * c + 1) * ta;
  r(3, 0) = 2 * c * c * s * sg;
  r(3, 1) = 2 * c * c * s * ta;
  r(3, 4) = s * s - c * c;
  r(3, 5) = 2 * c * s * s * sg;
  r(3, 6) = -2 * c * s * s * ta;
  r(4, 2) = -c * s;
  r(4, 3) = c * c - s * s;
  r(4, 7) = -3 * c * s;
  r(5, 1) = -2 * c * s * aa;
  r(5, 2) = -s * (c * c + 1) * sg;
  r(5, 3) = -2 * c * s * s * sg;
  r(5, 6) = -1 + 2 * s * s * aa;
  r(5, 7) = 3 * s * s * s * sg;
  r(6, 0) = -2 * c * s * aa;
  r(6, 2) = s * (c * c + 1) * ta;
  r(6, 3) = 2 * c * s * s * ta;
  r(6, 5) = 1 - 2 * s * s * aa;
  r(6, 7) = -3 * s * s * s * ta;
  r(7, 0) = -c * s * s * sg;
  r(7, 1) = -c * s * s * ta;
  r(7, 4) = c * s;
  r(7, 5) = -s * s * s * sg;
  r(7, 6) = s * s * s * ta;
  return r;
}

/// The 4x4 block 1_perp - Pperp (eta R + mu R_k)^2 Pperp on (x4, x5, x6, x7).
inline Eigen::Matrix4d su3_block(const Su3Config& cf, double eta, double mu) {
  const Su3Scalars v = su3_scalars(cf, eta, mu);
  Eigen::Matrix4d m;
  m << v.eps1, 0, v.p * v.tau, v.p * v.sigma,
       0, v.eps2, -v.q * v.sigma, v.q * v.tau,
       v.p * v.tau, -v.q * v.sigma, v.beta + v.delta * v.tau * v.tau,
       v.delta * v.tau * v.sigma,
       v.p * v.sigma, v.q * v.tau, v.delta * v.tau * v.sigma,
       v.beta + v.delta * v.sigma * v.sigma;
  return m;
}

/// Closed-form inverse of the block via the sigma/tau rotation factorization.
inline Eigen::Matrix4d su3_block_inverse(const Su3Config& cf, double eta,
                                         double mu) {
  const Su3Scalars v = su3_scalars(cf, eta, mu);
  const double ab2 = v.sigma * v.sigma + v.tau * v.tau;
  Eigen::Matrix4d rot = Eigen::Matrix4d::Identity();
  rot(2, 2) = v.sigma / ab2;
  rot(2, 3) = v.tau / ab2;
  rot(3, 2) = -v.tau / ab2;
  rot(3, 3) = v.sigma / ab2;
  Eigen::Matrix4d mid = Eigen::Matrix4d::Zero();
  mid(0, 0) = v.d1 * (v.beta / ab2 + v.delta);
  mid(0, 3) = -v.d1 * v.p;
  mid(1, 1) = v.d2 * v.beta / ab2;
  mid(1, 2) = v.d2 * v.q;
  mid(2, 1) = v.d2 * v.q;
  mid(2, 2) = v.d2 * v.eps2;
  mid(3, 0) = -v.d1 * v.p;
  mid(3, 3) = v.d1 * v.eps1;
  return rot * mid * rot.transpose();
}

/// Projected velocity column (V4, V5, V6, V7).
inline Eigen::Vector4d su3_V_column(const Su3Config& cf, double eta,
                                    double mu) {
  const Su3Scalars v = su3_scalars(cf, eta, mu);
  const cplx aa = std::conj(cf.a) * cf.adot + std::conj(cf.b) * cf.bdot;
  const cplx abdot = cf.a * cf.bdot - cf.adot * cf.b;
  Eigen::Vector4d out;
  out(0) = v.s * v.c * aa.imag();
  out(1) = cf.thetadot + v.s * v.c * aa.real() - 3.0 * (eta + mu) * v.s * v.c;
  out(2) = v.s * abdot.imag() + 3.0 * mu * v.sigma * v.s * v.s * v.s;
  out(3) = v.s * abdot.real() - 3.0 * mu * v.tau * v.s * v.s * v.s;
  return out;
}

/// Rotated column (W4, W5, W6, W7) with its closed form
///   W4 = sc Im(conj(a) adot + conj(b) bdot), W5 = thetadot - 3sc(eta+mu),
///   W6 = s Re(bdot/b - adot/a) + 3 mu s^3, W7 = s Im(bdot/b - adot/a).
inline Eigen::Vector4d su3_W_column(const Su3Config& cf, double eta,
                                    double mu) {
  const Su3Scalars v = su3_scalars(cf, eta, mu);
  const double ab2 = v.sigma * v.sigma + v.tau * v.tau;
  const Eigen::Vector4d vc = su3_V_column(cf, eta, mu);
  Eigen::Vector4d w;
  w(0) = vc(0);
  w(1) = vc(1);
  w(2) = (v.sigma * vc(2) - v.tau * vc(3)) / ab2;
  w(3) = -(v.tau * vc(2) + v.sigma * vc(3)) / ab2;
  return w;
}

/// Quadratic form -1/2 tr(Pperp V block^-1 Pperp V) in the W variables.
inline double su3_quadratic_form(const Su3Config& cf, double eta, double mu) {
  const Su3Scalars v = su3_scalars(cf, eta, mu);
  const double ab2 = v.sigma * v.sigma + v.tau * v.tau;
  const Eigen::Vector4d w = su3_W_column(cf, eta, mu);
  Eigen::Matrix4d mid = Eigen::Matrix4d::Zero();
  mid(0, 0) = v.d1 * (v.beta / ab2 + v.delta);
  mid(0, 3) = v.d1 * v.p;
  mid(1, 1) = v.d2 * v.beta / ab2;
  mid(1, 2) = v.d2 * v.q;
  mid(2, 1) = v.d2 * v.q;
  mid(2, 2) = v.d2 * v.eps2;
  mid(3, 0) = v.d1 * v.p;
  mid(3, 3) = v.d1 * v.eps1;
  return w.dot(mid * w);
}

/// Closed-form CP^2 integrand including the -9 sin^2(theta) potential.
inline double su3_closed_form_lagrangian(const Su3Config& cf, double eta,
                                         double mu) {
  const Su3Scalars v = su3_scalars(cf, eta, mu);
  return su3_quadratic_form(cf, eta, mu) - 9.0 * v.s * v.s;
}

// ---------------------------------------------------------------------------
// mu = 0 Yang-Baxter CP^N closed forms.

/// Chart integrand
///   |D chi - eta (N+1) sqrt(1-|chi|^2) chi|^2 / (1+eta^2) - (N+1)^2 |chi|^2.
inline double yb_cpn_lagrangian_chart(const CVec& chi, const CVec& chidot,
                                      double eta) {
  cpn_check_chart(chi);
  const double np1 = double(chi.size() + 1);
  const double s = std::sqrt(1.0 - chi.squaredNorm());
  const CVec shifted = cpn_covariant_velocity(chi, chidot) - eta * np1 * s * chi;
  return shifted.squaredNorm() / (1.0 + eta * eta) -
         np1 * np1 * chi.squaredNorm();
}

/// Global integrand on |Z| = 1:
///   (|Zdot|^2 - |Z^dag Zdot|^2) / (1+eta^2)
///     + (N+1)^2 ((2 eta^2 + 1)|Z_{N+1}|^2 - eta^2 |Z_{N+1}|^4) / (1+eta^2).
/// It agrees with the chart integrand under the gauge fix up to the constant
/// (N+1)^2 and the exact total derivative eta (N+1)/(1+eta^2) d|chi|^2/dt.
inline double yb_cpn_lagrangian_global(const CVec& z, const CVec& zdot,
                                       double eta) {
  const double np1 = double(z.size());
  const cplx inner = (z.adjoint() * zdot).value();
  const double zl = std::norm(z(z.size() - 1));
  return (zdot.squaredNorm() - std::norm(inner)) / (1.0 + eta * eta) +
         np1 * np1 * ((2.0 * eta * eta + 1.0) * zl - eta * eta * zl * zl) /
             (1.0 + eta * eta);
}

}  // namespace emodel
