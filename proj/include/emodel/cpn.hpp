#pragma once

// Point particle chiral model on CP^N = SU(N+1)/S(U(N)xU(1)): chart embedding
// into the group, second-order and first-order integrands, Hamiltonians, the
// w/p/xi momentum transforms, and the first-order flow on the chart.
//
// The chart is the complex N-ball |chi| < 1; the last homogeneous coordinate
// is gauge-fixed real positive, Z = (chi, sqrt(1-|chi|^2)). All chart
// operations hard-fail near the boundary, where the embedding is singular.

#include <cmath>
#include <stdexcept>

#include "emodel/algebra.hpp"

namespace emodel {

inline void cpn_check_chart(const CVec& chi) {
  if (chi.norm() >= 1.0 - 1e-10) {
    throw std::domain_error("cpn chart violation: |chi| must stay below 1");
  }
}

// Distinguished generator zeta = i diag(1,...,1,-N) in su(N+1).
inline Mat cpn_zeta(int n) {
  Mat z = Mat::Identity(n + 1, n + 1) * cplx(0.0, 1.0);
  z(n, n) = cplx(0.0, -double(n));
  return z;
}

// alpha(chi) = (1 - sqrt(1-|chi|^2)) / |chi|^2, smooth at chi = 0 (-> 1/2).
inline double cpn_alpha(const CVec& chi) {
  const double u = chi.squaredNorm();
  if (u < 1e-14) return 0.5 + u / 8.0;
  return (1.0 - std::sqrt(1.0 - u)) / u;
}

// Block unitary representative of the coset of chi:
//   k = [ 1_N - alpha chi chi^dag   chi                ]
//       [ -chi^dag                  sqrt(1-|chi|^2)    ]
inline Mat cpn_embed(const CVec& chi) {
  cpn_check_chart(chi);
  const int n = int(chi.size());
  const double al = cpn_alpha(chi);
  Mat k(n + 1, n + 1);
  k.topLeftCorner(n, n) = Mat::Identity(n, n) - al * (chi * chi.adjoint());
  k.topRightCorner(n, 1) = chi;
  k.bottomLeftCorner(1, n) = -chi.adjoint();
  k(n, n) = std::sqrt(1.0 - chi.squaredNorm());
  return k;
}

// Time derivative of the embedding along (chi, chidot).
inline Mat cpn_embed_velocity(const CVec& chi, const CVec& chidot) {
  cpn_check_chart(chi);
  const int n = int(chi.size());
  const double u = chi.squaredNorm();
  const double s = std::sqrt(1.0 - u);
  const double udot = 2.0 * (chi.adjoint() * chidot).value().real();
  const double sdot = -udot / (2.0 * s);
  const double al = cpn_alpha(chi);
  // alpha = (1-s)/u; d alpha = (-sdot u - (1-s) udot) / u^2, smooth at 0.
  double aldot;
  if (u < 1e-14) {
    aldot = udot / 8.0;
  } else {
    aldot = (-sdot * u - (1.0 - s) * udot) / (u * u);
  }
  Mat kd(n + 1, n + 1);
  kd.topLeftCorner(n, n) = -aldot * (chi * chi.adjoint()) -
                           al * (chidot * chi.adjoint() + chi * chidot.adjoint());
  kd.topRightCorner(n, 1) = chidot;
  kd.bottomLeftCorner(1, n) = -chidot.adjoint();
  kd(n, n) = sdot;
  return kd;
}

// Closed form of k^-1 k' where k' k^-1 = zeta - Ad_k zeta:
//   (N+1) i [ -chi chi^dag             sqrt(1-|chi|^2) chi ]
//           [ sqrt(1-|chi|^2) chi^dag  |chi|^2             ]
inline Mat cpn_kinv_kprime(const CVec& chi) {
  cpn_check_chart(chi);
  const int n = int(chi.size());
  const double s = std::sqrt(1.0 - chi.squaredNorm());
  Mat m(n + 1, n + 1);
  m.topLeftCorner(n, n) = -(chi * chi.adjoint());
  m.topRightCorner(n, 1) = s * chi;
  m.bottomLeftCorner(1, n) = s * chi.adjoint();
  m(n, n) = chi.squaredNorm();
  return cplx(0.0, double(n + 1)) * m;
}

// Covariant chart velocity D chi = chidot - (d/dt sqrt(1-|chi|^2)) chi
//                                          - alpha (chi^dag chidot) chi.
// flip_sqrt_term flips the sign of the middle term; kept only so tests can
// demonstrate that the written sign is the one consistent with the global
// homogeneous-coordinate integrand.
inline CVec cpn_covariant_velocity(const CVec& chi, const CVec& chidot,
                                   bool flip_sqrt_term = false) {
  cpn_check_chart(chi);
  const double s = std::sqrt(1.0 - chi.squaredNorm());
  const double sdot = -(chi.adjoint() * chidot).value().real() / s;
  const cplx inner = (chi.adjoint() * chidot).value();
  const double sign = flip_sqrt_term ? -1.0 : 1.0;
  return chidot - sign * sdot * chi - cpn_alpha(chi) * inner * chi;
}

// Second-order chart integrand |D chi|^2 - (N+1)^2 |chi|^2.
inline double cpn_lagrangian_chart(const CVec& chi, const CVec& chidot,
                                   bool flip_sqrt_term = false) {
  const double np1 = double(chi.size() + 1);
  return cpn_covariant_velocity(chi, chidot, flip_sqrt_term).squaredNorm() -
         np1 * np1 * chi.squaredNorm();
}

// Global integrand on |Z| = 1 (multiplier eliminated):
//   |Zdot|^2 - |Z^dag Zdot|^2 + (N+1)^2 (|Z_{N+1}|^2 - 1).
inline double cpn_lagrangian_global(const CVec& z, const CVec& zdot) {
  const double np1 = double(z.size());
  const cplx inner = (z.adjoint() * zdot).value();
  return zdot.squaredNorm() - std::norm(inner) +
         np1 * np1 * (std::norm(z(z.size() - 1)) - 1.0);
}

// Gauge-fixed homogeneous coordinates Z = (chi, sqrt(1-|chi|^2)).
inline CVec cpn_gauge_fix(const CVec& chi) {
  cpn_check_chart(chi);
  CVec z(chi.size() + 1);
  z.head(chi.size()) = chi;
  z(chi.size()) = std::sqrt(1.0 - chi.squaredNorm());
  return z;
}

inline CVec cpn_gauge_fix_velocity(const CVec& chi, const CVec& chidot) {
  cpn_check_chart(chi);
  CVec zd(chi.size() + 1);
  zd.head(chi.size()) = chidot;
  const double s = std::sqrt(1.0 - chi.squaredNorm());
  zd(chi.size()) = -(chi.adjoint() * chidot).value().real() / s;
  return zd;
}

// Momentum transforms between the block velocity vector w, the canonical
// momentum p and the auxiliary vector xi.
inline CVec cpn_p_from_w(const CVec& chi, const CVec& w) {
  cpn_check_chart(chi);
  const double s = std::sqrt(1.0 - chi.squaredNorm());
  const cplx wc = (w.adjoint() * chi).value();
  const cplx cw = (chi.adjoint() * w).value();
  return w - ((wc - cw) / (2.0 * s)) * chi - cpn_alpha(chi) * cw * chi;
}

inline CVec cpn_w_from_p(const CVec& chi, const CVec& p) {
  cpn_check_chart(chi);
  const double s = std::sqrt(1.0 - chi.squaredNorm());
  const cplx pc = (p.adjoint() * chi).value();
  const cplx cp = (chi.adjoint() * p).value();
  return p + ((pc - cp) / (2.0 * s)) * chi + (cpn_alpha(chi) / s) * cp * chi;
}

inline CVec cpn_xi_from_w(const CVec& chi, const CVec& w) {
  cpn_check_chart(chi);
  return w - cpn_alpha(chi) * (chi.adjoint() * w).value() * chi;
}

inline CVec cpn_w_from_xi(const CVec& chi, const CVec& xi) {
  cpn_check_chart(chi);
  const double s = std::sqrt(1.0 - chi.squaredNorm());
  return xi + (cpn_alpha(chi) / s) * (chi.adjoint() * xi).value() * chi;
}

inline CVec cpn_p_from_xi(const CVec& chi, const CVec& xi) {
  cpn_check_chart(chi);
  const cplx cx = (chi.adjoint() * xi).value();
  const cplx xc = (xi.adjoint() * chi).value();
  return xi + ((cx - xc) / (2.0 * (1.0 - chi.squaredNorm()))) * chi;
}

inline CVec cpn_xi_from_p(const CVec& chi, const CVec& p) {
  cpn_check_chart(chi);
  const cplx cp = (chi.adjoint() * p).value();
  const cplx pc = (p.adjoint() * chi).value();
  return p - 0.5 * (cp - pc) * chi;
}

// Hamiltonian in the (w, chi) variables: w^dag w + (N+1)^2 chi^dag chi.
inline double cpn_hamiltonian_w(const CVec& chi, const CVec& w) {
  const double np1 = double(chi.size() + 1);
  return w.squaredNorm() + np1 * np1 * chi.squaredNorm();
}

// Hamiltonian in the canonical (p, chi) variables.
inline double cpn_hamiltonian(const CVec& chi, const CVec& p) {
  cpn_check_chart(chi);
  const double np1 = double(chi.size() + 1);
  const cplx cp = (chi.adjoint() * p).value();
  const cplx pc = (p.adjoint() * chi).value();
  const cplx plus = cp + pc;   // real
  const cplx minus = cp - pc;  // imaginary
  return p.squaredNorm() +
         (plus * plus).real() / (4.0 * (1.0 - chi.squaredNorm())) +
         0.25 * (minus * minus).real() + np1 * np1 * chi.squaredNorm();
}

// First-order integrand in (w, chi):
//   -(2 Im(w^dag D chi) + w^dag w + (N+1)^2 chi^dag chi).
inline double cpn_lagrangian_first_order_w(const CVec& chi, const CVec& chidot,
                                           const CVec& w) {
  const CVec dchi = cpn_covariant_velocity(chi, chidot);
  return -(2.0 * (w.adjoint() * dchi).value().imag() +
           cpn_hamiltonian_w(chi, w));
}

// First-order integrand in canonical variables:
//   i p^dag chidot - i chidot^dag p - H(chi, p) = -2 Im(p^dag chidot) - H.
inline double cpn_lagrangian_first_order(const CVec& chi, const CVec& chidot,
                                         const CVec& p) {
  return -2.0 * (p.adjoint() * chidot).value().imag() -
         cpn_hamiltonian(chi, p);
}

struct CpnChartState {
  CVec chi;
  CVec p;
};

// First-order flow on the chart:
//   i chidot = p + (chi^dag p + p^dag chi)/(2(1-|chi|^2)) chi
//                - 1/2 (chi^dag p - p^dag chi) chi,
//   i pdot   = (chi^dag p + p^dag chi)/(2(1-|chi|^2)) p + (N+1)^2 chi
//                + (chi^dag p + p^dag chi)^2/(4(1-|chi|^2)^2) chi
//                + 1/2 (chi^dag p - p^dag chi) p.
inline CpnChartState cpn_flow(const CpnChartState& st) {
  cpn_check_chart(st.chi);
  const double np1 = double(st.chi.size() + 1);
  const double om = 1.0 - st.chi.squaredNorm();
  const cplx cp = (st.chi.adjoint() * st.p).value();
  const cplx pc = (st.p.adjoint() * st.chi).value();
  const cplx plus = cp + pc;
  const cplx minus = cp - pc;
  const cplx mi(0.0, -1.0);
  CpnChartState d;
  d.chi = mi * (st.p + (plus / (2.0 * om)) * st.chi - 0.5 * minus * st.chi);
  d.p = mi * ((plus / (2.0 * om)) * st.p + np1 * np1 * st.chi +
              (plus * plus / (4.0 * om * om)) * st.chi + 0.5 * minus * st.p);
  return d;
}

inline CpnChartState cpn_rk4_step(const CpnChartState& st, double dt) {
  auto add = [](const CpnChartState& a, const CpnChartState& b, double c) {
    return CpnChartState{a.chi + c * b.chi, a.p + c * b.p};
  };
  const CpnChartState k1 = cpn_flow(st);
  const CpnChartState k2 = cpn_flow(add(st, k1, dt / 2));
  const CpnChartState k3 = cpn_flow(add(st, k2, dt / 2));
  const CpnChartState k4 = cpn_flow(add(st, k3, dt));
  CpnChartState out = st;
  out.chi += (dt / 6.0) * (k1.chi + 2.0 * k2.chi + 2.0 * k3.chi + k4.chi);
  out.p += (dt / 6.0) * (k1.p + 2.0 * k2.p + 2.0 * k3.p + k4.p);
  return out;
}

}  // namespace emodel
