#pragma once

// Symplectic reduction realizing the CP^N chiral model globally: the
// unreduced system lives on C^{N+1} x C^{N+1} with coordinates (Y, Z),
// symplectic form d Re(Y^dag dZ) and Hamiltonian
//   H = 1/4 |Z|^2 |Y|^2 - 1/4 |Z^dag Y|^2 + (N+1)^2 (1 - |Z_{N+1}|^2).
// Two commuting constraints (|Z|^2 = 1 and Im(Z^dag Y) = 0) generate the
// gauge flows (Y,Z) -> (e^{ib}Y, e^{ib}Z) and (Y,Z) -> (Y + bZ, Z); the
// flow-invariant matrices
//   W = i(N+1)(Z Z^dag - e e^dag),   J = 1/2 K Z^dag - 1/2 Z K^dag,
// with K = Y - (Z^dag Y) Z, obey the reduced equations
//   Wdot = [J, W - zeta],   Jdot = [zeta, W],
// and carry the Lax pair L = zeta - (lambda J + W)/(1 - lambda^2).

#include <cmath>
#include <vector>

#include "emodel/algebra.hpp"
#include "emodel/cpn.hpp"

namespace emodel {

struct HomogeneousState {
  CVec Z;
  CVec Y;
};

inline double reduction_hamiltonian(const HomogeneousState& s) {
  const int n = int(s.Z.size()) - 1;
  const double np1 = double(n + 1);
  const cplx zy = (s.Z.adjoint() * s.Y).value();
  return 0.25 * s.Z.squaredNorm() * s.Y.squaredNorm() - 0.25 * std::norm(zy) +
         np1 * np1 * (1.0 - std::norm(s.Z(n)));
}

// Residuals of the two first-class constraints |Z|^2 - 1 and Y^dag Z - Z^dag Y.
inline double reduction_constraint_norm(const HomogeneousState& s) {
  const cplx yz = (s.Y.adjoint() * s.Z).value();
  return std::abs(s.Z.squaredNorm() - 1.0) + std::abs(yz - std::conj(yz));
}

// Unreduced equations of motion:
//   Zdot = 1/2 |Z|^2 Y - 1/2 (Z^dag Y) Z,
//   Ydot = -1/2 |Y|^2 Z + 1/2 (Y^dag Z) Y + 2(N+1)^2 Z_{N+1} e_{N+1}.
inline HomogeneousState reduction_rhs(const HomogeneousState& s) {
  const int n = int(s.Z.size()) - 1;
  const double np1 = double(n + 1);
  const cplx zy = (s.Z.adjoint() * s.Y).value();
  HomogeneousState d;
  d.Z = 0.5 * s.Z.squaredNorm() * s.Y - 0.5 * zy * s.Z;
  d.Y = -0.5 * s.Y.squaredNorm() * s.Z + 0.5 * std::conj(zy) * s.Y;
  d.Y(n) += 2.0 * np1 * np1 * s.Z(n);
  return d;
}

inline HomogeneousState gauge_phase_flow(const HomogeneousState& s, double b) {
  const cplx ph = std::exp(cplx(0.0, b));
  return {ph * s.Z, ph * s.Y};
}

inline HomogeneousState gauge_shift_flow(const HomogeneousState& s, double b) {
  return {s.Z, s.Y + b * s.Z};
}

inline CVec reduction_K(const HomogeneousState& s) {
  return s.Y - (s.Z.adjoint() * s.Y).value() * s.Z;
}

struct ReducedState {
  Mat W;
  Mat J;
};

inline ReducedState reduce(const HomogeneousState& s) {
  const int n = int(s.Z.size()) - 1;
  const CVec k = reduction_K(s);
  ReducedState r;
  r.W = cplx(0.0, double(n + 1)) * (s.Z * s.Z.adjoint());
  r.W(n, n) -= cplx(0.0, double(n + 1));
  r.J = 0.5 * (k * s.Z.adjoint()) - 0.5 * (s.Z * k.adjoint());
  return r;
}

// Reduced equations of motion Wdot = [J, W - zeta], Jdot = [zeta, W].
inline ReducedState reduced_rhs(const ReducedState& r) {
  const Mat zeta = cpn_zeta(int(r.W.rows()) - 1);
  return {bracket(r.J, r.W - zeta), bracket(zeta, r.W)};
}

// Chart recovery on Z_{N+1} != 0: the chart coordinate from W alone,
//   chi_a = -i W_{a,N+1} / sqrt((N+1)(-i W_{N+1,N+1} + N+1)),
// and the canonical momentum from (W, J).
inline CVec reduced_chart_chi(const ReducedState& r) {
  const int n = int(r.W.rows()) - 1;
  const cplx mi(0.0, -1.0);
  const double denom =
      std::sqrt(double(n + 1) * (mi * r.W(n, n) + double(n + 1)).real());
  CVec chi(n);
  for (int a = 0; a < n; ++a) chi(a) = mi * r.W(a, n) / denom;
  return chi;
}

inline CVec reduced_chart_p(const ReducedState& r) {
  const int n = int(r.W.rows()) - 1;
  const double np1 = double(n + 1);
  const cplx i(0.0, 1.0);
  const Mat comm = bracket(r.J, r.W - cpn_zeta(n));
  const double base = (-i * r.W(n, n)).real() + np1;
  CVec p(n);
  for (int a = 0; a < n; ++a) {
    p(a) = i * (np1 * r.J(a, n) - i * comm(a, n)) /
               (2.0 * std::sqrt(np1 * base)) +
           i * r.W(a, n) * comm(n, n) /
               (2.0 * std::sqrt(np1) * std::pow(base, 1.5));
  }
  return p;
}

// Inverse of the chart recovery: solve the constraints with the chart data,
//   Z = (chi, sqrt(1-|chi|^2)),
//   Y = -2i (xi, -(chi^dag xi)/sqrt(1-|chi|^2)),   xi = p - 1/2(chi^dag p - p^dag chi) chi.
inline HomogeneousState homogeneous_from_chart(const CVec& chi, const CVec& p) {
  cpn_check_chart(chi);
  const int n = int(chi.size());
  const CVec xi = cpn_xi_from_p(chi, p);
  const double s = std::sqrt(1.0 - chi.squaredNorm());
  HomogeneousState st;
  st.Z = cpn_gauge_fix(chi);
  st.Y.resize(n + 1);
  st.Y.head(n) = cplx(0.0, -2.0) * xi;
  st.Y(n) = cplx(0.0, 2.0) * (chi.adjoint() * xi).value() / s;
  return st;
}

// Lax pair of the reduced system, regular away from lambda^2 = 1:
//   L = zeta - (lambda J + W)/(1 - lambda^2),  M = -(J + lambda W)/(1 - lambda^2).
struct ReducedLax {
  Mat L;
  Mat M;
};

inline ReducedLax reduced_lax(const ReducedState& r, cplx lambda) {
  const cplx den = 1.0 - lambda * lambda;
  if (std::abs(den) < 1e-12) {
    throw std::domain_error("spectral pole: 1-lambda^2 vanishes");
  }
  const Mat zeta = cpn_zeta(int(r.W.rows()) - 1);
  return {zeta - (lambda * r.J + r.W) / den, -(r.J + lambda * r.W) / den};
}

inline HomogeneousState reduction_rk4_step(const HomogeneousState& s,
                                           double dt) {
  auto add = [](const HomogeneousState& a, const HomogeneousState& b,
                double c) { return HomogeneousState{a.Z + c * b.Z, a.Y + c * b.Y}; };
  const HomogeneousState k1 = reduction_rhs(s);
  const HomogeneousState k2 = reduction_rhs(add(s, k1, dt / 2));
  const HomogeneousState k3 = reduction_rhs(add(s, k2, dt / 2));
  const HomogeneousState k4 = reduction_rhs(add(s, k3, dt));
  HomogeneousState out = s;
  out.Z += (dt / 6.0) * (k1.Z + 2.0 * k2.Z + 2.0 * k3.Z + k4.Z);
  out.Y += (dt / 6.0) * (k1.Y + 2.0 * k2.Y + 2.0 * k3.Y + k4.Y);
  return out;
}

// Samples at multiples of dt, starting from s0 at t = 0.
inline std::vector<HomogeneousState> reduction_integrate(
    const HomogeneousState& s0, double t_end, double dt) {
  if (dt <= 0.0 || t_end <= 0.0) {
    throw std::invalid_argument("reduction_integrate: need positive t_end, dt");
  }
  std::vector<HomogeneousState> out;
  const int steps = int(std::llround(t_end / dt));
  out.reserve(steps + 1);
  out.push_back(s0);
  HomogeneousState s = s0;
  for (int i = 0; i < steps; ++i) {
    s = reduction_rk4_step(s, dt);
    out.push_back(s);
  }
  return out;
}

}  // namespace emodel
