#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "emodel/algebra.hpp"
#include "emodel/doubles.hpp"

// The point particle model proper: current j = xi - Ad_l xi, Hamiltonian
// H = (j, E j)/2, first-order equation dj/dt = [xi, Ej] + [Ej, j], and the
// group-level reconstruction flow dl/dt = (E j) l used as integration state.

namespace emodel {

enum class DoubleKind { TStarK, LuWeinstein };
enum class Scheme { RK4, Adaptive };

/// Model over the cotangent-bundle double with the chiral involution.
struct TStarModel {
  using Point = TStarPoint;
  using Elem = TStarElem;

  int N = 2;
  TStarElem xi;
  std::string label;

  TStarModel(int n, Mat zeta, std::string name = "tstar")
      : N(n), xi(std::move(zeta), Mat::Zero(n, n)), label(std::move(name)) {
    if (!is_su(xi.mu, 1e-10))
      throw std::invalid_argument("TStarModel: zeta must lie in su(N)");
  }

  Elem current(const Point& l) const { return xi - tstar_adjoint(l, xi); }
  Elem e_apply(const Elem& x) const { return e_tstar(x); }
  double form(const Elem& a, const Elem& b) const { return form_tstar(a, b); }
  Elem lie(const Elem& a, const Elem& b) const { return bracket_tstar(a, b); }

  /// Tangent of dl/dt = X l at l, for X = (mu, nu) in the double algebra.
  Point left_translate(const Elem& x, const Point& l) const {
    return {x.mu * l.k, x.nu + bracket(x.mu, l.kappa)};
  }

  int state_size() const { return 4 * N * N; }

  RVec to_state(const Point& l) const {
    RVec v(state_size());
    int idx = 0;
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j) {
        v(idx++) = l.k(i, j).real();
        v(idx++) = l.k(i, j).imag();
        v(idx++) = l.kappa(i, j).real();
        v(idx++) = l.kappa(i, j).imag();
      }
    return v;
  }

  Point from_state(const RVec& v) const {
    Point l{Mat(N, N), Mat(N, N)};
    int idx = 0;
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j) {
        l.k(i, j) = cplx(v(idx), v(idx + 1));
        l.kappa(i, j) = cplx(v(idx + 2), v(idx + 3));
        idx += 4;
      }
    return l;
  }

  /// Distance of the state from the group manifold (unitarity defect plus
  /// anti-Hermiticity defect of kappa).
  double drift(const Point& l) const {
    const double du = (Mat(l.k.adjoint() * l.k) - Mat::Identity(N, N)).norm();
    const double dk = (l.kappa + Mat(l.kappa.adjoint())).norm();
    return du + dk;
  }

  /// Polar projection of k back to U(N) (phase-fixed to det 1) and
  /// re-antisymmetrization of kappa.
  void project(Point& l) const {
    Eigen::JacobiSVD<Mat> svd(l.k, Eigen::ComputeFullU | Eigen::ComputeFullV);
    l.k = svd.matrixU() * svd.matrixV().adjoint();
    const cplx det = l.k.determinant();
    l.k *= std::exp(-std::log(det) / double(N));
    l.kappa = 0.5 * (l.kappa - Mat(l.kappa.adjoint()));
    l.kappa -= (l.kappa.trace() / cplx(N)) * Mat::Identity(N, N);
  }
};

/// Model over SL(N,C) with the two-parameter deformed involution.
struct SLModel {
  using Point = Mat;
  using Elem = Mat;

  int N = 2;
  double eta = 1.0;
  double mu = 0.0;
  Mat xi;
  std::string label;

  SLModel(int n, double eta_, double mu_, Mat xi_, std::string name = "biyb")
      : N(n), eta(eta_), mu(mu_), xi(std::move(xi_)), label(std::move(name)) {
    if (eta <= 0.0) throw std::invalid_argument("SLModel: eta must be positive");
    if (!is_su(xi, 1e-10))
      throw std::invalid_argument("SLModel: xi must lie in su(N)");
  }

  Elem current(const Point& l) const { return xi - l * xi * l.inverse(); }
  Elem e_apply(const Elem& x) const { return e_biyb(x, eta, mu); }
  double form(const Elem& a, const Elem& b) const { return form_sl(a, b, eta); }
  Elem lie(const Elem& a, const Elem& b) const { return bracket(a, b); }

  Point left_translate(const Elem& x, const Point& l) const { return x * l; }

  int state_size() const { return 2 * N * N; }

  RVec to_state(const Point& l) const {
    RVec v(state_size());
    int idx = 0;
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j) {
        v(idx++) = l(i, j).real();
        v(idx++) = l(i, j).imag();
      }
    return v;
  }

  Point from_state(const RVec& v) const {
    Mat l(N, N);
    int idx = 0;
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j) {
        l(i, j) = cplx(v(idx), v(idx + 1));
        idx += 2;
      }
    return l;
  }

  double drift(const Point& l) const { return std::abs(l.determinant() - cplx(1.0)); }

  void project(Point& l) const {
    const cplx det = l.determinant();
    l *= std::exp(-std::log(det) / double(N));
  }
};

template <class Model>
typename Model::Elem group_flow_field(const Model& m, const typename Model::Point& l) {
  return m.e_apply(m.current(l));
}

template <class Model>
typename Model::Point group_flow_rhs(const Model& m, const typename Model::Point& l) {
  return m.left_translate(group_flow_field(m, l), l);
}

template <class Model>
double hamiltonian(const Model& m, const typename Model::Elem& j) {
  return 0.5 * m.form(j, m.e_apply(j));
}

template <class Model>
typename Model::Elem eom_rhs(const Model& m, const typename Model::Elem& j) {
  const auto ej = m.e_apply(j);
  return m.lie(m.xi, ej) + m.lie(ej, j);
}

/// Current Poisson algebra: {(j,T1),(j,T2)} = (j,[T1,T2]) + (T1,[xi,T2]).
template <class Model>
double poisson_bracket_current(const Model& m, const typename Model::Elem& t1,
                               const typename Model::Elem& t2,
                               const typename Model::Elem& j) {
  return m.form(j, m.lie(t1, t2)) + m.form(t1, m.lie(m.xi, t2));
}

// ---------------------------------------------------------------------------
// Integration
// ---------------------------------------------------------------------------

struct IntegrateOptions {
  Scheme scheme = Scheme::RK4;
  double rtol = 1e-10;  ///< adaptive relative tolerance
  double atol = 1e-12;  ///< adaptive absolute tolerance
  double renorm_threshold = 1e-8;
};

template <class Model>
struct Trajectory {
  std::vector<double> times;
  std::vector<typename Model::Point> points;
  std::vector<typename Model::Elem> currents;
  std::vector<double> energy;
  std::vector<std::string> invariant_names;
  std::vector<RVec> invariant_rows;  ///< one row per sample
  double max_drift = 0.0;
  int renorm_count = 0;
};

using OdeRhs = std::function<RVec(double, const RVec&)>;

inline RVec rk4_step(const OdeRhs& f, double t, const RVec& y, double h) {
  const RVec k1 = f(t, y);
  const RVec k2 = f(t + 0.5 * h, y + 0.5 * h * k1);
  const RVec k3 = f(t + 0.5 * h, y + 0.5 * h * k2);
  const RVec k4 = f(t + h, y + h * k3);
  return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

/// One Dormand-Prince 5(4) trial step; returns (y5, error estimate).
inline std::pair<RVec, double> dopri_step(const OdeRhs& f, double t, const RVec& y,
                                          double h, double rtol, double atol) {
  static const double a21 = 1.0 / 5;
  static const double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static const double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static const double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                      a53 = 64448.0 / 6561, a54 = -212.0 / 729;
  static const double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                      a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                      a65 = -5103.0 / 18656;
  static const double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                      b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  static const double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                      e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

  const RVec k1 = f(t, y);
  const RVec k2 = f(t + h / 5, y + h * (a21 * k1));
  const RVec k3 = f(t + 3 * h / 10, y + h * (a31 * k1 + a32 * k2));
  const RVec k4 = f(t + 4 * h / 5, y + h * (a41 * k1 + a42 * k2 + a43 * k3));
  const RVec k5 = f(t + 8 * h / 9, y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
  const RVec k6 = f(t + h, y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
  const RVec y5 = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
  const RVec k7 = f(t + h, y5);
  const RVec err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
  double norm = 0.0;
  for (int i = 0; i < y.size(); ++i) {
    const double sc = atol + rtol * std::max(std::abs(y(i)), std::abs(y5(i)));
    norm = std::max(norm, std::abs(err(i)) / sc);
  }
  return {y5, norm};
}

/// Advances y from t to t+h with adaptive sub-stepping.
inline RVec adaptive_advance(const OdeRhs& f, double t, RVec y, double h,
                             double rtol, double atol) {
  double cur = t;
  const double end = t + h;
  double step = h;
  while (cur < end - 1e-15 * std::max(1.0, std::abs(end))) {
    step = std::min(step, end - cur);
    auto [ynew, err] = dopri_step(f, cur, y, step, rtol, atol);
    if (err <= 1.0) {
      cur += step;
      y = std::move(ynew);
    }
    const double factor =
        (err > 0.0) ? 0.9 * std::pow(err, -0.2) : 5.0;
    step *= std::min(5.0, std::max(0.2, factor));
    if (step < 1e-14) throw std::runtime_error("adaptive integrator: step underflow");
  }
  return y;
}

/// Integrates the group-level flow and samples every dt. The optional
/// invariant hook is evaluated per sample (e.g. Lax traces).
template <class Model>
Trajectory<Model> integrate(
    const Model& m, const typename Model::Point& l0, double t_end, double dt,
    const IntegrateOptions& opt = {},
    const std::vector<std::string>& invariant_names = {},
    const std::function<RVec(double, const typename Model::Point&,
                             const typename Model::Elem&)>& invariant_fn = {}) {
  if (dt <= 0.0 || t_end <= 0.0)
    throw std::invalid_argument("integrate: dt and t_end must be positive");

  OdeRhs rhs = [&m](double, const RVec& y) {
    const auto l = m.from_state(y);
    return m.to_state(group_flow_rhs(m, l));
  };

  Trajectory<Model> traj;
  traj.invariant_names = invariant_names;
  const int nsteps = static_cast<int>(std::llround(t_end / dt));
  RVec y = m.to_state(l0);

  for (int step = 0; step <= nsteps; ++step) {
    const double t = step * dt;
    if (!y.allFinite()) throw std::runtime_error("integrate: non-finite state");
    auto l = m.from_state(y);
    const double d = m.drift(l);
    traj.max_drift = std::max(traj.max_drift, d);
    if (d > opt.renorm_threshold) {
      m.project(l);
      y = m.to_state(l);
      ++traj.renorm_count;
    }
    const auto j = m.current(l);
    traj.times.push_back(t);
    traj.points.push_back(l);
    traj.currents.push_back(j);
    traj.energy.push_back(hamiltonian(m, j));
    if (invariant_fn) traj.invariant_rows.push_back(invariant_fn(t, l, j));

    if (step < nsteps) {
      y = (opt.scheme == Scheme::RK4)
              ? rk4_step(rhs, t, y, dt)
              : adaptive_advance(rhs, t, y, dt, opt.rtol, opt.atol);
    }
  }
  return traj;
}

}  // namespace emodel
