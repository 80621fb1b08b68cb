#pragma once

// Experiment runner behind the batch CLI: builds the configured model,
// executes one of the six commands, and produces deterministic JSON/CSV
// artifacts. Exit-code contract: 0 pass, 2 tolerance failure, 3 numerical
// abort, 64 usage error.

#include <string>
#include <vector>

#include "emodel/biyb.hpp"
#include "emodel/config.hpp"
#include "emodel/cpn.hpp"
#include "emodel/dynamics.hpp"
#include "emodel/integrability.hpp"
#include "emodel/pendulum.hpp"
#include "emodel/reduction.hpp"
#include "emodel/report.hpp"

namespace emodel {

struct RunResult {
  int status = 0;           ///< 0 pass, 2 tolerance failure
  OrderedJson report;       ///< JSON artifact
  std::string csv;          ///< CSV artifact ("" when the command emits none)
};

namespace lab {

inline Mat resolve_xi(const ExperimentConfig& c, int n) {
  if (c.xi_preset == "cpn-block") {
    if (n < 2)
      throw std::invalid_argument("config: cpn-block preset needs N >= 2");
    return cpn_zeta(n - 1);
  }
  // cartan-regular: i diag(n-1, n-3, ..., 1-n), distinct entries, trace 0
  Mat xi = Mat::Zero(n, n);
  for (int i = 0; i < n; ++i) xi(i, i) = cplx(0.0, double(n - 1 - 2 * i));
  return xi;
}

inline TStarModel make_tstar_model(const ExperimentConfig& c) {
  if (c.model == "pendulum") return pendulum_model();
  if (c.model == "cpn") return TStarModel(c.N + 1, cpn_zeta(c.N), "cpn");
  if (c.model == "pcm") {
    if (c.N < 2) throw std::invalid_argument("config: pcm needs N >= 2");
    return TStarModel(c.N, resolve_xi(c, c.N), "pcm");
  }
  throw std::invalid_argument("config: model " + c.model +
                              " has no T*K realization");
}

inline SLModel make_sl_model(const ExperimentConfig& c) {
  if (c.eta <= 0.0)
    throw std::invalid_argument("config: deformed models need eta > 0");
  if (c.model == "biyb-su2")
    return SLModel(2, c.eta, c.mu, resolve_xi(c, 2), "biyb-su2");
  if (c.model == "biyb-su3")
    return SLModel(3, c.eta, c.mu, cpn_zeta(2), "biyb-su3");
  if (c.model == "yb-cpn") {
    if (c.mu != 0.0)
      throw std::invalid_argument("config: yb-cpn requires mu = 0");
    return SLModel(c.N + 1, c.eta, 0.0, cpn_zeta(c.N), "yb-cpn");
  }
  throw std::invalid_argument("config: model " + c.model +
                              " has no SL(N,C) realization");
}

inline bool is_sl_family(const std::string& model) {
  return model == "biyb-su2" || model == "biyb-su3" || model == "yb-cpn";
}

inline IntegrateOptions scheme_options(const ExperimentConfig& c) {
  IntegrateOptions opt;
  opt.scheme = (c.scheme == "adaptive") ? Scheme::Adaptive : Scheme::RK4;
  return opt;
}

inline OrderedJson config_echo(const ExperimentConfig& c) {
  OrderedJson j;
  j["command"] = c.command;
  j["model"] = c.model;
  j["N"] = c.N;
  j["eta"] = c.eta;
  j["mu"] = c.mu;
  j["xi_preset"] = c.xi_preset;
  j["t_end"] = c.t_end;
  j["dt"] = c.dt;
  j["scheme"] = c.scheme;
  j["samples"] = c.samples;
  j["seed"] = c.seed;
  return j;
}

inline double relative_energy_drift(const std::vector<double>& energy) {
  if (energy.empty()) return 0.0;
  const double h0 = energy.front();
  double drift = 0.0;
  for (double h : energy)
    drift = std::max(drift, std::abs(h - h0) / std::max(1.0, std::abs(h0)));
  return drift;
}

inline std::vector<cplx> default_lambdas() {
  return {cplx(0.3, 0.0), cplx(0.0, 0.7), cplx(-0.5, 0.2)};
}

// --------------------------------------------------------------------------
// simulate
// --------------------------------------------------------------------------

template <class Model>
RunResult simulate_group(const ExperimentConfig& c, const Model& m,
                         const typename Model::Point& l0) {
  const auto traj = integrate(m, l0, c.t_end, c.dt, scheme_options(c));
  CsvWriter csv({"t", "H", "group_drift"});
  for (size_t s = 0; s < traj.times.size(); ++s)
    csv.add_row({traj.times[s], traj.energy[s], traj.max_drift});
  const double drift = relative_energy_drift(traj.energy);
  const double tol = tolerance_or(c, "h_drift", 1e-8);
  RunResult out;
  out.report["config"] = config_echo(c);
  out.report["h_drift"] = drift;
  out.report["h_drift_tol"] = tol;
  out.report["group_drift"] = traj.max_drift;
  out.report["renorm_count"] = traj.renorm_count;
  out.report["pass"] = drift <= tol;
  out.status = (drift <= tol) ? 0 : 2;
  out.csv = csv.str();
  return out;
}

inline CpnChartState seeded_chart_state(const ExperimentConfig& c, Rng& rng) {
  CVec chi(c.N), p(c.N);
  for (int i = 0; i < c.N; ++i) {
    chi(i) = 0.25 * rng.cnormal();
    p(i) = 0.5 * rng.cnormal();
  }
  if (chi.norm() > 0.8) chi *= 0.5 / chi.norm();
  return {chi, p};
}

inline RunResult run_simulate(const ExperimentConfig& c) {
  Rng rng(c.seed);
  if (c.model == "cpn") {
    CpnChartState st = seeded_chart_state(c, rng);
    const int nsteps = static_cast<int>(std::llround(c.t_end / c.dt));
    CsvWriter csv({"t", "H", "chi_norm"});
    std::vector<double> energy;
    for (int s = 0; s <= nsteps; ++s) {
      energy.push_back(cpn_hamiltonian(st.chi, st.p));
      csv.add_row({s * c.dt, energy.back(), st.chi.norm()});
      if (s < nsteps) st = cpn_rk4_step(st, c.dt);
    }
    const double drift = relative_energy_drift(energy);
    const double tol = tolerance_or(c, "h_drift", 1e-8);
    RunResult out;
    out.report["config"] = config_echo(c);
    out.report["h_drift"] = drift;
    out.report["h_drift_tol"] = tol;
    out.report["pass"] = drift <= tol;
    out.status = (drift <= tol) ? 0 : 2;
    out.csv = csv.str();
    return out;
  }
  if (is_sl_family(c.model)) {
    const SLModel m = make_sl_model(c);
    return simulate_group(c, m, random_sl(rng, m.N, 0.3));
  }
  const TStarModel m = make_tstar_model(c);
  return simulate_group(c, m, TStarPoint{random_unitary(rng, m.N, 0.5), random_su(rng, m.N, 0.5)});
}

// --------------------------------------------------------------------------
// verify
// --------------------------------------------------------------------------

inline RunResult run_verify(const ExperimentConfig& c) {
  const double tol = tolerance_or(c, "conditions", 1e-10);
  std::vector<ConditionReport> reports;
  if (is_sl_family(c.model)) {
    const SLModel m = make_sl_model(c);
    const BiYbSpectral sd{m.eta, m.mu};
    reports = verify_conditions(m, sd, c.samples, c.seed, tol);
  } else {
    const TStarModel m = make_tstar_model(c);
    const PcmSpectral sd;
    reports = verify_conditions(m, sd, c.samples, c.seed, tol);
  }
  RunResult out;
  out.report["config"] = config_echo(c);
  out.report["conditions"] = OrderedJson::array();
  bool all = true;
  for (const auto& r : reports) {
    out.report["conditions"].push_back(to_json(r));
    all = all && r.pass;
  }
  out.report["pass"] = all;
  out.status = all ? 0 : 2;
  return out;
}

// --------------------------------------------------------------------------
// lax-check
// --------------------------------------------------------------------------

template <class Model, class Spectral>
RunResult lax_check_group(const ExperimentConfig& c, const Model& m,
                          const Spectral& sd,
                          const typename Model::Point& l0) {
  const std::vector<cplx> lambdas =
      c.lambdas.empty() ? default_lambdas() : c.lambdas;
  std::vector<std::string> inv_names;
  for (cplx lm : lambdas)
    for (int k : {2, 3})
      inv_names.push_back("reL_inv_" + std::to_string(k) + "@" +
                          format_complex(lm));
  auto inv_fn = [&](double, const typename Model::Point&,
                    const typename Model::Elem& j) {
    RVec row(inv_names.size());
    int idx = 0;
    for (cplx lm : lambdas) {
      const Mat L = lax_pair(m, sd, j, lm).L;
      row(idx++) = (L * L).trace().real();
      row(idx++) = (L * L * L).trace().real();
    }
    return row;
  };
  const auto traj =
      integrate(m, l0, c.t_end, c.dt, scheme_options(c), inv_names, inv_fn);

  std::vector<std::string> cols{"t", "H"};
  for (const auto& n : inv_names) cols.push_back(n);
  CsvWriter csv(cols);
  for (size_t s = 0; s < traj.times.size(); ++s) {
    std::vector<double> row{traj.times[s], traj.energy[s]};
    for (int i = 0; i < traj.invariant_rows[s].size(); ++i)
      row.push_back(traj.invariant_rows[s](i));
    csv.add_row(row);
  }

  const double res_tol = tolerance_or(c, "lax_residual", 1e-6);
  const double drift_tol = tolerance_or(c, "trace_drift", 1e-8);
  RunResult out;
  out.report["config"] = config_echo(c);
  out.report["h_drift"] = relative_energy_drift(traj.energy);
  out.report["lambdas"] = OrderedJson::array();
  bool all = relative_energy_drift(traj.energy) <= drift_tol;
  for (cplx lm : lambdas) {
    const auto [res, drift] = lax_residual(m, sd, traj, lm);
    OrderedJson e;
    e["lambda"] = format_complex(lm);
    e["lax_residual"] = res;
    e["lax_residual_tol"] = res_tol;
    e["trace_drift"] = drift;
    e["trace_drift_tol"] = drift_tol;
    e["pass"] = res <= res_tol && drift <= drift_tol;
    all = all && res <= res_tol && drift <= drift_tol;
    out.report["lambdas"].push_back(e);
  }
  out.report["pass"] = all;
  out.status = all ? 0 : 2;
  out.csv = csv.str();
  return out;
}

inline RunResult run_lax_check(const ExperimentConfig& c) {
  Rng rng(c.seed);
  if (is_sl_family(c.model)) {
    const SLModel m = make_sl_model(c);
    const BiYbSpectral sd{m.eta, m.mu};
    return lax_check_group(c, m, sd, random_sl(rng, m.N, 0.3));
  }
  const TStarModel m = make_tstar_model(c);
  const PcmSpectral sd;
  return lax_check_group(c, m, sd, TStarPoint{random_unitary(rng, m.N, 0.5), random_su(rng, m.N, 0.5)});
}

// --------------------------------------------------------------------------
// reduce
// --------------------------------------------------------------------------

inline RunResult run_reduce(const ExperimentConfig& c) {
  if (c.model != "cpn")
    throw std::invalid_argument("config: reduce supports only model cpn");
  Rng rng(c.seed);
  const CpnChartState st0 = seeded_chart_state(c, rng);
  const auto traj =
      reduction_integrate(homogeneous_from_chart(st0.chi, st0.p), c.t_end,
                          c.dt);

  CpnChartState chart = st0;
  CsvWriter csv({"t", "H", "constraint", "chart_recovery"});
  std::vector<double> energy;
  double max_constraint = 0.0, max_recovery = 0.0;
  for (size_t s = 0; s < traj.size(); ++s) {
    const double t = double(s) * c.dt;
    energy.push_back(reduction_hamiltonian(traj[s]));
    const double cons = reduction_constraint_norm(traj[s]);
    const ReducedState red = reduce(traj[s]);
    const double rec =
        std::max((reduced_chart_chi(red) - chart.chi).norm(),
                 (reduced_chart_p(red) - chart.p).norm());
    max_constraint = std::max(max_constraint, cons);
    max_recovery = std::max(max_recovery, rec);
    csv.add_row({t, energy.back(), cons, rec});
    if (s + 1 < traj.size()) chart = cpn_rk4_step(chart, c.dt);
  }

  const double cons_tol = tolerance_or(c, "constraint", 1e-9);
  const double drift_tol = tolerance_or(c, "h_drift", 1e-8);
  const double rec_tol = tolerance_or(c, "chart_recovery", 1e-6);
  const double drift = relative_energy_drift(energy);
  const bool pass = max_constraint <= cons_tol && drift <= drift_tol &&
                    max_recovery <= rec_tol;
  RunResult out;
  out.report["config"] = config_echo(c);
  out.report["constraint"] = max_constraint;
  out.report["constraint_tol"] = cons_tol;
  out.report["h_drift"] = drift;
  out.report["h_drift_tol"] = drift_tol;
  out.report["chart_recovery"] = max_recovery;
  out.report["chart_recovery_tol"] = rec_tol;
  out.report["pass"] = pass;
  out.status = pass ? 0 : 2;
  out.csv = csv.str();
  return out;
}

// --------------------------------------------------------------------------
// appendix: SU(3) closed-form tables and action parity
// --------------------------------------------------------------------------

inline Su3Config random_su3_lab_config(Rng& rng) {
  cplx a = rng.cnormal(), b = rng.cnormal();
  const double nn = std::sqrt(std::norm(a) + std::norm(b));
  a /= nn;
  b /= nn;
  cplx ad = rng.cnormal(), bd = rng.cnormal();
  const double ip = (std::conj(a) * ad + std::conj(b) * bd).real();
  ad -= ip * a;
  bd -= ip * b;
  return {a, b, rng.uniform(0.2, 1.2), ad, bd, rng.uniform(-1.0, 1.0)};
}

inline RunResult run_appendix(const ExperimentConfig& c) {
  const double eta = c.eta, mu = c.mu;
  if (eta <= 0.0)
    throw std::invalid_argument("config: appendix needs eta > 0");
  Rng rng(c.seed);
  const Mat xi = cpn_zeta(2);
  BiYbOps ops(xi, eta, mu);
  const RealBasis bas = su_basis(3);
  auto tomat = [&](auto&& fn) {
    RMat m(8, 8);
    for (int j = 0; j < 8; ++j)
      m.col(j) = real_coords(bas, fn(bas.generators[j]));
    return m;
  };

  double r_tab = 0.0, r_block = 0.0, r_inv = 0.0, r_col = 0.0, r_action = 0.0;
  r_tab = std::max(
      (tomat([](const Mat& x) { return yang_baxter_R(x); }) - su3_table_R())
          .cwiseAbs()
          .maxCoeff(),
      (tomat([&](const Mat& x) { return ops.pperp.apply(x); }) -
       su3_table_Pperp())
          .cwiseAbs()
          .maxCoeff());
  for (int s = 0; s < c.samples; ++s) {
    const Su3Config cf = random_su3_lab_config(rng);
    const Mat k = su3_config_k(cf);
    const Mat kdot = su3_config_kdot(cf);
    r_tab = std::max(
        r_tab, (tomat([&](const Mat& x) { return Mat(k * x * k.adjoint()); }) -
                su3_table_adk(cf))
                   .cwiseAbs()
                   .maxCoeff());
    r_tab = std::max(
        r_tab, (tomat([&](const Mat& x) { return r_twisted(k, x); }) -
                su3_table_rk(cf))
                   .cwiseAbs()
                   .maxCoeff());
    const RMat big = ops.block_matrix(k);
    Eigen::Matrix4d blk4;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) blk4(i, j) = big(3 + i, 3 + j);
    r_block = std::max(
        r_block, (blk4 - su3_block(cf, eta, mu)).cwiseAbs().maxCoeff());
    r_inv = std::max(r_inv,
                     (su3_block(cf, eta, mu) * su3_block_inverse(cf, eta, mu) -
                      Eigen::Matrix4d::Identity())
                         .cwiseAbs()
                         .maxCoeff());
    const Mat vperp = ops.pperp.apply(ops.V(k, kdot));
    const RVec vc = real_coords(bas, vperp);
    const Eigen::Vector4d v4(vc(3), vc(4), vc(5), vc(6));
    r_col = std::max(r_col,
                     (v4 - su3_V_column(cf, eta, mu)).cwiseAbs().maxCoeff());
    r_action = std::max(r_action,
                        std::abs(ops.lagrangian(k, kdot) -
                                 su3_closed_form_lagrangian(cf, eta, mu)));
  }

  const double tab_tol = tolerance_or(c, "tables", 1e-10);
  const double action_tol = tolerance_or(c, "action", 1e-9);
  RunResult out;
  out.report["config"] = config_echo(c);
  auto entry = [](double res, double tol) {
    OrderedJson e;
    e["max_residual"] = res;
    e["threshold"] = tol;
    e["pass"] = res <= tol;
    return e;
  };
  out.report["tables"] = entry(r_tab, tab_tol);
  out.report["block"] = entry(r_block, tab_tol);
  out.report["block_inverse"] = entry(r_inv, tab_tol);
  out.report["velocity_column"] = entry(r_col, tab_tol);
  out.report["action"] = entry(r_action, action_tol);
  const bool pass = r_tab <= tab_tol && r_block <= tab_tol &&
                    r_inv <= tab_tol && r_col <= tab_tol &&
                    r_action <= action_tol;
  out.report["pass"] = pass;
  out.status = pass ? 0 : 2;
  return out;
}

// --------------------------------------------------------------------------
// parity: closed-form vs generic-machinery integrand comparisons
// --------------------------------------------------------------------------

inline RunResult run_parity(const ExperimentConfig& c) {
  Rng rng(c.seed);
  double max_res = 0.0;
  double tol = tolerance_or(c, "parity", 1e-9);

  if (c.model == "biyb-su2") {
    if (c.eta <= 0.0)
      throw std::invalid_argument("config: parity biyb-su2 needs eta > 0");
    Mat xi(2, 2);
    xi << cplx(0, 1), 0, 0, cplx(0, -1);
    BiYbOps ops(xi, c.eta, c.mu);
    for (int s = 0; s < c.samples; ++s) {
      cplx u = rng.cnormal(), v = rng.cnormal();
      const double nn = std::sqrt(std::norm(u) + std::norm(v));
      u /= nn;
      v /= nn;
      cplx ud = rng.cnormal(), vd = rng.cnormal();
      const double ip = (std::conj(u) * ud + std::conj(v) * vd).real();
      ud -= ip * u;
      vd -= ip * v;
      const Eigen::Vector3d x = su2_sphere_point(u, v);
      const Eigen::Vector3d xd = su2_sphere_velocity(u, v, ud, vd);
      const double general =
          ops.lagrangian(su2_from_uv(u, v), su2_from_uv_velocity(ud, vd));
      const double closed = biyb_su2_lagrangian(x, xd, c.eta, c.mu) +
                            biyb_su2_total_derivative(x, xd, c.eta, c.mu);
      max_res = std::max(max_res, std::abs(general - closed));
    }
  } else if (c.model == "biyb-su3") {
    if (c.eta <= 0.0)
      throw std::invalid_argument("config: parity biyb-su3 needs eta > 0");
    BiYbOps ops(cpn_zeta(2), c.eta, c.mu);
    for (int s = 0; s < c.samples; ++s) {
      const Su3Config cf = random_su3_lab_config(rng);
      max_res = std::max(
          max_res, std::abs(ops.lagrangian(su3_config_k(cf),
                                           su3_config_kdot(cf)) -
                            su3_closed_form_lagrangian(cf, c.eta, c.mu)));
    }
  } else if (c.model == "yb-cpn") {
    if (c.eta <= 0.0)
      throw std::invalid_argument("config: parity yb-cpn needs eta > 0");
    BiYbOps ops(cpn_zeta(c.N), c.eta, 0.0);
    const double np1 = c.N + 1;
    for (int s = 0; s < c.samples; ++s) {
      CVec chi(c.N), chid(c.N);
      for (int i = 0; i < c.N; ++i) {
        chi(i) = 0.3 * rng.cnormal();
        chid(i) = rng.cnormal();
      }
      if (chi.norm() > 0.8) chi *= 0.5 / chi.norm();
      const double chart = yb_cpn_lagrangian_chart(chi, chid, c.eta);
      max_res = std::max(
          max_res,
          std::abs(ops.lagrangian(cpn_embed(chi),
                                  cpn_embed_velocity(chi, chid)) -
                   chart));
      const double udot = 2.0 * (chi.adjoint() * chid).value().real();
      const double expect =
          chart + np1 * np1 + c.eta * np1 / (1.0 + c.eta * c.eta) * udot;
      max_res = std::max(
          max_res, std::abs(yb_cpn_lagrangian_global(
                                cpn_gauge_fix(chi),
                                cpn_gauge_fix_velocity(chi, chid), c.eta) -
                            expect));
    }
  } else if (c.model == "cpn") {
    for (int s = 0; s < c.samples; ++s) {
      CVec chi(c.N), chid(c.N), w(c.N);
      for (int i = 0; i < c.N; ++i) {
        chi(i) = 0.3 * rng.cnormal();
        chid(i) = rng.cnormal();
        w(i) = rng.cnormal();
      }
      if (chi.norm() > 0.8) chi *= 0.5 / chi.norm();
      max_res = std::max(
          max_res,
          std::abs(cpn_lagrangian_chart(chi, chid) -
                   cpn_lagrangian_global(cpn_gauge_fix(chi),
                                         cpn_gauge_fix_velocity(chi, chid))));
      max_res = std::max(
          max_res, std::abs(cpn_hamiltonian_w(chi, w) -
                            cpn_hamiltonian(chi, cpn_p_from_w(chi, w))));
    }
  } else if (c.model == "pendulum" || c.model == "pcm") {
    // second-order residuals from uniformly sampled unitaries along the
    // integrated group flow: the Bianchi combination stays zero, the
    // genuine equation of motion holds on solutions
    const TStarModel m = make_tstar_model(c);
    const auto traj =
        integrate(m, TStarPoint{random_unitary(rng, m.N, 0.5), random_su(rng, m.N, 0.5)}, c.t_end, c.dt,
                  scheme_options(c));
    std::vector<Mat> ks;
    ks.reserve(traj.points.size());
    for (const auto& l : traj.points) ks.push_back(l.k);
    const auto [bia, te] = pcm_second_order_residual(m.xi.mu, ks, c.dt);
    max_res = std::max(bia, te);
    tol = tolerance_or(c, "parity", 1e-5);  // finite-difference limited
  } else {
    throw std::invalid_argument("config: parity does not support model " +
                                c.model);
  }

  RunResult out;
  out.report["config"] = config_echo(c);
  out.report["max_residual"] = max_res;
  out.report["threshold"] = tol;
  out.report["pass"] = max_res <= tol;
  out.status = (max_res <= tol) ? 0 : 2;
  return out;
}

}  // namespace lab

/// Executes the configured experiment; no filesystem access.
inline RunResult run_experiment(const ExperimentConfig& c) {
  validate_config(c);
  if (c.command == "simulate") return lab::run_simulate(c);
  if (c.command == "verify") return lab::run_verify(c);
  if (c.command == "lax-check") return lab::run_lax_check(c);
  if (c.command == "reduce") return lab::run_reduce(c);
  if (c.command == "appendix") return lab::run_appendix(c);
  return lab::run_parity(c);
}

/// Executes and writes the configured artifacts. Returns the exit status.
inline int run_and_emit(const ExperimentConfig& c) {
  const RunResult r = run_experiment(c);
  if (!c.json_path.empty()) write_json(c.json_path, r.report);
  if (!c.csv_path.empty() && !r.csv.empty()) {
    std::ofstream f(c.csv_path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + c.csv_path);
    f << r.csv;
  }
  return r.status;
}

}  // namespace emodel
