// lepsim: Liouvillian spectra, exceptional points, and trapped-ion cooling.
//
// Every subcommand reads an optional JSON config, runs one computation, and
// writes a CSV or JSON table. Exit codes: 0 success, 1 model/config error,
// 2 numerical failure.

#include <cstdio>
#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "lepsim/cooling.hpp"
#include "lepsim/dynamics.hpp"
#include "lepsim/floquet.hpp"
#include "lepsim/liouville.hpp"
#include "lepsim/rng.hpp"
#include "lepsim/sweep.hpp"

namespace {

using namespace lepsim;

struct CommonOpts {
  std::string config;
  std::string out;
  std::string format = "csv";
  int workers = -1;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--config", opts.config, "JSON config file");
  cmd->add_option("--out", opts.out,
                  "output path ('-' for stdout; default <command>.<format>)");
  cmd->add_option("--format", opts.format, "output format")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--workers", opts.workers,
                  "worker threads (0 = hardware concurrency)");
}

SweepConfig resolve_config(const CommonOpts& opts, SweepConfig base) {
  if (!opts.config.empty()) base = load_config(opts.config, base);
  if (opts.workers >= 0) base.workers = opts.workers;
  return base;
}

void emit(const ResultTable& table, const CommonOpts& opts,
          const std::string& command) {
  std::string path = opts.out;
  if (path.empty()) path = command + "." + opts.format;
  emit_table(table, opts.format, path);
  if (path != "-") std::cerr << "wrote " << path << "\n";
}

void attach_conservation(ResultTable& table, const Trajectory& traj) {
  table.meta["conservation"] = {
      {"max_trace_dev", traj.max_trace_dev},
      {"max_herm_dev", traj.max_herm_dev},
      {"min_eigenvalue", traj.min_eigenvalue},
  };
}

int run_spectrum3(const CommonOpts& opts) {
  SweepConfig base;
  base.model_kind = "three_level";
  base.axes = {{"omega", 0.02, 3.0, 60}};
  base.outputs = {"gap", "reference_gap", "spectrum"};
  SweepConfig cfg = resolve_config(opts, base);
  emit(run_sweep(cfg), opts, "spectrum3");
  return 0;
}

int run_dynamics3(const CommonOpts& opts) {
  SweepConfig base;
  base.model_kind = "three_level";
  base.params = {{"gamma", 1.0}, {"omega", 0.5}};
  SweepConfig cfg = resolve_config(opts, base);
  auto params = effective_params(cfg);
  double gamma = params.at("gamma");
  double omega = params.at("omega");

  LindbladModel model = three_level_model(gamma, omega);
  DensityMatrix rho0{model.space, CMat::Zero(3, 3)};
  rho0.matrix(1, 1) = 1.0;
  Trajectory traj = integrate(model, rho0, cfg.t_final, cfg.dt, true);
  ThreeLevelCurves ref = analytic_three_level(gamma, omega, traj.times);

  ResultTable table;
  table.columns = {"t", "x", "y", "z", "pop_a", "x_ref", "y_ref", "z_ref"};
  for (size_t i = 0; i < traj.times.size(); ++i) {
    const CMat& rho = traj.states[i];
    double x = rho(1, 1).real();
    double y = rho(2, 2).real();
    double z = (cxd(0, 1) * (rho(2, 1) - rho(1, 2))).real();
    table.rows.push_back({Cell::number(traj.times[i]), Cell::number(x),
                          Cell::number(y), Cell::number(z),
                          Cell::number(rho(0, 0).real()),
                          Cell::number(ref.x[i]), Cell::number(ref.y[i]),
                          Cell::number(ref.z[i])});
  }
  table.meta = config_echo(cfg);
  attach_conservation(table, traj);
  emit(table, opts, "dynamics3");
  return 0;
}

int run_mpemba(const CommonOpts& opts) {
  SweepConfig base;
  base.model_kind = "three_level";
  base.params = {{"gamma", 3.0}, {"omega", 1.0}};
  base.t_final = 0.0;  // auto: 25 / slowest full-space rate
  SweepConfig cfg = resolve_config(opts, base);
  auto params = effective_params(cfg);
  double gamma = params.at("gamma");
  double omega = params.at("omega");

  ThreeLevelReference ref = three_level_reference(gamma, omega);
  double rate_slow = (gamma - ref.kappa.real()) / 4.0;
  double rate_sub = (gamma - ref.kappa.real()) / 2.0;
  if (rate_slow <= 0.0)
    throw NumericsError("mpemba: relaxation rate is not positive");
  // Shared grid sized for the faster-decaying subspace curve, so both
  // distance columns stay above the fit floor across the window.
  double t_final = cfg.t_final > 0.0 ? cfg.t_final : 25.0 / rate_sub;

  LindbladModel model = three_level_model(gamma, omega);
  Superoperator sup = build_superoperator(model);
  DensityMatrix stat = stationary_state_direct(sup);

  Rng rng(cfg.seed);
  CMat rho_full = random_density(3, rng);
  CMat g2 = ginibre(2, rng);
  CMat rho2 = g2 * g2.adjoint();
  rho2 /= rho2.trace();
  CMat rho_sub = CMat::Zero(3, 3);
  rho_sub.block(1, 1, 2, 2) = rho2;

  const int n_times = 400;
  std::vector<double> times(n_times);
  for (int i = 0; i < n_times; ++i)
    times[i] = t_final * double(i) / double(n_times - 1);

  Trajectory tr_full =
      evolve_expm(sup, DensityMatrix{model.space, rho_full}, times);
  Trajectory tr_sub =
      evolve_expm(sup, DensityMatrix{model.space, rho_sub}, times);

  std::vector<double> dist_full(n_times), dist_sub(n_times);
  for (int i = 0; i < n_times; ++i) {
    dist_full[i] = (tr_full.states[i] - stat.matrix).norm();
    dist_sub[i] = (tr_sub.states[i] - stat.matrix).norm();
  }
  double fit_full = fit_asymptotic_rate(times, dist_full);
  double fit_sub = fit_asymptotic_rate(times, dist_sub);

  ResultTable table;
  table.columns = {"t",        "dist_full", "dist_sub",      "rate_full",
                   "rate_sub", "rate_slow_ref", "rate_sub_ref"};
  for (int i = 0; i < n_times; ++i) {
    table.rows.push_back({Cell::number(times[i]), Cell::number(dist_full[i]),
                          Cell::number(dist_sub[i]), Cell::number(fit_full),
                          Cell::number(fit_sub), Cell::number(rate_slow),
                          Cell::number(rate_sub)});
  }
  table.meta = config_echo(cfg);
  table.meta["t_final"] = t_final;
  emit(table, opts, "mpemba");
  return 0;
}

int run_floquet_phase(const CommonOpts& opts) {
  SweepConfig base;
  base.model_kind = "three_level";
  base.axes = {{"drive_omega", 0.05, 3.0, 120}, {"gamma", 0.05, 6.0, 120}};
  base.outputs = {"mu", "floquet_gap"};
  base.floquet.enabled = true;
  SweepConfig cfg = resolve_config(opts, base);
  cfg.floquet.enabled = true;
  emit(run_sweep(cfg), opts, "floquet-phase");
  return 0;
}

int run_floquet_gap(const CommonOpts& opts) {
  SweepConfig base;
  base.model_kind = "three_level";
  base.axes = {{"gamma", 0.1, 6.0, 120}};
  base.outputs = {"floquet_gap", "mu", "gap"};
  base.floquet.enabled = true;
  base.floquet.drive_omega = 1.0;
  base.floquet.fraction = 0.4;
  SweepConfig cfg = resolve_config(opts, base);
  cfg.floquet.enabled = true;
  emit(run_sweep(cfg), opts, "floquet-gap");
  return 0;
}

int run_cooling_gap_map(const CommonOpts& opts) {
  SweepConfig base;
  base.model_kind = "sideband";
  base.axes = {{"omega_over_gamma", 0.1, 2.0, 40},
               {"delta_over_nu", 0.9, 1.01, 40}};
  base.outputs = {"gap", "subsystem_gap"};
  SweepConfig cfg = resolve_config(opts, base);
  emit(run_sweep(cfg), opts, "cooling-gap-map");
  return 0;
}

int run_cooling_dynamics(const CommonOpts& opts) {
  SweepConfig base;
  base.model_kind = "sideband";
  base.n_cut = 10;
  base.t_final = 0.0;  // auto: 40 / full gap at n_cut = 5
  base.dt = 0.0;       // auto: t_final / 3000
  SweepConfig cfg = resolve_config(opts, base);
  auto params = effective_params(cfg);

  SidebandParams sp = sideband_from(params, cfg.n_cut);
  validate(sp);
  double t_final = cfg.t_final;
  if (t_final <= 0.0) {
    SidebandParams coarse = sp;
    coarse.n_cut = 5;
    double g = full_gap(coarse);
    if (g <= 0.0) throw NumericsError("cooling-dynamics: gap is not positive");
    t_final = 40.0 / g;
  }
  double dt = cfg.dt > 0.0 ? cfg.dt : t_final / 3000.0;

  DensityMatrix rho0 = cooling_initial_state(sp, cfg.nbar);
  Trajectory traj = mean_phonon_trajectory(sp, rho0, t_final, dt);
  double n_ss = cooling_limit(sp);

  ResultTable table;
  table.columns = {"t", "mean_phonon", "n_ss"};
  const auto& nbar_t = traj.observables.at("mean_phonon");
  for (size_t i = 0; i < traj.times.size(); ++i) {
    table.rows.push_back({Cell::number(traj.times[i]),
                          Cell::number(nbar_t[i]), Cell::number(n_ss)});
  }
  table.meta = config_echo(cfg);
  table.meta["t_final"] = t_final;
  table.meta["dt"] = dt;
  table.meta["top_fock_max"] = traj.top_fock_max;
  table.meta["truncation_warning"] = traj.truncation_warning;
  attach_conservation(table, traj);
  if (traj.truncation_warning)
    std::cerr << "warning: top Fock-level population reached "
              << traj.top_fock_max << "; raise n_cut\n";
  emit(table, opts, "cooling-dynamics");
  return 0;
}

int run_cooling_limit(const CommonOpts& opts) {
  SweepConfig base;
  base.model_kind = "sideband";
  base.axes = {{"omega_over_gamma", 0.1, 2.0, 25},
               {"delta_over_nu", 0.9, 1.01, 25}};
  base.outputs = {"cooling_limit"};
  SweepConfig cfg = resolve_config(opts, base);
  emit(run_sweep(cfg), opts, "cooling-limit");
  return 0;
}

int run_eit_condition(const CommonOpts& opts) {
  SweepConfig base;
  base.model_kind = "eit";
  base.outputs = {"gap", "delta_g_star", "residual"};
  SweepConfig cfg = resolve_config(opts, base);
  if (cfg.axes.empty()) {
    auto params = effective_params(cfg);
    EITParams ep = eit_from(params);
    validate(ep);
    double star = eit_optimal_detuning(ep);
    double half = 0.5 * ep.nu;
    cfg.axes = {{"delta_g", star - half, star + half, 101}};
  }
  emit(run_sweep(cfg), opts, "eit-condition");
  return 0;
}

int run_ep_report(const CommonOpts& opts) {
  SweepConfig base;
  base.model_kind = "three_level";
  base.params = {{"gamma", 2.0}, {"omega", 1.0}};
  base.cluster_tol = 1e-4;
  SweepConfig cfg = resolve_config(opts, base);
  auto params = effective_params(cfg);

  LindbladModel model =
      three_level_model(params.at("gamma"), params.at("omega"));
  Superoperator sup = build_superoperator(model);
  EPReport report = detect_ep(sup.matrix, cfg.cluster_tol);

  ResultTable table;
  table.columns = {"center_re", "center_im", "algebraic", "geometric",
                   "blocks", "ep_order"};
  for (const auto& cluster : report.clusters) {
    std::string blocks;
    for (size_t i = 0; i < cluster.blocks.size(); ++i) {
      if (i) blocks += "+";
      blocks += std::to_string(cluster.blocks[i]);
    }
    int order = cluster.blocks.empty() ? 1 : cluster.blocks.front();
    table.rows.push_back(
        {Cell::number(cluster.center.real()),
         Cell::number(cluster.center.imag()),
         Cell::number(double(cluster.algebraic)),
         Cell::number(double(cluster.geometric)), Cell::str(blocks),
         Cell::number(double(order))});
  }
  table.meta = config_echo(cfg);
  emit(table, opts, "ep-report");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Lindblad spectra, Liouvillian exceptional points, and sideband/EIT "
      "cooling"};
  app.require_subcommand(1);

  struct Entry {
    const char* name;
    const char* help;
    int (*fn)(const CommonOpts&);
    CommonOpts opts;
  };
  std::vector<Entry> entries = {
      {"spectrum3", "three-level Liouvillian spectrum and gap sweep",
       run_spectrum3, {}},
      {"dynamics3", "three-level populations and coherence versus time",
       run_dynamics3, {}},
      {"mpemba", "relaxation distance for generic versus subspace states",
       run_mpemba, {}},
      {"floquet-phase", "mu and Floquet gap over the drive-frequency plane",
       run_floquet_phase, {}},
      {"floquet-gap", "Floquet gap along a gamma cut", run_floquet_gap, {}},
      {"cooling-gap-map", "sideband cooling gap over the parameter plane",
       run_cooling_gap_map, {}},
      {"cooling-dynamics", "mean phonon number versus time",
       run_cooling_dynamics, {}},
      {"cooling-limit", "steady-state phonon number over the parameter plane",
       run_cooling_limit, {}},
      {"eit-condition", "EIT cooling gap versus ground-state detuning",
       run_eit_condition, {}},
      {"ep-report", "Jordan structure of the Liouvillian spectrum",
       run_ep_report, {}},
  };
  for (auto& entry : entries) {
    CLI::App* cmd = app.add_subcommand(entry.name, entry.help);
    add_common(cmd, entry.opts);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    for (auto& entry : entries) {
      if (app.got_subcommand(entry.name)) return entry.fn(entry.opts);
    }
    std::cerr << "error: no subcommand\n";
    return 1;
  } catch (const lepsim::ModelError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const lepsim::NumericsError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
