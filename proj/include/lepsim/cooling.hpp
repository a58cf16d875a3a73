#pragma once

#include <array>
#include <string>
#include <vector>

#include "lepsim/liouville.hpp"
#include "lepsim/types.hpp"

namespace lepsim {

// Driven two-level ion in a trap of frequency nu, carrier Rabi omega_g,
// laser detuning delta_detuning, Lamb-Dicke parameter eta, decay gamma,
// Fock cutoff n_cut.
struct SidebandParams {
  double nu = 1.0;
  double delta_detuning = 0.987;
  double omega_g = 0.16;
  double eta = 0.1;
  double gamma = 0.032;
  int n_cut = 5;
};

void validate(const SidebandParams& p);

struct EITParams {
  double gamma_e = 0.0015;
  double omega_r = 1.0;
  double delta_r = 1.0;
  double omega_g = 0.006;
  double delta_g = 1.0;
  double eta = 0.1;
  double nu = 0.2;
};

void validate(const EITParams& p);

// Light shift delta = (sqrt(omega_g^2 + Delta^2) - Delta) / 2.
double ac_stark_shift(double omega_g, double delta_detuning);
double ac_stark_shift(const SidebandParams& p);

// Full ion-trap model on atom (x) fock, atom factor leftmost.
LindbladModel build_sideband_model(const SidebandParams& p);

// Effective four-level model on {e1, e0, g1, g0} closing the slow
// sideband dynamics at first order in eta.
LindbladModel subsystem_model(const SidebandParams& p);

struct SubsystemSpectrum {
  std::array<cxd, 16> eigenvalues;
  cxd kappa_prime;
  double alpha = 0.0;
  double beta = 0.0;
  double delta = 0.0;
  double omega = 0.0;
  cxd epsilon;
  cxd epsilon_prime;
};

// Closed-form 16-eigenvalue list of the subsystem generator.
SubsystemSpectrum subsystem_spectrum(const SidebandParams& p);

// Analytic cooling gap Re[(gamma - kappa')/4].
double subsystem_gap(const SidebandParams& p);

// Slowest nonzero rate of the full model's generator.
double full_gap(const SidebandParams& p);

// Resonance condition omega_g^2 + Delta^2 = nu^2 for the subsystem LEP.
// omega_g_star is the root at the given detuning; no solution when
// |Delta| >= nu.
struct LepCondition {
  double residual = 0.0;
  double omega_g_star = 0.0;
  bool has_solution = false;
  std::string diagnostic;
};

LepCondition lep_condition(const SidebandParams& p);

// |g><g| (x) thermal(nbar) on the model space.
DensityMatrix cooling_initial_state(const SidebandParams& p, double nbar);

// Stroboscopic phonon-number trajectory; dt is shortened to tile t_final.
// Records the top-Fock population and flags truncation above 1e-6.
Trajectory mean_phonon_trajectory(const SidebandParams& p,
                                  const DensityMatrix& rho0, double t_final,
                                  double dt, bool store_states = false);

// Stationary mean phonon number. With verify_cutoff, recomputes at twice
// the cutoff and rejects a relative change of 1% or more.
double cooling_limit(const SidebandParams& p, bool verify_cutoff = false);

struct GapMap {
  std::vector<double> omega_over_gamma;
  std::vector<double> delta_over_nu;
  std::vector<double> gap;  // row-major, omega_over_gamma outer
};

GapMap gap_map(const SidebandParams& base,
               const std::vector<double>& omega_over_gamma,
               const std::vector<double>& delta_over_nu, int workers = 0);

// Project the EIT three-level scheme onto its bright dressed state,
// yielding effective sideband parameters (n_cut defaults to 5).
SidebandParams eit_reduce(const EITParams& p);

// Detuning that places the dressed resonance on the trap frequency.
double eit_optimal_detuning(double omega_r, double delta_r, double nu);
double eit_optimal_detuning(const EITParams& p);

}  // namespace lepsim
