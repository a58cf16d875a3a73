#include "lepsim/cooling.hpp"

#include <cmath>

#include "lepsim/expm.hpp"
#include "lepsim/parallel.hpp"
#include "lepsim/qops.hpp"

namespace lepsim {

void validate(const SidebandParams& p) {
  if (p.nu <= 0) throw ModelError("sideband: nu must be positive");
  if (p.omega_g < 0) throw ModelError("sideband: omega_g must be nonnegative");
  if (p.eta <= 0 || p.eta > 0.3)
    throw ModelError("sideband: eta must lie in (0, 0.3]");
  if (p.gamma < 0) throw ModelError("sideband: gamma must be nonnegative");
  if (p.n_cut < 2) throw ModelError("sideband: n_cut must be at least 2");
}

void validate(const EITParams& p) {
  if (p.gamma_e < 0) throw ModelError("eit: gamma_e must be nonnegative");
  if (p.omega_r < 0) throw ModelError("eit: omega_r must be nonnegative");
  if (p.delta_r <= 0) throw ModelError("eit: delta_r must be positive");
  if (p.omega_g < 0) throw ModelError("eit: omega_g must be nonnegative");
  if (p.eta <= 0 || p.eta > 0.3)
    throw ModelError("eit: eta must lie in (0, 0.3]");
  if (p.nu <= 0) throw ModelError("eit: nu must be positive");
}

double ac_stark_shift(double omega_g, double delta_detuning) {
  if (omega_g == 0) return 0.0;
  return 0.5 * (std::hypot(omega_g, delta_detuning) - delta_detuning);
}

double ac_stark_shift(const SidebandParams& p) {
  return ac_stark_shift(p.omega_g, p.delta_detuning);
}

LindbladModel build_sideband_model(const SidebandParams& p) {
  validate(p);
  LindbladModel m;
  m.space = make_space({{"atom", 2}, {"fock", p.n_cut + 1}});
  CMat a = annihilation_operator(p.n_cut).matrix;
  CMat xq = a + a.adjoint().eval();
  CMat nph = number_matrix(p.n_cut);
  CMat pe(2, 2);
  pe << 0, 0, 0, 1;
  CMat idf = CMat::Identity(p.n_cut + 1, p.n_cut + 1);
  CMat id2 = CMat::Identity(2, 2);
  m.hamiltonian = p.nu * kron(id2, nph) + p.delta_detuning * kron(pe, idf) -
                  0.5 * p.omega_g * kron(pauli_x(), idf) +
                  0.5 * p.eta * p.omega_g * kron(pauli_y(), xq);
  CMat lower(2, 2);
  lower << 0, 1, 0, 0;
  m.jumps.push_back(std::sqrt(p.gamma) * kron(lower, idf));
  return m;
}

LindbladModel subsystem_model(const SidebandParams& p) {
  validate(p);
  const double d = ac_stark_shift(p);
  const double om = p.eta * p.omega_g;
  LindbladModel m;
  m.space = make_space({{"sub", 4}});
  m.hamiltonian = CMat::Zero(4, 4);
  m.hamiltonian(0, 0) = p.delta_detuning + d + p.nu;
  m.hamiltonian(1, 1) = p.delta_detuning + d;
  m.hamiltonian(2, 2) = p.nu - d;
  m.hamiltonian(3, 3) = -d;
  m.hamiltonian(1, 2) = 0.5 * om;
  m.hamiltonian(2, 1) = 0.5 * om;
  CMat j = CMat::Zero(4, 4);
  j(2, 0) = std::sqrt(p.gamma);
  j(3, 1) = std::sqrt(p.gamma);
  m.jumps.push_back(j);
  return m;
}

SubsystemSpectrum subsystem_spectrum(const SidebandParams& p) {
  validate(p);
  SubsystemSpectrum s;
  const double g = p.gamma;
  s.delta = ac_stark_shift(p);
  s.omega = p.eta * p.omega_g;
  s.beta = 2 * s.delta + p.delta_detuning - p.nu;
  s.alpha = p.delta_detuning + 2 * s.delta + p.nu;
  const cxd i(0, 1);
  const double om2 = s.omega * s.omega;
  s.kappa_prime = std::sqrt((cxd(g) + 2.0 * i * s.beta) *
                                (cxd(g) + 2.0 * i * s.beta) -
                            4.0 * om2);
  const double inner = 4 * (s.beta * s.beta + om2) + g * g;
  const double disc = inner * inner - 16 * g * g * om2;
  const double bigs = std::sqrt(std::max(disc, 0.0));
  s.epsilon = std::sqrt(
      cxd(-2 * bigs - 8 * s.beta * s.beta + 2 * g * g - 8 * om2));
  s.epsilon_prime = std::sqrt(
      cxd(2 * bigs - 8 * s.beta * s.beta + 2 * g * g - 8 * om2));

  const cxd ia2 = 0.5 * i * s.alpha;
  s.eigenvalues[0] = 0.0;
  s.eigenvalues[1] = -(g - s.kappa_prime) / 4.0 + ia2;
  s.eigenvalues[2] = std::conj(s.eigenvalues[1]);
  s.eigenvalues[3] = -(g + s.kappa_prime) / 4.0 + ia2;
  s.eigenvalues[4] = std::conj(s.eigenvalues[3]);
  s.eigenvalues[5] = cxd(-g / 2) + i * s.alpha;
  s.eigenvalues[6] = std::conj(s.eigenvalues[5]);
  s.eigenvalues[7] = -(2 * g - s.epsilon) / 4.0;
  s.eigenvalues[8] = -(2 * g + s.epsilon) / 4.0;
  s.eigenvalues[9] = -(2 * g - s.epsilon_prime) / 4.0;
  s.eigenvalues[10] = -(2 * g + s.epsilon_prime) / 4.0;
  s.eigenvalues[11] = -(3 * g - s.kappa_prime) / 4.0 - ia2;
  s.eigenvalues[12] = std::conj(s.eigenvalues[11]);
  s.eigenvalues[13] = -(3 * g + s.kappa_prime) / 4.0 - ia2;
  s.eigenvalues[14] = std::conj(s.eigenvalues[13]);
  s.eigenvalues[15] = -g;
  return s;
}

double subsystem_gap(const SidebandParams& p) {
  SubsystemSpectrum s = subsystem_spectrum(p);
  return (p.gamma - s.kappa_prime.real()) / 4.0;
}

double full_gap(const SidebandParams& p) {
  auto vals = eigenvalues_only(build_superoperator(build_sideband_model(p)).matrix);
  if (std::abs(vals[0]) > 1e-10)
    throw NumericsError("full_gap: leading eigenvalue is not stationary");
  if (vals[1].real() >= -1e-12)
    throw NumericsError("full_gap: no decaying mode found");
  return -vals[1].real();
}

LepCondition lep_condition(const SidebandParams& p) {
  validate(p);
  LepCondition c;
  c.residual = p.omega_g * p.omega_g +
               p.delta_detuning * p.delta_detuning - p.nu * p.nu;
  const double margin = p.nu * p.nu - p.delta_detuning * p.delta_detuning;
  if (margin > 0) {
    c.has_solution = true;
    c.omega_g_star = std::sqrt(margin);
    c.diagnostic = "resonance reachable: omega_g* = sqrt(nu^2 - Delta^2)";
  } else {
    c.has_solution = false;
    c.omega_g_star = 0.0;
    c.diagnostic =
        "no real carrier Rabi satisfies the resonance: |Delta| >= nu";
  }
  return c;
}

DensityMatrix cooling_initial_state(const SidebandParams& p, double nbar) {
  validate(p);
  CMat ground(2, 2);
  ground << 1, 0, 0, 0;
  DensityMatrix rho;
  rho.space = make_space({{"atom", 2}, {"fock", p.n_cut + 1}});
  rho.matrix = kron(ground, thermal_matrix(nbar, p.n_cut));
  return rho;
}

Trajectory mean_phonon_trajectory(const SidebandParams& p,
                                  const DensityMatrix& rho0, double t_final,
                                  double dt, bool store_states) {
  validate(p);
  if (t_final <= 0 || dt <= 0)
    throw ModelError("mean_phonon_trajectory: t_final and dt must be positive");
  LindbladModel model = build_sideband_model(p);
  if (!same_space(model.space, rho0.space))
    throw ModelError("mean_phonon_trajectory: state lives on a different space");
  Superoperator sup = build_superoperator(model);
  const int n = int(std::ceil(t_final / dt - 1e-9));
  const double h = t_final / n;
  const int d = model.space.total_dim;
  const int nf = p.n_cut + 1;
  CMat nop = kron(CMat::Identity(2, 2), number_matrix(p.n_cut));

  CMat prop = expm(sup.matrix * h);
  CVec v = vec(rho0.matrix);
  Trajectory tr;
  tr.times.reserve(n + 1);
  auto& phon = tr.observables["mean_phonon"];
  phon.reserve(n + 1);
  for (int k = 0; k <= n; ++k) {
    if (k > 0) v = prop * v;
    CMat rho = unvec(v);
    tr.times.push_back(k * h);
    phon.push_back((nop * rho).trace().real());
    double top = rho(nf - 1, nf - 1).real() + rho(d - 1, d - 1).real();
    tr.top_fock_max = std::max(tr.top_fock_max, top);
    accumulate_conservation(tr, rho);
    if (store_states) tr.states.push_back(std::move(rho));
  }
  tr.truncation_warning = tr.top_fock_max > 1e-6;
  return tr;
}

double cooling_limit(const SidebandParams& p, bool verify_cutoff) {
  validate(p);
  auto limit_at = [&](int n_cut) {
    SidebandParams q = p;
    q.n_cut = n_cut;
    Superoperator sup = build_superoperator(build_sideband_model(q));
    DensityMatrix ss = stationary_state_direct(sup);
    CMat nop = kron(CMat::Identity(2, 2), number_matrix(n_cut));
    return (nop * ss.matrix).trace().real();
  };
  double base = limit_at(p.n_cut);
  if (verify_cutoff) {
    double doubled = limit_at(2 * p.n_cut);
    double rel = std::abs(base - doubled) / std::max(std::abs(doubled), 1e-300);
    if (rel >= 0.01)
      throw NumericsError("cooling_limit: value moves by " +
                          std::to_string(rel * 100) +
                          "% when the cutoff doubles; raise n_cut");
  }
  return base;
}

GapMap gap_map(const SidebandParams& base,
               const std::vector<double>& omega_over_gamma,
               const std::vector<double>& delta_over_nu, int workers) {
  validate(base);
  GapMap map;
  map.omega_over_gamma = omega_over_gamma;
  map.delta_over_nu = delta_over_nu;
  map.gap.assign(omega_over_gamma.size() * delta_over_nu.size(),
                 std::nan(""));
  const int ny = int(delta_over_nu.size());
  std::vector<std::string> errs(map.gap.size());
  parallel_for(int(map.gap.size()), workers, [&](int idx) {
    SidebandParams p = base;
    p.omega_g = omega_over_gamma[idx / ny] * base.gamma / base.eta;
    p.delta_detuning = delta_over_nu[idx % ny] * base.nu;
    try {
      map.gap[idx] = full_gap(p);
    } catch (const std::exception& e) {
      errs[idx] = e.what();
    }
  });
  for (const auto& e : errs)
    if (!e.empty()) throw NumericsError("gap_map: " + e);
  return map;
}

SidebandParams eit_reduce(const EITParams& p) {
  validate(p);
  const double s = std::hypot(p.omega_r, p.delta_r);
  const double delta_r = 0.5 * (s - p.delta_r);
  const double omega_plus = p.delta_r + delta_r;
  const double sin2 = 0.5 * (1.0 - p.delta_r / s);
  SidebandParams out;
  out.nu = p.nu;
  out.delta_detuning = omega_plus - p.delta_g;
  out.omega_g = std::sqrt(sin2) * p.omega_g;
  out.eta = p.eta;
  out.gamma = p.gamma_e * sin2;
  out.n_cut = 5;
  return out;
}

double eit_optimal_detuning(double omega_r, double delta_r, double nu) {
  if (delta_r <= 0) throw ModelError("eit: delta_r must be positive");
  const double dr = 0.5 * (std::hypot(omega_r, delta_r) - delta_r);
  return dr + delta_r - nu;
}

double eit_optimal_detuning(const EITParams& p) {
  validate(p);
  return eit_optimal_detuning(p.omega_r, p.delta_r, p.nu);
}

}  // namespace lepsim
