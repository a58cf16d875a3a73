#include <cmath>
#include <vector>

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "lepsim/cooling.hpp"
#include "lepsim/dynamics.hpp"
#include "lepsim/expm.hpp"
#include "lepsim/floquet.hpp"
#include "lepsim/liouville.hpp"
#include "lepsim/qops.hpp"

namespace py = pybind11;
using namespace lepsim;

namespace {

HilbertSpace space_of_dim(int d) { return make_space({{"sys", d}}); }

int state_dim(const CMat& supermatrix) {
  int n = int(supermatrix.rows());
  int d = int(std::lround(std::sqrt(double(n))));
  if (d * d != n || supermatrix.cols() != n)
    throw ModelError("superoperator must be square with D^2 rows");
  return d;
}

LindbladModel model_from(const CMat& hamiltonian,
                         const std::vector<CMat>& jumps) {
  return LindbladModel{space_of_dim(int(hamiltonian.rows())), hamiltonian,
                       jumps};
}

Superoperator superop_from(const CMat& supermatrix) {
  int d = state_dim(supermatrix);
  LindbladModel model{space_of_dim(d), CMat::Zero(d, d), {}};
  return Superoperator{model, supermatrix};
}

SidebandParams sideband_params(double nu, double delta_detuning,
                               double omega_g, double eta, double gamma,
                               int n_cut) {
  SidebandParams p;
  p.nu = nu;
  p.delta_detuning = delta_detuning;
  p.omega_g = omega_g;
  p.eta = eta;
  p.gamma = gamma;
  p.n_cut = n_cut;
  return p;
}

EITParams eit_params(double gamma_e, double omega_r, double delta_r,
                     double omega_g, double delta_g, double eta, double nu) {
  EITParams p;
  p.gamma_e = gamma_e;
  p.omega_r = omega_r;
  p.delta_r = delta_r;
  p.omega_g = omega_g;
  p.delta_g = delta_g;
  p.eta = eta;
  p.nu = nu;
  return p;
}

py::dict spectrum_dict(const Spectrum& spec) {
  py::dict out;
  out["eigenvalues"] = spec.eigenvalues;
  out["right_modes"] = spec.right_modes;
  out["left_modes"] = spec.left_modes;
  out["biorth_condition"] = spec.biorth_condition;
  out["degenerate"] = spec.degenerate;
  return out;
}

py::dict trajectory_dict(const Trajectory& traj) {
  py::dict out;
  out["times"] = traj.times;
  out["states"] = traj.states;
  out["max_trace_dev"] = traj.max_trace_dev;
  out["max_herm_dev"] = traj.max_herm_dev;
  out["min_eigenvalue"] = traj.min_eigenvalue;
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Lindblad generators, Liouvillian spectra, exceptional points, "
            "and trapped-ion cooling";

  py::register_exception<ModelError>(m, "ModelError", PyExc_ValueError);
  py::register_exception<NumericsError>(m, "NumericsError",
                                        PyExc_RuntimeError);

  m.def(
      "liouvillian",
      [](const CMat& hamiltonian, const std::vector<CMat>& jumps) {
        return build_superoperator(model_from(hamiltonian, jumps)).matrix;
      },
      py::arg("hamiltonian"), py::arg("jumps") = std::vector<CMat>{},
      "Dense generator matrix in the row-stacking convention.");

  m.def(
      "three_level_liouvillian",
      [](double gamma, double omega) {
        return build_superoperator(three_level_model(gamma, omega)).matrix;
      },
      py::arg("gamma"), py::arg("omega"));

  m.def(
      "sideband_liouvillian",
      [](double nu, double delta_detuning, double omega_g, double eta,
         double gamma, int n_cut) {
        SidebandParams p = sideband_params(nu, delta_detuning, omega_g, eta,
                                           gamma, n_cut);
        validate(p);
        return build_superoperator(build_sideband_model(p)).matrix;
      },
      py::arg("nu") = 1.0, py::arg("delta_detuning") = 0.987,
      py::arg("omega_g") = 0.16, py::arg("eta") = 0.1,
      py::arg("gamma") = 0.032, py::arg("n_cut") = 5);

  m.def(
      "spectrum",
      [](const CMat& supermatrix) {
        int d = state_dim(supermatrix);
        return spectrum_dict(spectrum_of_matrix(supermatrix, space_of_dim(d)));
      },
      py::arg("supermatrix"),
      "Canonically sorted eigenvalues with biorthogonal mode pairs.");

  m.def(
      "liouvillian_gap",
      [](const CMat& supermatrix) { return gap_of_matrix(supermatrix); },
      py::arg("supermatrix"));

  m.def(
      "stationary_state",
      [](const CMat& supermatrix) {
        return stationary_state_direct(superop_from(supermatrix)).matrix;
      },
      py::arg("supermatrix"));

  m.def(
      "expm", [](const CMat& a) { return expm(a); }, py::arg("a"));

  m.def(
      "evolve_expm",
      [](const CMat& supermatrix, const CMat& rho0,
         const std::vector<double>& times) {
        Superoperator sup = superop_from(supermatrix);
        DensityMatrix rho{sup.model.space, rho0};
        return trajectory_dict(evolve_expm(sup, rho, times));
      },
      py::arg("supermatrix"), py::arg("rho0"), py::arg("times"));

  m.def(
      "integrate",
      [](const CMat& hamiltonian, const std::vector<CMat>& jumps,
         const CMat& rho0, double t_final, double dt) {
        LindbladModel model = model_from(hamiltonian, jumps);
        DensityMatrix state{model.space, rho0};
        return trajectory_dict(integrate(model, state, t_final, dt, true));
      },
      py::arg("hamiltonian"), py::arg("jumps"), py::arg("rho0"),
      py::arg("t_final"), py::arg("dt"));

  m.def(
      "hs_distance",
      [](const CMat& a, const CMat& b) {
        if (a.rows() != b.rows() || a.cols() != b.cols())
          throw ModelError("hs_distance: shape mismatch");
        HilbertSpace space = space_of_dim(int(a.rows()));
        return hs_distance(DensityMatrix{space, a}, DensityMatrix{space, b});
      },
      py::arg("a"), py::arg("b"));

  m.def("fit_asymptotic_rate", &fit_asymptotic_rate, py::arg("times"),
        py::arg("distances"), py::arg("window_fraction") = 0.4);

  m.def(
      "detect_ep",
      [](const CMat& supermatrix, double cluster_tol, double rank_tol) {
        EPReport report = detect_ep(supermatrix, cluster_tol, rank_tol);
        py::list clusters;
        for (const auto& c : report.clusters) {
          py::dict entry;
          entry["center"] = c.center;
          entry["algebraic"] = c.algebraic;
          entry["geometric"] = c.geometric;
          entry["blocks"] = c.blocks;
          clusters.append(entry);
        }
        return clusters;
      },
      py::arg("supermatrix"), py::arg("cluster_tol") = 1e-6,
      py::arg("rank_tol") = 1e-7,
      "Jordan block structure of clustered eigenvalues.");

  m.def(
      "analytic_three_level",
      [](double gamma, double omega, const std::vector<double>& times) {
        ThreeLevelCurves c = analytic_three_level(gamma, omega, times);
        py::dict out;
        out["x"] = c.x;
        out["y"] = c.y;
        out["z"] = c.z;
        return out;
      },
      py::arg("gamma"), py::arg("omega"), py::arg("times"));

  m.def(
      "three_level_reference_eigenvalues",
      [](double gamma, double omega) {
        return three_level_reference(gamma, omega).eigenvalues;
      },
      py::arg("gamma"), py::arg("omega"),
      "Closed-form eigenvalue list in the printed index order.");

  m.def(
      "monodromy",
      [](const CMat& hamiltonian, const std::vector<CMat>& jumps,
         double drive_omega, double fraction) {
        LindbladModel on = model_from(hamiltonian, jumps);
        FloquetProtocol protocol;
        protocol.omega = drive_omega;
        protocol.tau = fraction * (2.0 * M_PI / drive_omega);
        Monodromy p = monodromy(on, protocol);
        return py::make_tuple(p.matrix, p.period);
      },
      py::arg("hamiltonian"), py::arg("jumps"), py::arg("drive_omega"),
      py::arg("fraction"),
      "One-period propagator and period for a square-wave dissipation "
      "protocol; the jumps are off for fraction * T.");

  m.def(
      "floquet_gap",
      [](const CMat& matrix, double period) {
        int d = state_dim(matrix);
        return floquet_gap(Monodromy{matrix, period, space_of_dim(d)});
      },
      py::arg("monodromy_matrix"), py::arg("period"));

  m.def(
      "mu_parameter",
      [](const CMat& matrix) {
        int d = state_dim(matrix);
        return mu_parameter(Monodromy{matrix, 1.0, space_of_dim(d)});
      },
      py::arg("monodromy_matrix"));

  m.def(
      "full_gap",
      [](double nu, double delta_detuning, double omega_g, double eta,
         double gamma, int n_cut) {
        return full_gap(sideband_params(nu, delta_detuning, omega_g, eta,
                                        gamma, n_cut));
      },
      py::arg("nu") = 1.0, py::arg("delta_detuning") = 0.987,
      py::arg("omega_g") = 0.16, py::arg("eta") = 0.1,
      py::arg("gamma") = 0.032, py::arg("n_cut") = 5);

  m.def(
      "subsystem_eigenvalues",
      [](double nu, double delta_detuning, double omega_g, double eta,
         double gamma) {
        SubsystemSpectrum s = subsystem_spectrum(
            sideband_params(nu, delta_detuning, omega_g, eta, gamma, 5));
        return std::vector<cxd>(s.eigenvalues.begin(), s.eigenvalues.end());
      },
      py::arg("nu") = 1.0, py::arg("delta_detuning") = 0.987,
      py::arg("omega_g") = 0.16, py::arg("eta") = 0.1,
      py::arg("gamma") = 0.032,
      "Closed-form 16-eigenvalue list of the subsystem generator.");

  m.def(
      "subsystem_gap",
      [](double nu, double delta_detuning, double omega_g, double eta,
         double gamma) {
        return subsystem_gap(
            sideband_params(nu, delta_detuning, omega_g, eta, gamma, 5));
      },
      py::arg("nu") = 1.0, py::arg("delta_detuning") = 0.987,
      py::arg("omega_g") = 0.16, py::arg("eta") = 0.1,
      py::arg("gamma") = 0.032);

  m.def(
      "cooling_limit",
      [](double nu, double delta_detuning, double omega_g, double eta,
         double gamma, int n_cut, bool verify_cutoff) {
        return cooling_limit(sideband_params(nu, delta_detuning, omega_g, eta,
                                             gamma, n_cut),
                             verify_cutoff);
      },
      py::arg("nu") = 1.0, py::arg("delta_detuning") = 0.987,
      py::arg("omega_g") = 0.16, py::arg("eta") = 0.1,
      py::arg("gamma") = 0.032, py::arg("n_cut") = 5,
      py::arg("verify_cutoff") = false);

  m.def(
      "mean_phonon",
      [](const CMat& rho) {
        int d = int(rho.rows());
        if (d < 4 || d % 2 != 0 || rho.cols() != d)
          throw ModelError("mean_phonon: state must be atom (x) fock");
        int nf = d / 2;
        CMat number = number_matrix(nf - 1);
        CMat op = kron(CMat::Identity(2, 2), number);
        return (rho * op).trace().real();
      },
      py::arg("rho"),
      "Tr[rho (I (x) n)] for a state on atom (x) fock with the atom factor "
      "leftmost.");

  m.def(
      "lep_condition",
      [](double omega_g, double delta_detuning, double nu) {
        SidebandParams p;
        p.omega_g = omega_g;
        p.delta_detuning = delta_detuning;
        p.nu = nu;
        LepCondition c = lep_condition(p);
        py::dict out;
        out["residual"] = c.residual;
        out["omega_g_star"] = c.omega_g_star;
        out["has_solution"] = c.has_solution;
        out["diagnostic"] = c.diagnostic;
        return out;
      },
      py::arg("omega_g"), py::arg("delta_detuning"), py::arg("nu"),
      "Resonance condition omega_g^2 + Delta^2 = nu^2.");

  m.def(
      "ac_stark_shift",
      [](double omega_g, double delta_detuning) {
        return ac_stark_shift(omega_g, delta_detuning);
      },
      py::arg("omega_g"), py::arg("delta_detuning"));

  m.def(
      "eit_reduce",
      [](double gamma_e, double omega_r, double delta_r, double omega_g,
         double delta_g, double eta, double nu) {
        EITParams p = eit_params(gamma_e, omega_r, delta_r, omega_g, delta_g,
                                 eta, nu);
        validate(p);
        SidebandParams r = eit_reduce(p);
        py::dict out;
        out["nu"] = r.nu;
        out["delta_detuning"] = r.delta_detuning;
        out["omega_g"] = r.omega_g;
        out["eta"] = r.eta;
        out["gamma"] = r.gamma;
        out["n_cut"] = r.n_cut;
        return out;
      },
      py::arg("gamma_e") = 0.0015, py::arg("omega_r") = 1.0,
      py::arg("delta_r") = 1.0, py::arg("omega_g") = 0.006,
      py::arg("delta_g") = 1.0, py::arg("eta") = 0.1, py::arg("nu") = 0.2,
      "Effective sideband parameters of the bright dressed state.");

  m.def(
      "eit_optimal_detuning",
      [](double omega_r, double delta_r, double nu) {
        return eit_optimal_detuning(omega_r, delta_r, nu);
      },
      py::arg("omega_r"), py::arg("delta_r"), py::arg("nu"));
}
