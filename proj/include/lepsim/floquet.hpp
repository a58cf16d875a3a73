#pragma once

#include <functional>
#include <vector>

#include "lepsim/liouville.hpp"
#include "lepsim/types.hpp"

namespace lepsim {

// Square-wave dissipation protocol: within each period T = 2 pi / omega
// the jumps are off for tau, then on for T - tau.
struct FloquetProtocol {
  double omega = 1.0;
  double tau = 0.0;
};

struct Monodromy {
  CMat matrix;
  double period = 0.0;
  HilbertSpace space;
};

// One-period propagator P = exp(L_on (T - tau)) exp(L_off tau). The two
// models must share the space and the Hamiltonian; the off model must
// carry no dissipation.
Monodromy monodromy(const LindbladModel& on, const LindbladModel& off,
                    const FloquetProtocol& protocol);

// Convenience: off phase is the on model with its jumps removed.
Monodromy monodromy(const LindbladModel& on, const FloquetProtocol& protocol);

// Slowest Floquet decay rate -ln r*/T over eigenvalues away from the
// stationary unit circle point(s).
double floquet_gap(const Monodromy& p);

// Modulus splitting of the two leading nonstationary multiplier clusters,
// (m0 - m1)/(m0 + m1). Throws NumericsError when fewer than two clusters
// survive (fully degenerate moduli).
double mu_parameter(const Monodromy& p);

// Effective generator log(P)/T on the principal branch. Throws
// NumericsError if P has an eigenvalue on the closed negative real axis.
CMat floquet_generator(const Monodromy& p);

struct PhasePoint {
  double omega = 0.0;
  double gamma = 0.0;
  double mu = 0.0;
  double gap = 0.0;
  std::string error;
};

struct PhaseDiagram {
  std::vector<double> omegas;
  std::vector<double> gammas;
  std::vector<PhasePoint> points;  // row-major, omega outer, gamma inner
};

// Sweep of (drive frequency, dissipation rate) with tau = fraction * T.
// Per-point failures land in the error field, the sweep continues.
PhaseDiagram phase_diagram(
    const std::function<LindbladModel(double)>& family_of_gamma,
    const std::vector<double>& omegas, const std::vector<double>& gammas,
    double fraction, int workers = 0);

}  // namespace lepsim
