#pragma once

#include <vector>

#include "lepsim/liouville.hpp"
#include "lepsim/types.hpp"

namespace lepsim {

// Fixed-step RK4 on the master equation, sampling every step. Rejects dt
// above the stability bound 0.1 / max(||H||, sum ||J^dag J||) with a
// suggested step in the message; dt is shortened so the steps tile
// t_final exactly. Trace drift beyond 1e-10 or negativity beyond -1e-6
// along the way raises NumericsError.
Trajectory integrate(const LindbladModel& model, const DensityMatrix& rho0,
                     double t_final, double dt, bool store_states = true);

// Evolution by the exponential of the superoperator at the given times.
// A uniform time grid starting at 0 reuses one stroboscopic propagator.
Trajectory evolve_expm(const Superoperator& superop, const DensityMatrix& rho0,
                       const std::vector<double>& times);

// Hilbert-Schmidt (Frobenius) distance.
double hs_distance(const DensityMatrix& a, const DensityMatrix& b);

// Least-squares slope of ln(distance) over the trailing window_fraction
// of the time grid; distances at or below 1e-13 are dropped. Fewer than
// four usable points raises NumericsError. Returns the decay rate
// (minus the slope).
double fit_asymptotic_rate(const std::vector<double>& times,
                           const std::vector<double>& distances,
                           double window_fraction = 0.4);

// Closed-form populations x = rho_bb, y = rho_cc and coherence
// z = i(rho_cb - rho_bc) for the three-level model started in |b><b|.
struct ThreeLevelCurves {
  std::vector<double> x, y, z;
};

ThreeLevelCurves analytic_three_level(double gamma, double omega,
                                      const std::vector<double>& times);

// Generator of the closed (x, y, z) subsystem.
Eigen::Matrix3d reduced_three_vector_generator(double gamma, double omega);

}  // namespace lepsim
