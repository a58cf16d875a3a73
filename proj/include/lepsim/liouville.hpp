#pragma once

#include <vector>

#include "lepsim/types.hpp"

namespace lepsim {

// Row-stacking vectorization: vec(rho)[i*D + j] = rho(i, j), so that
// vec(A rho B) = (A otimes B^T) vec(rho).
CVec vec(const CMat& rho);
CMat unvec(const CVec& v);

// Action of the Lindblad generator on a state, computed directly.
CMat lindblad_action(const LindbladModel& model, const CMat& rho);

struct Superoperator {
  LindbladModel model;
  CMat matrix;
};

// Dense D^2 x D^2 matrix of the generator in row-stacking convention.
// Rejects D^2 > 1024 and a non-Hermitian Hamiltonian.
Superoperator build_superoperator(const LindbladModel& model);

// Canonical eigenvalue order: decreasing real part; within a real-part tie
// (chained at 1e-9) increasing |imag|; within an |imag| tie positive imag
// first.
std::vector<int> canonical_order(const std::vector<cxd>& vals);
std::vector<cxd> canonical_sort(std::vector<cxd> vals);

// Full eigensystem of the generator with biorthogonal left/right mode
// pairs. Left modes satisfy L^dag acting as the adjoint generator,
// paired by Tr[L_i R_j] = delta_ij wherever the pairing is resolvable;
// biorth_condition[i] = |Tr[L_i R_i]| with both modes rescaled to unit
// Frobenius norm (small values flag a defective cluster).
struct Spectrum {
  HilbertSpace space;
  std::vector<cxd> eigenvalues;
  std::vector<CMat> right_modes;
  std::vector<CMat> left_modes;
  std::vector<double> biorth_condition;
  std::vector<bool> degenerate;
};

Spectrum spectrum(const Superoperator& superop);
Spectrum spectrum_of_matrix(const CMat& supermatrix, const HilbertSpace& space);

// Eigenvalues only, canonically sorted.
std::vector<cxd> eigenvalues_only(const CMat& supermatrix);

// Stationary state from the zero mode of a spectrum. Throws NumericsError
// if the zero eigenvalue is not unique at 1e-9 or the trace vanishes.
DensityMatrix stationary_state(const Spectrum& spec);

// Stationary state from a direct linear solve with the trace condition
// replacing one row.
DensityMatrix stationary_state_direct(const Superoperator& superop);

// Slowest nonzero decay rate: -max Re over eigenvalues after removing the
// single stationary eigenvalue.
double liouvillian_gap(const Spectrum& spec);
double gap_of_matrix(const CMat& supermatrix);

// Expansion rho0 = rho_ss + sum_i a_i R_i over the nonstationary modes.
// coefficients[i-1] holds a_i for i >= 1 in canonical order.
struct ModeDecomposition {
  DensityMatrix stationary;
  std::vector<cxd> coefficients;
};

// Throws NumericsError naming the cluster if any biorth_condition is
// below 1e-6 (defective point, expansion ill-defined).
ModeDecomposition mode_decomposition(const Spectrum& spec,
                                     const DensityMatrix& rho0);

Trajectory evolve_spectral(const Spectrum& spec, const ModeDecomposition& dec,
                           const std::vector<double>& times);

// Fold one sampled state into the trajectory's conservation diagnostics.
void accumulate_conservation(Trajectory& tr, const CMat& rho);

// Hermitian content of one mode. For |Im lambda| <= 1e-9 the mode is
// Hermitized and split into its PSD positive/negative parts; otherwise
// the pair (R + R^dag, i(R - R^dag)) is returned.
struct SplitMode {
  bool real_branch = false;
  CMat plus;
  CMat minus;
};

SplitMode split_mode(const CMat& mode, cxd lambda);

// Jordan structure of eigenvalue clusters. Clusters within
// cluster_tol * max(||L||_2, 1); block sizes from rank profiles of
// (L - center)^k at rank_tol. Reported in canonical order of centers.
struct EPCluster {
  cxd center;
  int algebraic = 0;
  int geometric = 0;
  std::vector<int> blocks;
};

struct EPReport {
  std::vector<EPCluster> clusters;
};

EPReport detect_ep(const CMat& supermatrix, double cluster_tol,
                   double rank_tol = 1e-7);

// Three-level lambda system: dark |a>, driven |b> <-> |c| at Rabi omega,
// decay |c> -> |a> at rate gamma.
LindbladModel three_level_model(double gamma, double omega);

// Closed-form eigensystem of the three-level generator, in the printed
// index order (not canonically sorted). Modes come unnormalized as
// printed plus biorthonormalized copies where the pairing is resolvable.
struct ThreeLevelReference {
  cxd kappa;
  std::vector<cxd> eigenvalues;
  std::vector<CMat> right_modes;
  std::vector<CMat> left_modes;
  std::vector<CMat> right_normalized;
  std::vector<CMat> left_normalized;
  std::vector<bool> normalizable;
  double gap = 0.0;
};

ThreeLevelReference three_level_reference(double gamma, double omega);

}  // namespace lepsim
