#pragma once

#include <complex>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace lepsim {

using cxd = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;

// Invalid configuration or model shape. The CLI maps this to exit code 1.
struct ModelError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Numerical failure: non-convergence, unresolvable degeneracy, violated
// conservation. The CLI maps this to exit code 2.
struct NumericsError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Factor {
  std::string label;
  int dim = 0;
};

// Tensor-product Hilbert space. The leftmost factor is the slowest index:
// a basis state |i0, i1, ...> has flat index ((i0 * d1 + i1) * d2 + ...).
struct HilbertSpace {
  std::vector<Factor> factors;
  int total_dim = 0;
};

bool same_space(const HilbertSpace& a, const HilbertSpace& b);

struct Operator {
  HilbertSpace space;
  CMat matrix;
};

struct DensityMatrix {
  HilbertSpace space;
  CMat matrix;
};

// Open-system model in frequency units (hbar = 1). Jump operators carry
// their sqrt(rate) prefactor.
struct LindbladModel {
  HilbertSpace space;
  CMat hamiltonian;
  std::vector<CMat> jumps;
};

// Sampled evolution with conservation diagnostics accumulated over the
// sampled states. min_eigenvalue is of the Hermitized state.
struct Trajectory {
  std::vector<double> times;
  std::vector<CMat> states;
  std::map<std::string, std::vector<double>> observables;
  double max_trace_dev = 0.0;
  double max_herm_dev = 0.0;
  double min_eigenvalue = 1.0;
  double top_fock_max = 0.0;
  bool truncation_warning = false;
};

}  // namespace lepsim
