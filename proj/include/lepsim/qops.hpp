#pragma once

#include <string>
#include <utility>
#include <vector>

#include "lepsim/types.hpp"

namespace lepsim {

HilbertSpace make_space(const std::vector<std::pair<std::string, int>>& factors);

CMat kron(const CMat& a, const CMat& b);

// Bosonic annihilation operator on a Fock space truncated at |cutoff>.
// Dimension cutoff + 1; a|n> = sqrt(n)|n-1>.
Operator annihilation_operator(int cutoff);

CMat number_matrix(int cutoff);

// |to><from| acting on one named factor, embedded into the full space.
Operator transition_operator(const HilbertSpace& space, int from_state,
                             int to_state, const std::string& factor);

// Embed a single-factor operator into a product space at the named factor.
Operator embed(const CMat& op, const HilbertSpace& space,
               const std::string& factor);

cxd expectation(const DensityMatrix& rho, const Operator& op);

CMat pauli_x();
CMat pauli_y();
CMat pauli_z();

// Thermal Fock state at mean occupation nbar, renormalized on the
// truncated space.
CMat thermal_matrix(double nbar, int cutoff);

// Throws ModelError if rho is not a valid state: hermiticity or trace
// deviation beyond 1e-10, or an eigenvalue below -1e-8.
void check_density(const CMat& rho);

}  // namespace lepsim
