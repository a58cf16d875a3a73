#pragma once

#include "lepsim/types.hpp"

namespace lepsim {

// Matrix exponential, Pade-13 with scaling and squaring (Higham 2005).
CMat expm(const CMat& a);

// Principal matrix logarithm. Throws NumericsError if a has an eigenvalue
// on the closed negative real axis (no principal branch).
CMat logm(const CMat& a);

}  // namespace lepsim
