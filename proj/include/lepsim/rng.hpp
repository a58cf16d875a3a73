#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "lepsim/types.hpp"

namespace lepsim {

// Deterministic generator: fixed 53-bit uniforms from mt19937_64 and a
// Box-Muller normal, so seeded streams are reproducible.
class Rng {
 public:
  explicit Rng(uint64_t seed) : gen_(seed) {}

  double uniform() { return double(gen_() >> 11) * 0x1.0p-53; }

  double normal() {
    if (have_) {
      have_ = false;
      return cached_;
    }
    double u1 = 1.0 - uniform();
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double th = 2.0 * M_PI * u2;
    cached_ = r * std::sin(th);
    have_ = true;
    return r * std::cos(th);
  }

 private:
  std::mt19937_64 gen_;
  double cached_ = 0.0;
  bool have_ = false;
};

inline CMat ginibre(int d, Rng& rng) {
  CMat g(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) g(i, j) = cxd(rng.normal(), rng.normal());
  return g;
}

inline CMat random_density(int d, Rng& rng) {
  CMat g = ginibre(d, rng);
  CMat rho = g * g.adjoint();
  return rho / rho.trace();
}

}  // namespace lepsim
