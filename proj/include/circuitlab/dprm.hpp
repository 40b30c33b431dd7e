#pragma once

#include <cstdint>
#include <vector>

#include "circuitlab/rng.hpp"

namespace circuitlab {

enum class DisorderLaw { uniform01, exponential, none };

struct DprmResult {
  double energy = 0.0;
  int endpoint = 0;  // column of the free end
  std::vector<int> path;  // column per row, apex to free end
};

/// Minimal-energy directed path on a height x width lattice of iid site
/// energies: starts at the apex column, moves x -> x-1, x, x+1 per row,
/// free bottom endpoint. Transfer-matrix dynamic programming.
DprmResult dprm_ground_state(int width, int height, DisorderLaw law,
                             RngStream& rng, bool keep_path = false);

struct DprmExponents {
  double beta = 0.0, beta_err = 0.0;
  double zeta = 0.0, zeta_err = 0.0;
  std::vector<int> heights;
  std::vector<double> energy_sd;
  std::vector<double> wander_rms;
};

/// Free-energy fluctuation exponent (sd of the ground-state energy ~ h^beta)
/// and endpoint wandering exponent (rms displacement ~ h^zeta).
DprmExponents dprm_exponents(const std::vector<int>& heights, int samples,
                             std::uint64_t seed,
                             DisorderLaw law = DisorderLaw::uniform01);

}  // namespace circuitlab
