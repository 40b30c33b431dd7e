#pragma once

#include <vector>

namespace circuitlab {

/// Deterministic Haar-averaged spreading of the conserved-density
/// amplitudes: each brickwork gate replaces the pair (a_x, a_{x+1}) by their
/// mean. The amplitude sum is exactly conserved.
struct U1DiffusionResult {
  std::vector<double> profile;          // a_{Z_x} at the final time
  std::vector<double> conserved_weight; // w^c(t) = sum_x a_x^2, t = 1..t_max
  std::vector<double> second_moment;    // sum_x (x-x0)^2 a_x per layer
};

U1DiffusionResult u1_amplitude_diffusion(int L, int t_max, int initial_site);

/// w^c(t) series only.
std::vector<double> u1_conserved_weight(int L, int t_max, int initial_site);

}  // namespace circuitlab
