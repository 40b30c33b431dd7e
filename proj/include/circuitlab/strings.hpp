#pragma once

#include <cstdint>
#include <vector>

#include "circuitlab/pauli.hpp"
#include "circuitlab/rng.hpp"

namespace circuitlab {

/// One trajectory of the Haar-averaged operator-string Markov chain:
/// per brickwork gate on a non-identity pair, the local content is resampled
/// uniformly from the 15 non-identity two-site Pauli contents.
struct StringTrajectory {
  std::vector<int> left;     // per layer
  std::vector<int> right;    // per layer
  std::vector<int> support;  // per layer
  PauliString final_string;
};

StringTrajectory string_markov_run(int L, int depth, RngStream& rng,
                                   const PauliString& initial);

/// Exact distribution evolution of the same chain over all 4^L strings
/// (small L; test oracle for the sampler and the cross-engine check).
std::vector<double> string_markov_exact_distribution(
    int L, int depth, const std::vector<double>& initial);

struct FrontEnsemble {
  std::vector<double> times;       // layer indices with recorded stats
  std::vector<double> width;       // sd of the right endpoint
  std::vector<double> mean_right;  // mean right endpoint displacement
  std::vector<double> profile;     // final non-identity density per site
  double vb = 0.0;                 // fitted front velocity
  double vb_err = 0.0;
  double interior_density = 0.0;   // plateau value of the profile
};

/// Ensemble of string trajectories seeded from a single-site Z at the
/// center; front statistics of the right endpoint.
FrontEnsemble otoc_front(int L, int depth, int samples, std::uint64_t seed);

}  // namespace circuitlab
