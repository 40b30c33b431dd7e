#pragma once

#include <Eigen/Dense>
#include <vector>

#include "circuitlab/rng.hpp"

namespace circuitlab {

inline constexpr int kSffDimCap = 1 << 12;

/// K(t) = |Tr W^t|^2 for t = 0..t_max, from the eigenphases of W
/// (one Schur decomposition, then O(dim) per t).
std::vector<double> sff_fixed(const Eigen::MatrixXcd& w, int t_max);

/// Ensemble mean of K(t) over `samples` draws of a Haar (CUE) unitary.
std::vector<double> sff_cue(int dim, int t_max, int samples, RngStream& rng);

/// Floquet unitary of one brickwork period (two Haar layers, periodic
/// boundary) on L qubits, as a dense matrix.
Eigen::MatrixXcd floquet_brickwork_unitary(int L, RngStream& rng);

/// Ensemble mean of K(t) over brickwork Floquet circuits.
std::vector<double> sff_floquet_brickwork(int L, int t_max, int samples,
                                          RngStream& rng);

}  // namespace circuitlab
