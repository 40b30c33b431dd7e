#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "circuitlab/circuit.hpp"
#include "circuitlab/pauli.hpp"
#include "circuitlab/rng.hpp"

namespace circuitlab {

/// Thrown when both outcome probabilities of a measurement are below
/// tolerance, signalling upstream normalization loss.
struct degeneracy_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Normalized amplitude vector over q^L basis states. Site 0 is the most
/// significant digit of the basis index.
struct PureState {
  int L = 0;
  int q = 2;
  Eigen::VectorXcd amps;

  long dim() const { return amps.size(); }
  double norm_sq() const { return amps.squaredNorm(); }
  int digit(long index, int site) const;
};

PureState init_product(int L, int q, const std::vector<Eigen::VectorXcd>& kets);
PureState state_all_up(int L);
PureState state_all_plus(int L);

/// Apply a one- or two-site gate; rejects non-unitary matrices (tol 1e-10).
void apply_gate(PureState& s, const Eigen::MatrixXcd& u, int a, int b = -1);

struct SvMeasurement {
  int outcome = +1;     // eigenvalue of the measured Pauli
  double probability = 0.0;
};
SvMeasurement measure(PureState& s, int site, Pauli basis, RngStream& rng);

struct TrajectoryRecord {
  std::vector<int> outcomes;
  double log_prob = 0.0;
  std::vector<double> times;         // layer indices of recorded entropies
  std::vector<double> half_entropy;  // nats, von Neumann, left half
};

/// Apply all layers in order. record_every > 0 records the half-chain
/// von Neumann entropy after every record_every-th layer.
TrajectoryRecord run_circuit(PureState& s, const Circuit& c, RngStream& rng,
                             int record_every = 0);

struct EntropyResult {
  std::vector<int> region;
  double renyi_n = 1.0;          // 1.0 means von Neumann
  double value = 0.0;            // nats
  Eigen::VectorXd schmidt;       // eigenvalues of rho_A, descending
};

/// Renyi-n entanglement entropy of a nonempty proper subregion, in nats;
/// n = 1 gives von Neumann.
EntropyResult entropy(const PureState& s, std::vector<int> region, double n = 1.0);

double mutual_information(const PureState& s, const std::vector<int>& A,
                          const std::vector<int>& B, double n = 1.0);

/// Tr rho_A^2 without the log, for annealed averages.
double region_purity(const PureState& s, const std::vector<int>& region);

/// <sum_i Z_i> (qubits only).
double total_z(const PureState& s);

}  // namespace circuitlab
