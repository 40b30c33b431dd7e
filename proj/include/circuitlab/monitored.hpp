#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "circuitlab/circuit.hpp"
#include "circuitlab/tableau.hpp"

namespace circuitlab {

/// One monitored stabilizer run: observable series at checkpoints.
struct MonitoredRunResult {
  std::vector<double> times;              // layer indices
  std::vector<double> half_entropy_bits;  // contiguous half chain
  std::vector<double> tmi_bits;           // only if requested
  std::vector<double> purification_bits;  // only if requested
  long n_measurements = 0;
  long n_random_outcomes = 0;
  std::uint64_t seed = 0;
};

struct HybridOpts {
  Boundary boundary = Boundary::periodic;
  int checkpoint_every = 0;  // 0 means L/8 (at least 1)
  bool record_tmi = false;
  bool record_purification = false;
};

/// Brickwork of uniformly random two-qubit Cliffords, decorated after each
/// layer with probability-p single-site Z measurements.
MonitoredRunResult run_hybrid(Tableau& tab, int depth, double p,
                              RngStream& rng, const HybridOpts& opts = {});

/// I(A:B) + I(A:C) - I(A:BC) on four equal contiguous quarters of a ring,
/// with C antipodal to A. Requires L divisible by 4.
double tripartite_mi_bits(const Tableau& tab);

/// Generic TMI for explicit disjoint regions.
double tripartite_mi_bits(const Tableau& tab, std::span<const int> A,
                          std::span<const int> B, std::span<const int> C);

/// System of L qubits plus one reference qubit, maximally entangled with
/// system qubit 0 at t=0, scrambled without measurements for L layers, then
/// monitored hybrid dynamics on the system only. Returns the reference
/// entropy (bits) after every checkpoint of the monitored stage.
struct ReferenceQubitResult {
  std::vector<double> times;
  std::vector<double> ancilla_entropy_bits;
};
ReferenceQubitResult reference_qubit_run(int L, double p, int depth,
                                         RngStream& rng,
                                         int checkpoint_every = 0);

/// Measurement-only dynamics from all-plus: per spacetime slot measure
/// Z_i Z_{i+1} (ring) with probability p_Z, else X_i. Returns the
/// spin-glass order parameter (1/L^2) sum_ij <Z_i Z_j>^2 of the final state.
double measurement_only_ising_chi(int L, double p_Z, int depth, RngStream& rng);

/// Entropy of A before minus after a Z measurement at `site` (a copy is
/// measured; the input tableau is untouched). Nonnegative for this protocol.
double delta_s_measurement_bits(const Tableau& tab, std::span<const int> A,
                                int site, RngStream& rng);

/// Cross-engine runner: applies a Circuit's gates (must be Clifford) and
/// measurements to a tableau.
void run_circuit_tableau(Tableau& tab, const Circuit& c, RngStream& rng);

}  // namespace circuitlab
