#include "circuitlab/monitored.hpp"

#include <numeric>
#include <stdexcept>
#include <unordered_map>

namespace circuitlab {

namespace {

std::vector<int> iota_range(int lo, int hi) {  // [lo, hi)
  std::vector<int> v(static_cast<std::size_t>(hi - lo));
  std::iota(v.begin(), v.end(), lo);
  return v;
}

// Brickwork Clifford layer on the first L sites of the tableau (the tableau
// may hold extra reference qubits beyond L).
void clifford_brickwork_layer_system(Tableau& tab, int tau, int L,
                                     Boundary boundary, RngStream& rng) {
  const int start = (tau % 2 == 1) ? 0 : 1;
  for (int a = start; a + 1 < L; a += 2) tab.apply(sample_clifford2(rng), a, a + 1);
  if (boundary == Boundary::periodic && start == 1 && L % 2 == 0)
    tab.apply(sample_clifford2(rng), L - 1, 0);
}

void clifford_brickwork_layer(Tableau& tab, int tau, Boundary boundary,
                              RngStream& rng) {
  clifford_brickwork_layer_system(tab, tau, tab.num_qubits(), boundary, rng);
}

}  // namespace

MonitoredRunResult run_hybrid(Tableau& tab, int depth, double p,
                              RngStream& rng, const HybridOpts& opts) {
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument("run_hybrid: p must be in [0, 1]");
  const int L = tab.num_qubits();
  if (opts.boundary == Boundary::periodic && L % 2 != 0)
    throw std::invalid_argument("run_hybrid: periodic boundary needs even L");
  const int every = opts.checkpoint_every > 0 ? opts.checkpoint_every
                                              : std::max(1, L / 8);
  MonitoredRunResult out;
  const std::vector<int> half = iota_range(0, L / 2);
  auto checkpoint = [&](int tau) {
    out.times.push_back(tau);
    out.half_entropy_bits.push_back(tab.entropy_bits(half));
    if (opts.record_tmi) out.tmi_bits.push_back(tripartite_mi_bits(tab));
    if (opts.record_purification)
      out.purification_bits.push_back(tab.purification_entropy_bits());
  };
  for (int tau = 1; tau <= depth; ++tau) {
    clifford_brickwork_layer(tab, tau, opts.boundary, rng);
    if (p > 0.0) {
      for (int s = 0; s < L; ++s) {
        if (rng.bernoulli(p)) {
          const auto r = tab.measure_site(s, Pauli::Z, rng);
          ++out.n_measurements;
          out.n_random_outcomes += r.was_random;
        }
      }
    }
    if (tau % every == 0 || tau == depth) checkpoint(tau);
  }
  return out;
}

double tripartite_mi_bits(const Tableau& tab, std::span<const int> A,
                          std::span<const int> B, std::span<const int> C) {
  std::vector<int> ab(A.begin(), A.end());
  ab.insert(ab.end(), B.begin(), B.end());
  std::vector<int> ac(A.begin(), A.end());
  ac.insert(ac.end(), C.begin(), C.end());
  std::vector<int> bc(B.begin(), B.end());
  bc.insert(bc.end(), C.begin(), C.end());
  std::vector<int> abc(ab);
  abc.insert(abc.end(), C.begin(), C.end());
  return static_cast<double>(tab.entropy_bits(A)) + tab.entropy_bits(B) +
         tab.entropy_bits(C) - tab.entropy_bits(ab) - tab.entropy_bits(ac) -
         tab.entropy_bits(bc) + tab.entropy_bits(abc);
}

double tripartite_mi_bits(const Tableau& tab) {
  const int L = tab.num_qubits();
  if (L % 4 != 0)
    throw std::invalid_argument("tripartite_mi_bits: L must be divisible by 4");
  const std::vector<int> A = iota_range(0, L / 4);
  const std::vector<int> B = iota_range(L / 4, L / 2);
  const std::vector<int> C = iota_range(L / 2, 3 * L / 4);  // antipodal to A
  return tripartite_mi_bits(tab, A, B, C);
}

ReferenceQubitResult reference_qubit_run(int L, double p, int depth,
                                         RngStream& rng, int checkpoint_every) {
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument("reference_qubit_run: p must be in [0, 1]");
  // Qubit L is the reference; it never participates after the initial pairing.
  Tableau tab = Tableau::all_up(L + 1);
  tab.apply(clifford_h(), L);
  tab.apply(clifford_cnot(), L, 0);  // Bell pair (reference, system qubit 0)
  // Scrambling prelude on the system only, no measurements.
  for (int tau = 1; tau <= L; ++tau)
    clifford_brickwork_layer_system(tab, tau, L, Boundary::periodic, rng);
  const int every =
      checkpoint_every > 0 ? checkpoint_every : std::max(1, L / 8);
  ReferenceQubitResult out;
  const std::vector<int> anc{L};
  for (int tau = 1; tau <= depth; ++tau) {
    clifford_brickwork_layer_system(tab, tau, L, Boundary::periodic, rng);
    for (int s = 0; s < L; ++s) {
      if (rng.bernoulli(p)) tab.measure_site(s, Pauli::Z, rng);
    }
    if (tau % every == 0 || tau == depth) {
      out.times.push_back(tau);
      out.ancilla_entropy_bits.push_back(tab.entropy_bits(anc));
    }
  }
  return out;
}

double measurement_only_ising_chi(int L, double p_Z, int depth,
                                  RngStream& rng) {
  if (!(p_Z >= 0.0 && p_Z <= 1.0))
    throw std::invalid_argument("measurement_only_ising_chi: p_Z in [0,1]");
  Tableau tab = Tableau::all_plus(L);
  PauliString zz(L);
  for (int tau = 0; tau < depth; ++tau) {
    for (int i = 0; i < L; ++i) {
      if (rng.bernoulli(p_Z)) {
        const int j = (i + 1) % L;
        zz = PauliString(L);
        zz.set(i, Pauli::Z);
        zz.set(j, Pauli::Z);
        tab.measure_pauli(zz, rng);
      } else {
        tab.measure_site(i, Pauli::X, rng);
      }
    }
  }
  // <Z_i Z_j>^2 = 1 iff the X-columns of the generator matrix agree at i, j
  // (pure states: the group is maximal abelian).
  const std::vector<std::uint64_t> keys = tab.x_column_keys();
  std::unordered_map<std::uint64_t, long> counts;
  for (std::uint64_t k : keys) ++counts[k];
  double num = 0.0;
  for (const auto& [k, n] : counts) num += static_cast<double>(n) * n;
  return num / (static_cast<double>(L) * L);
}

double delta_s_measurement_bits(const Tableau& tab, std::span<const int> A,
                                int site, RngStream& rng) {
  Tableau copy = tab;
  const int before = copy.entropy_bits(A);
  copy.measure_site(site, Pauli::Z, rng);
  const int after = copy.entropy_bits(A);
  return before - after;
}

void run_circuit_tableau(Tableau& tab, const Circuit& c, RngStream& rng) {
  if (c.L != tab.num_qubits())
    throw std::invalid_argument("run_circuit_tableau: size mismatch");
  for (const auto& layer : c.layers) {
    for (const auto& e : layer.events) {
      if (const auto* g = std::get_if<GateEvent>(&e)) {
        const auto& sg = c.gates[static_cast<std::size_t>(g->gate_id)];
        if (!sg.clifford)
          throw std::invalid_argument(
              "run_circuit_tableau: non-Clifford gate in circuit");
        tab.apply(*sg.clifford, g->a, g->b);
      } else {
        const auto& m = std::get<MeasureEvent>(e);
        tab.measure_site(m.site, m.basis, rng);
      }
    }
  }
}

}  // namespace circuitlab
