#include <doctest.h>

#include <cmath>
#include <numeric>

#include "circuitlab/monitored.hpp"
#include "circuitlab/statevector.hpp"

using namespace circuitlab;

TEST_SUITE_BEGIN("monitored");

TEST_CASE("p=0 hybrid dynamics saturates the half-chain entropy") {
  RngStream rng(81, 0, "h");
  Tableau t = Tableau::all_up(16);
  const MonitoredRunResult r =
      run_hybrid(t, 64, 0.0, rng, HybridOpts{Boundary::periodic, 64, false, false});
  CHECK(r.half_entropy_bits.back() == doctest::Approx(8.0));
  CHECK(r.n_measurements == 0);
}

TEST_CASE("p=1 pins the entropy to zero") {
  RngStream rng(82, 0, "h");
  Tableau t = Tableau::all_up(16);
  const MonitoredRunResult r =
      run_hybrid(t, 8, 1.0, rng, HybridOpts{Boundary::periodic, 1, false, false});
  for (double s : r.half_entropy_bits) CHECK(s == doctest::Approx(0.0));
  CHECK(r.n_measurements == 16L * 8);
}

TEST_CASE("tmi: product state zero, GHZ +1 via the brute-force oracle") {
  const Tableau p = Tableau::all_plus(8);
  CHECK(tripartite_mi_bits(p) == doctest::Approx(0.0));
  // GHZ on 8 sites: H then a CNOT ladder
  Tableau g = Tableau::all_up(8);
  g.apply(clifford_h(), 0);
  for (int i = 0; i + 1 < 8; ++i) g.apply(clifford_cnot(), i, i + 1);
  g.check_invariants();
  // oracle: same TMI from the statevector engine
  PureState sv = state_all_up(8);
  apply_gate(sv, kron2(gate_h(), Eigen::Matrix2cd::Identity()), 0, 1);
  for (int i = 0; i + 1 < 8; ++i) apply_gate(sv, gate_cnot(), i, i + 1);
  const auto quarter = [](int q) {
    std::vector<int> v(2);
    std::iota(v.begin(), v.end(), 2 * q);
    return v;
  };
  const std::vector<int> A = quarter(0), B = quarter(1), C = quarter(2);
  std::vector<int> AB = A, AC = A, BC = B, ABC = A;
  AB.insert(AB.end(), B.begin(), B.end());
  AC.insert(AC.end(), C.begin(), C.end());
  BC.insert(BC.end(), C.begin(), C.end());
  ABC.insert(ABC.end(), B.begin(), B.end());
  ABC.insert(ABC.end(), C.begin(), C.end());
  const double sv_tmi =
      (entropy(sv, A).value + entropy(sv, B).value + entropy(sv, C).value -
       entropy(sv, AB).value - entropy(sv, AC).value - entropy(sv, BC).value +
       entropy(sv, ABC).value) /
      std::log(2.0);
  CHECK(tripartite_mi_bits(g) == doctest::Approx(sv_tmi).epsilon(1e-9));
  CHECK(tripartite_mi_bits(g) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("deep p=0 volume-law TMI is negative and scales with L") {
  auto tmi_at = [](int L) {
    RngStream rng(83, static_cast<std::uint64_t>(L), "tmi");
    Tableau t = Tableau::all_up(L);
    run_hybrid(t, 4 * L, 0.0, rng, HybridOpts{Boundary::periodic, 4 * L, false, false});
    return tripartite_mi_bits(t);
  };
  double t16 = 0, t32 = 0;
  for (int rep = 0; rep < 4; ++rep) {
    RngStream rng(83, static_cast<std::uint64_t>(rep), "tmi2");
    Tableau a = Tableau::all_up(16);
    run_hybrid(a, 64, 0.0, rng, HybridOpts{Boundary::periodic, 64, false, false});
    t16 += tripartite_mi_bits(a);
    Tableau b = Tableau::all_up(32);
    run_hybrid(b, 128, 0.0, rng, HybridOpts{Boundary::periodic, 128, false, false});
    t32 += tripartite_mi_bits(b);
  }
  t16 /= 4;
  t32 /= 4;
  CHECK(t16 < -1.0);
  CHECK(t32 < t16 - 2.0);  // roughly proportional to -L
  (void)tmi_at;
}

TEST_CASE("purification monotonicity and the two phases at small scale") {
  RngStream rng(84, 0, "pur");
  Tableau t = Tableau::maximally_mixed(24);
  HybridOpts opts;
  opts.checkpoint_every = 4;
  opts.record_purification = true;
  const MonitoredRunResult r = run_hybrid(t, 96, 0.4, rng, opts);
  for (std::size_t i = 1; i < r.purification_bits.size(); ++i)
    CHECK(r.purification_bits[i] <= r.purification_bits[i - 1] + 1e-12);
  CHECK(t.purification_entropy_bits() == 0);  // p far above threshold
}

TEST_CASE("reference qubit: p=1 disentangles immediately, p=0 never") {
  RngStream rng(85, 0, "ref");
  const ReferenceQubitResult hi = reference_qubit_run(8, 1.0, 16, rng, 2);
  CHECK(hi.ancilla_entropy_bits.back() == doctest::Approx(0.0));
  const ReferenceQubitResult lo = reference_qubit_run(8, 0.0, 16, rng, 2);
  for (double s : lo.ancilla_entropy_bits) CHECK(s == doctest::Approx(1.0));
}

TEST_CASE("measurement-only model at the trivial extremes") {
  RngStream rng(86, 0, "ising");
  CHECK(measurement_only_ising_chi(16, 1.0, 8, rng) == doctest::Approx(1.0));
  CHECK(measurement_only_ising_chi(16, 0.0, 8, rng) ==
        doctest::Approx(1.0 / 16.0));
}

TEST_CASE("delta-s: product state zero, Bell pair across the cut one bit") {
  RngStream rng(87, 0, "ds");
  const Tableau p = Tableau::all_plus(8);
  std::vector<int> half{0, 1, 2, 3};
  CHECK(delta_s_measurement_bits(p, half, 2, rng) == doctest::Approx(0.0));
  // Bell pair between 3 and 4, cut between 3 | 4: measuring the in-A partner
  Tableau b = Tableau::all_up(8);
  b.apply(clifford_h(), 3);
  b.apply(clifford_cnot(), 3, 4);
  CHECK(delta_s_measurement_bits(b, half, 3, rng) == doctest::Approx(1.0));
}

TEST_CASE("hybrid run is reproducible from its stream address") {
  RngStream r1(88, 5, "h");
  RngStream r2(88, 5, "h");
  Tableau a = Tableau::all_up(12);
  Tableau b = Tableau::all_up(12);
  run_hybrid(a, 24, 0.2, r1, HybridOpts{Boundary::periodic, 4, false, false});
  run_hybrid(b, 24, 0.2, r2, HybridOpts{Boundary::periodic, 4, false, false});
  CHECK(a == b);
}

TEST_SUITE_END();
