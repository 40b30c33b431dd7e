#include <doctest.h>

#include <cmath>
#include <numeric>

#include "circuitlab/circuit.hpp"
#include "circuitlab/statevector.hpp"

using namespace circuitlab;

namespace {
const double kLn2 = std::log(2.0);

PureState cz_on_plus_plus() {
  PureState s = state_all_plus(2);
  apply_gate(s, gate_cz(), 0, 1);
  return s;
}

// Exact mean purity over Haar states by Wick enumeration:
// E[Tr rho_A^2] * E[||z||^4] = sum over index tuples of the pair contractions.
double wick_mean_purity(int da, int db) {
  const double n = static_cast<double>(da) * db;
  double num = 0;
  for (int a = 0; a < da; ++a)
    for (int a2 = 0; a2 < da; ++a2)
      for (int b = 0; b < db; ++b)
        for (int b2 = 0; b2 < db; ++b2) {
          // E[z_{ab} z*_{a2 b} z_{a2 b2} z*_{a b2}]
          //   = d[(ab)=(a2 b)] d[(a2 b2)=(a b2)] + d[(ab)=(a b2)] d[(a2b2)=(a2b)]
          num += (a == a2 ? 1.0 : 0.0) + (b == b2 ? 1.0 : 0.0);
        }
  return num / (n * (n + 1.0));
}
}  // namespace

TEST_SUITE_BEGIN("statevector");

TEST_CASE("product inits") {
  const PureState up = state_all_up(3);
  CHECK(std::abs(up.amps(0) - 1.0) < 1e-15);
  CHECK(std::abs(up.norm_sq() - 1.0) < 1e-12);
  const PureState plus = state_all_plus(2);
  for (int i = 0; i < 4; ++i) CHECK(std::abs(plus.amps(i) - 0.5) < 1e-12);
  Eigen::VectorXcd bad(2);
  bad << 1.0, 1.0;
  CHECK_THROWS_AS(init_product(1, 2, {bad}), std::invalid_argument);
}

TEST_CASE("two-qubit worked example: CZ entangles, X1 measurement disentangles") {
  PureState s = cz_on_plus_plus();
  // the four-term state: (|rr> + |rl> + |lr> - |ll>)/2 has Z-basis amps
  // (1/2, 1/2, 1/2, -1/2)
  CHECK(std::abs(s.amps(0) - 0.5) < 1e-12);
  CHECK(std::abs(s.amps(1) - 0.5) < 1e-12);
  CHECK(std::abs(s.amps(2) - 0.5) < 1e-12);
  CHECK(std::abs(s.amps(3) + 0.5) < 1e-12);
  CHECK(entropy(s, {0}).value == doctest::Approx(kLn2).epsilon(1e-10));
  CHECK(entropy(s, {1}).value == doctest::Approx(kLn2).epsilon(1e-10));

  // measuring X_1 gives p = 1/2 for both outcomes
  RngStream rng(41, 0, "m");
  PureState t = s;
  const SvMeasurement m = measure(t, 0, Pauli::X, rng);
  CHECK(m.probability == doctest::Approx(0.5).epsilon(1e-10));
  // outcome +: |-> up>, outcome -: |<- down>; either way product state
  CHECK(entropy(t, {0}).value < 1e-9);
  if (m.outcome == +1) {
    // |-> up> has amps (1,0,1,0)/sqrt(2)
    CHECK(std::abs(t.amps(0) - 1.0 / std::sqrt(2.0)) < 1e-10);
    CHECK(std::abs(t.amps(1)) < 1e-12);
    CHECK(std::abs(t.amps(2) - 1.0 / std::sqrt(2.0)) < 1e-10);
  } else {
    CHECK(std::abs(t.amps(1) - 1.0 / std::sqrt(2.0)) < 1e-10);
    CHECK(std::abs(t.amps(3) + 1.0 / std::sqrt(2.0)) < 1e-10);
  }
}

TEST_CASE("identity and commuting-support gates") {
  RngStream rng(42, 0, "g");
  PureState s = state_all_plus(3);
  PureState t = s;
  apply_gate(t, gate_identity(4), 0, 1);
  CHECK((t.amps - s.amps).cwiseAbs().maxCoeff() < 1e-14);
  // (u (x) 1)(1 (x) v) on disjoint sites commutes
  const Eigen::MatrixXcd u = haar_unitary(2, rng), v = haar_unitary(2, rng);
  PureState a = s, b = s;
  apply_gate(a, u, 0);
  apply_gate(a, v, 2);
  apply_gate(b, v, 2);
  apply_gate(b, u, 0);
  CHECK((a.amps - b.amps).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("non-unitary gate rejected") {
  PureState s = state_all_up(2);
  Eigen::MatrixXcd bad = gate_cz();
  bad(0, 0) = 1.1;
  CHECK_THROWS_AS(apply_gate(s, bad, 0, 1), std::invalid_argument);
}

TEST_CASE("norm conservation through a deep random circuit") {
  RngStream rng(43, 0, "norm");
  const Circuit c = build_brickwork(8, 16, Boundary::open, GateSpec::haar(2), rng);
  PureState s = state_all_up(8);
  run_circuit(s, c, rng);
  CHECK(std::abs(s.norm_sq() - 1.0) < 1e-10);
}

TEST_CASE("measurement statistics match Born probabilities") {
  // fixed state with p(up) = 0.3 at site 0
  Eigen::VectorXcd ket(2);
  ket << std::sqrt(0.3), std::sqrt(0.7);
  const PureState base = init_product(1, 2, {ket});
  RngStream rng(44, 0, "born");
  int ups = 0;
  const int n = 10000;
  for (int i = 0; i < n; ++i) {
    PureState s = base;
    ups += measure(s, 0, Pauli::Z, rng).outcome == +1;
  }
  const double phat = static_cast<double>(ups) / n;
  CHECK(std::abs(phat - 0.3) < 4 * std::sqrt(0.3 * 0.7 / n));
}

TEST_CASE("Z measurement of |up> is deterministic and leaves the state") {
  PureState s = state_all_up(2);
  RngStream rng(45, 0, "m");
  const SvMeasurement m = measure(s, 0, Pauli::Z, rng);
  CHECK(m.outcome == +1);
  CHECK(m.probability == doctest::Approx(1.0));
  CHECK(std::abs(s.amps(0) - 1.0) < 1e-12);
}

TEST_CASE("degenerate measurement raises the dedicated error") {
  PureState s = state_all_up(1);
  s.amps *= 1e-9;  // upstream normalization loss
  RngStream rng(46, 0, "m");
  CHECK_THROWS_AS(measure(s, 0, Pauli::Z, rng), degeneracy_error);
}

TEST_CASE("run_circuit records outcomes and log-probability") {
  RngStream rng(47, 0, "run");
  // unitary-only circuit: empty record
  const Circuit c = build_brickwork(4, 3, Boundary::open, GateSpec::haar(2), rng);
  PureState s = state_all_up(4);
  const TrajectoryRecord rec = run_circuit(s, c, rng);
  CHECK(rec.outcomes.empty());
  CHECK(rec.log_prob == 0.0);
  // p=1 measurement circuit on all-up: all outcomes +, log-prob 0
  RngStream rng2(48, 0, "run2");
  Circuit mc = build_brickwork(4, 1, Boundary::open,
                               GateSpec::fixed_gate(gate_identity(4)), rng2);
  mc = place_measurements(mc, 1.0, rng2);
  PureState s2 = state_all_up(4);
  const TrajectoryRecord rec2 = run_circuit(s2, mc, rng2);
  CHECK(rec2.outcomes.size() == 4);
  for (int o : rec2.outcomes) CHECK(o == +1);
  CHECK(std::abs(rec2.log_prob) < 1e-12);
}

TEST_CASE("fixed seed replay reproduces the trajectory record") {
  RngStream build(49, 0, "c");
  Circuit c = build_brickwork(6, 6, Boundary::open, GateSpec::haar(2), build);
  c = place_measurements(c, 0.3, build);
  RngStream r1(50, 0, "t"), r2(50, 0, "t");
  PureState a = state_all_up(6), b = state_all_up(6);
  const TrajectoryRecord ra = run_circuit(a, c, r1);
  const TrajectoryRecord rb = run_circuit(b, c, r2);
  CHECK(ra.outcomes == rb.outcomes);
  CHECK(ra.log_prob == rb.log_prob);
  CHECK((a.amps - b.amps).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("entropy basics: product zero, Bell ln 2 for all Renyi indices") {
  const PureState p = state_all_up(2);
  CHECK(entropy(p, {0}).value < 1e-12);
  PureState bell = state_all_up(2);
  apply_gate(bell, kron2(gate_h(), Eigen::Matrix2cd::Identity()), 0, 1);
  apply_gate(bell, gate_cnot(), 0, 1);
  for (double n : {1.0, 2.0, 3.0, 0.5}) {
    CHECK(entropy(bell, {0}, n).value == doctest::Approx(kLn2).epsilon(1e-9));
    CHECK(entropy(bell, {1}, n).value == doctest::Approx(kLn2).epsilon(1e-9));
  }
  CHECK_THROWS_AS(entropy(p, {}, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(entropy(p, {0, 1}, 1.0), std::invalid_argument);
}

TEST_CASE("wick oracle reproduces the closed-form mean purity") {
  CHECK(wick_mean_purity(2, 2) == doctest::Approx(4.0 / 5.0).epsilon(1e-12));
  CHECK(wick_mean_purity(4, 4) == doctest::Approx((4 + 4) / (16.0 + 1)).epsilon(1e-12));
  CHECK(wick_mean_purity(16, 16) ==
        doctest::Approx(32.0 / 257.0).epsilon(1e-12));
  CHECK(wick_mean_purity(2, 8) ==
        doctest::Approx((2 + 8) / (16.0 + 1)).epsilon(1e-12));
}

TEST_CASE("mean purity of Haar states matches the oracle at L=8, |A|=4") {
  RngStream rng(51, 0, "haar-state");
  const int n = 10000;
  double acc = 0;
  std::vector<int> region{0, 1, 2, 3};
  for (int i = 0; i < n; ++i) {
    PureState s;
    s.L = 8;
    s.q = 2;
    s.amps = Eigen::VectorXcd(256);
    for (int k = 0; k < 256; ++k) s.amps(k) = rng.complex_normal();
    s.amps.normalize();
    acc += region_purity(s, region);
  }
  acc /= n;
  const double target = 32.0 / 257.0;
  // purity sd per sample is about 0.01; allow 5 sigma
  CHECK(std::abs(acc - target) < 5 * 0.01 / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("mutual information: product zero, Bell 2 ln 2, subadditivity") {
  const PureState p = state_all_up(3);
  CHECK(std::abs(mutual_information(p, {0}, {1})) < 1e-12);
  PureState bell = state_all_up(2);
  apply_gate(bell, kron2(gate_h(), Eigen::Matrix2cd::Identity()), 0, 1);
  apply_gate(bell, gate_cnot(), 0, 1);
  CHECK(mutual_information(bell, {0}, {1}) ==
        doctest::Approx(2 * kLn2).epsilon(1e-9));
  CHECK_THROWS_AS(mutual_information(bell, {0}, {0}), std::invalid_argument);
  // random states: I_AB >= 0
  RngStream rng(52, 0, "mi");
  for (int trial = 0; trial < 20; ++trial) {
    PureState s;
    s.L = 6;
    s.q = 2;
    s.amps = Eigen::VectorXcd(64);
    for (int k = 0; k < 64; ++k) s.amps(k) = rng.complex_normal();
    s.amps.normalize();
    CHECK(mutual_information(s, {0, 1}, {3, 4}) > -1e-9);
  }
}

TEST_CASE("pure-state entropy symmetry and Renyi monotonicity on random states") {
  RngStream rng(53, 0, "sym");
  for (int trial = 0; trial < 10; ++trial) {
    PureState s;
    s.L = 7;
    s.q = 2;
    s.amps = Eigen::VectorXcd(128);
    for (int k = 0; k < 128; ++k) s.amps(k) = rng.complex_normal();
    s.amps.normalize();
    const std::vector<int> a{0, 2, 5};
    std::vector<int> abar;
    for (int i = 0; i < 7; ++i)
      if (i != 0 && i != 2 && i != 5) abar.push_back(i);
    CHECK(entropy(s, a).value ==
          doctest::Approx(entropy(s, abar).value).epsilon(1e-9));
    double prev = 1e300;
    for (double n : {0.5, 1.0, 2.0, 3.0, 5.0}) {
      const double v = entropy(s, a, n).value;
      CHECK(v <= prev + 1e-9);
      prev = v;
    }
  }
}

TEST_CASE("strong subadditivity on random states (von Neumann)") {
  RngStream rng(54, 0, "ssa");
  for (int trial = 0; trial < 10; ++trial) {
    PureState s;
    s.L = 6;
    s.q = 2;
    s.amps = Eigen::VectorXcd(64);
    for (int k = 0; k < 64; ++k) s.amps(k) = rng.complex_normal();
    s.amps.normalize();
    const double sab = entropy(s, {0, 1}).value;
    const double sbc = entropy(s, {1, 2}).value;
    const double sb = entropy(s, {1}).value;
    const double sabc = entropy(s, {0, 1, 2}).value;
    CHECK(sab + sbc - sb - sabc > -1e-8);
  }
}

TEST_CASE("u1 circuits conserve total Z to machine precision") {
  RngStream rng(55, 0, "u1c");
  Eigen::VectorXcd tilted(2);
  tilted << std::sqrt(0.7), std::sqrt(0.3);
  PureState s = init_product(6, 2, std::vector<Eigen::VectorXcd>(6, tilted));
  const double z0 = total_z(s);
  const Circuit c = build_brickwork(6, 8, Boundary::open, GateSpec::u1(), rng);
  run_circuit(s, c, rng);
  CHECK(std::abs(total_z(s) - z0) < 1e-10);
}

TEST_SUITE_END();
