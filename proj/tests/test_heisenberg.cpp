#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "circuitlab/heisenberg.hpp"
#include "circuitlab/sff.hpp"
#include "circuitlab/statevector.hpp"
#include "circuitlab/strings.hpp"

using namespace circuitlab;

TEST_SUITE_BEGIN("heisenberg");

TEST_CASE("identity circuit leaves the operator unchanged") {
  RngStream rng(61, 0, "h");
  const Circuit c = build_brickwork(4, 2, Boundary::open,
                                    GateSpec::fixed_gate(gate_identity(4)), rng);
  const HeisenbergOperator o = heisenberg_evolve(Pauli::Z, 1, c);
  const Eigen::MatrixXcd expect = PauliString::single(4, 1, Pauli::Z).dense();
  CHECK((o.op - expect).cwiseAbs().maxCoeff() < 1e-13);
  CHECK(o.norm_trace_sq() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("CZ evolves X1 into X1 Z2 with unit weight") {
  RngStream rng(62, 0, "h");
  const Circuit c =
      build_brickwork(2, 1, Boundary::open, GateSpec::fixed_gate(gate_cz()), rng);
  const HeisenbergOperator o = heisenberg_evolve(Pauli::X, 0, c);
  const Eigen::MatrixXcd expect =
      PauliString::parse("+XZ").dense();
  CHECK((o.op - expect).cwiseAbs().maxCoeff() < 1e-13);
  const PauliWeights w = pauli_weights(o);
  // string XZ has index (X at site 0, Z at site 1) = (1 << 2) | 3
  const long idx = (1L << 2) | 3L;
  CHECK(w.weight[static_cast<std::size_t>(idx)] ==
        doctest::Approx(1.0).epsilon(1e-10));
  CHECK(w.total == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("weights start concentrated and stay normalized under evolution") {
  RngStream rng(63, 0, "h");
  const Circuit c = build_brickwork(6, 6, Boundary::open, GateSpec::haar(2), rng);
  const HeisenbergOperator o0 = heisenberg_evolve(Pauli::Z, 2, c, 0);
  const PauliWeights w0 = pauli_weights(o0);
  const long z2 = 3L << (2 * (6 - 1 - 2));
  CHECK(w0.weight[static_cast<std::size_t>(z2)] == doctest::Approx(1.0));
  const HeisenbergOperator o = heisenberg_evolve(Pauli::Z, 2, c);
  CHECK(o.norm_trace_sq() == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(pauli_weights(o).total == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("dense cap is enforced") {
  RngStream rng(64, 0, "h");
  const Circuit c = build_brickwork(12, 1, Boundary::open, GateSpec::haar(2), rng);
  CHECK_THROWS_AS(heisenberg_evolve(Pauli::Z, 0, c), std::invalid_argument);
  CHECK_NOTHROW(heisenberg_evolve(Pauli::Z, 0, c, -1, 12));
}

TEST_CASE("haar-averaged string weights match the exact Markov distribution") {
  // Cross-engine oracle: E_gates[a_S(t)^2] evolves under the uniform-15
  // resampling chain exactly; compare a Monte Carlo statevector average
  // against the deterministically evolved distribution.
  const int L = 5, depth = 3, n_samples = 1500;
  const int src = 2;
  std::vector<double> init(1L << (2 * L), 0.0);
  init[static_cast<std::size_t>(3L << (2 * (L - 1 - src)))] = 1.0;
  const std::vector<double> exact =
      string_markov_exact_distribution(L, depth, init);
  std::vector<double> mc(init.size(), 0.0);
  for (int s = 0; s < n_samples; ++s) {
    RngStream rng(65, static_cast<std::uint64_t>(s), "markov-mc");
    const Circuit c = build_brickwork(L, depth, Boundary::open,
                                      GateSpec::haar(2), rng);
    const PauliWeights w = pauli_weights(heisenberg_evolve(Pauli::Z, src, c));
    for (std::size_t i = 0; i < mc.size(); ++i) mc[i] += w.weight[i];
  }
  for (double& v : mc) v /= n_samples;
  // compare the 30 largest exact entries within Monte Carlo error
  std::vector<std::size_t> order(exact.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::partial_sort(order.begin(), order.begin() + 30, order.end(),
                    [&](std::size_t a, std::size_t b) { return exact[a] > exact[b]; });
  for (int i = 0; i < 30; ++i) {
    const std::size_t idx = order[static_cast<std::size_t>(i)];
    const double se =
        std::sqrt(std::max(exact[idx], 1e-6) / n_samples);  // crude per-string error
    CHECK(std::abs(mc[idx] - exact[idx]) < 6 * se);
  }
}

TEST_CASE("otoc vanishes at equal point-time and outside the light cone") {
  RngStream rng(66, 0, "otoc");
  const Circuit c = build_brickwork(8, 2, Boundary::open, GateSpec::haar(2), rng);
  // depth 0: same Pauli at the same site commutes with itself
  CHECK(otoc(c, 0, 0, 0) == doctest::Approx(0.0).epsilon(1e-12));
  // source at site 0; after 2 layers the backward cone reaches at most site 2
  const std::vector<double> prof = otoc_profile(c, 2, 0);
  for (int r = 4; r < 8; ++r)
    CHECK(std::abs(prof[static_cast<std::size_t>(r)]) < 1e-12);
  // in range values stay within [0, 2]
  for (double v : prof) {
    CHECK(v > -1e-12);
    CHECK(v < 2.0 + 1e-12);
  }
}

TEST_CASE("two-point function: identity circuit and light cone") {
  RngStream rng(67, 0, "tp");
  const Circuit id = build_brickwork(6, 2, Boundary::open,
                                     GateSpec::fixed_gate(gate_identity(4)), rng);
  const std::vector<double> g = two_point_profile(id, 2, 1);
  CHECK(g[1] == doctest::Approx(1.0).epsilon(1e-12));
  for (int r = 0; r < 6; ++r)
    if (r != 1) CHECK(std::abs(g[static_cast<std::size_t>(r)]) < 1e-13);
  const Circuit c = build_brickwork(8, 2, Boundary::open, GateSpec::haar(2), rng);
  const std::vector<double> g2 = two_point_profile(c, 2, 0);
  for (int r = 4; r < 8; ++r) CHECK(std::abs(g2[static_cast<std::size_t>(r)]) < 1e-12);
}

TEST_CASE("mean squared two-point decays with depth in the Haar ensemble") {
  const int L = 6, n = 1200;
  double g2_t2 = 0, g2_t5 = 0;
  for (int s = 0; s < n; ++s) {
    RngStream rng(68, static_cast<std::uint64_t>(s), "tp-decay");
    const Circuit c = build_brickwork(L, 5, Boundary::open, GateSpec::haar(2), rng);
    const double a = two_point_profile(c, 2, 2)[2];
    const double b = two_point_profile(c, 5, 2)[2];
    g2_t2 += a * a;
    g2_t5 += b * b;
  }
  g2_t2 /= n;
  g2_t5 /= n;
  CHECK(g2_t2 > 3 * g2_t5);  // strong decay well outside Monte Carlo error
}

TEST_CASE("sff at t=0 equals dim^2 and the CUE ramp is linear") {
  RngStream rng(69, 0, "sff");
  const Eigen::MatrixXcd w = haar_unitary(16, rng);
  const std::vector<double> k = sff_fixed(w, 4);
  CHECK(k[0] == doctest::Approx(256.0).epsilon(1e-9));
  const std::vector<double> mean = sff_cue(16, 16, 3000, rng);
  for (int t = 1; t <= 16; ++t)
    CHECK(std::abs(mean[static_cast<std::size_t>(t)] / t - 1.0) < 0.1);
}

TEST_CASE("a single fixed unitary is not self-averaging") {
  RngStream rng(70, 0, "sff-nsa");
  const Eigen::MatrixXcd w = haar_unitary(64, rng);
  const std::vector<double> k = sff_fixed(w, 64);
  double mean = 0, var = 0;
  int cnt = 0;
  for (int t = 16; t <= 64; ++t) {
    mean += k[static_cast<std::size_t>(t)] / t;
    ++cnt;
  }
  mean /= cnt;
  for (int t = 16; t <= 64; ++t) {
    const double d = k[static_cast<std::size_t>(t)] / t - mean;
    var += d * d;
  }
  var /= cnt;
  const double rel_var = var / (mean * mean);
  CHECK(rel_var > 0.3);  // order-one fluctuations, K ~ Exp(mean)
}

TEST_CASE("sff dimension cap") {
  CHECK_THROWS_AS(sff_fixed(Eigen::MatrixXcd::Identity(8192, 8192), 2),
                  std::invalid_argument);
}

TEST_SUITE_END();
