#include <doctest.h>

#include <cmath>
#include <numbers>

#include "circuitlab/dprm.hpp"
#include "circuitlab/strings.hpp"
#include "circuitlab/u1.hpp"

using namespace circuitlab;

TEST_SUITE_BEGIN("classical");

TEST_CASE("identity string is absorbing") {
  RngStream rng(101, 0, "s");
  const StringTrajectory t =
      string_markov_run(8, 12, rng, PauliString(8));
  CHECK(t.final_string.is_identity());
  for (int s : t.support) CHECK(s == 0);
}

TEST_CASE("string endpoints stay within the geometric cone") {
  const int L = 64, depth = 20, center = 32;
  for (int trial = 0; trial < 20; ++trial) {
    RngStream rng(102, static_cast<std::uint64_t>(trial), "s");
    const StringTrajectory t = string_markov_run(
        L, depth, rng, PauliString::single(L, center, Pauli::Z));
    for (int tau = 1; tau <= depth; ++tau) {
      CHECK(t.right[static_cast<std::size_t>(tau - 1)] <= center + tau);
      CHECK(t.left[static_cast<std::size_t>(tau - 1)] >= center - tau);
    }
  }
}

TEST_CASE("front ensemble: interior density 3/4, diffusive width, v_B near 0.6") {
  const int L = 280, depth = 128;
  const FrontEnsemble fe = otoc_front(L, depth, 600, 103);
  CHECK(std::abs(fe.interior_density - 0.75) < 0.01);
  CHECK(fe.vb == doctest::Approx(0.6).epsilon(0.05));
  // width grows: w(96) / w(24) should be near 2 for diffusive broadening
  const double w24 = fe.width[23], w96 = fe.width[95];
  CHECK(w96 / w24 == doctest::Approx(2.0).epsilon(0.25));
  // profile vanishes beyond the cone
  CHECK(fe.profile[static_cast<std::size_t>(L / 2 + depth + 1)] == 0.0);
}

TEST_CASE("u1 amplitude iterate: first layers match the hand iterate") {
  // From a delta: the exact second moments about the origin after layers
  // 1..4 are 1/2, 3/2, 5/2, 7/2 and the variances 1/4, 5/4, 9/4, 13/4.
  const U1DiffusionResult r = u1_amplitude_diffusion(64, 4, 32);
  // one layer: pair (32, 33) averaged to 1/2 each
  const U1DiffusionResult r1 = u1_amplitude_diffusion(64, 1, 32);
  CHECK(r1.profile[32] == doctest::Approx(0.5));
  CHECK(r1.profile[33] == doctest::Approx(0.5));
  CHECK(r1.second_moment[0] == doctest::Approx(0.5));
  CHECK(r.second_moment[1] == doctest::Approx(1.5));
  CHECK(r.second_moment[2] == doctest::Approx(2.5));
  CHECK(r.second_moment[3] == doctest::Approx(3.5));
}

TEST_CASE("u1 amplitude sum is exactly one and w^c is nonincreasing") {
  const U1DiffusionResult r = u1_amplitude_diffusion(256, 100, 128);
  double sum = 0;
  for (double v : r.profile) sum += v;
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(r.conserved_weight.front() <= 1.0);
  for (std::size_t i = 1; i < r.conserved_weight.size(); ++i)
    CHECK(r.conserved_weight[i] <= r.conserved_weight[i - 1] + 1e-15);
}

TEST_CASE("conserved weight approaches 1/(2 sqrt(pi t))") {
  const std::vector<double> wc = u1_conserved_weight(900, 400, 450);
  for (int t : {100, 200, 400}) {
    const double normed =
        wc[static_cast<std::size_t>(t - 1)] * 2.0 * std::sqrt(std::numbers::pi * t);
    CHECK(std::abs(normed - 1.0) < 0.02);
  }
}

TEST_CASE("dprm: zero disorder gives a straight path with the mean energy") {
  RngStream rng(104, 0, "d");
  const DprmResult r = dprm_ground_state(41, 100, DisorderLaw::none, rng, true);
  CHECK(r.energy == doctest::Approx(50.0));
  CHECK(r.endpoint == 20);
  for (int col : r.path) CHECK(col == 20);
}

TEST_CASE("dprm fluctuations grow with height (sanity, not the full exponent)") {
  const DprmExponents e = dprm_exponents({64, 128, 256}, 200, 105);
  CHECK(e.beta > 0.15);
  CHECK(e.beta < 0.55);
  CHECK(e.zeta > 0.45);
  CHECK(e.zeta < 0.9);
}

TEST_SUITE_END();
