#include <doctest.h>

#include <map>
#include <set>

#include "circuitlab/clifford.hpp"
#include "circuitlab/gate.hpp"
#include "circuitlab/rng.hpp"

using namespace circuitlab;

TEST_SUITE_BEGIN("clifford");

TEST_CASE("CZ maps X1 -> X1 Z2") {
  const CliffordGate cz = clifford_cz();
  // images order: X_0, Z_0, X_1, Z_1 (bit j = qubit j)
  const SignedPauliBits x0 = cz.images()[0];
  CHECK(x0.x == 0b01);
  CHECK(x0.z == 0b10);
  CHECK_FALSE(x0.neg);
  const SignedPauliBits z0 = cz.images()[1];
  CHECK(z0.x == 0);
  CHECK(z0.z == 0b01);
}

TEST_CASE("dense reconstruction conjugates generators correctly") {
  RngStream rng(21, 0, "cliff");
  for (int trial = 0; trial < 25; ++trial) {
    const CliffordGate g = sample_clifford2(rng);
    const Eigen::MatrixXcd u = g.dense();
    CHECK((u.adjoint() * u - gate_identity(4)).cwiseAbs().maxCoeff() < 1e-10);
    const CliffordGate back = CliffordGate::from_dense(u);
    CHECK(back.canonical_key() == g.canonical_key());
  }
}

TEST_CASE("every sample preserves the symplectic form") {
  RngStream rng(22, 0, "cliff2");
  for (int i = 0; i < 200; ++i)
    CHECK(sample_clifford2(rng).preserves_symplectic_form());
}

TEST_CASE("closure: product of sampled Cliffords still maps Paulis to signed Paulis") {
  RngStream rng(23, 0, "closure");
  for (int i = 0; i < 10; ++i) {
    const Eigen::MatrixXcd u =
        sample_clifford2(rng).dense() * sample_clifford2(rng).dense();
    CHECK_NOTHROW(CliffordGate::from_dense(u));
  }
}

TEST_CASE("a non-Clifford gate is rejected by from_dense") {
  RngStream rng(24, 0, "noncliff");
  CHECK_THROWS_AS(CliffordGate::from_dense(sample_haar_gate(2, rng).entries),
                  std::invalid_argument);
}

TEST_CASE("two-qubit group has 11520 elements and sampling is uniform") {
  // Enumerate by BFS closure from generators in the (symplectic, signs) rep.
  std::vector<CliffordGate> gens;
  gens.push_back(clifford_cnot());
  gens.push_back(clifford_swap());
  // single-qubit H and S on either qubit, embedded as two-qubit gates
  const Eigen::Matrix2cd I2 = Eigen::Matrix2cd::Identity();
  gens.push_back(CliffordGate::from_dense(kron2(gate_h(), I2)));
  gens.push_back(CliffordGate::from_dense(kron2(I2, gate_h())));
  gens.push_back(CliffordGate::from_dense(kron2(gate_s(), I2)));
  gens.push_back(CliffordGate::from_dense(kron2(I2, gate_s())));

  std::set<std::uint32_t> seen;
  std::vector<Eigen::MatrixXcd> frontier;
  frontier.push_back(gate_identity(4));
  seen.insert(CliffordGate::from_dense(frontier[0]).canonical_key());
  while (!frontier.empty()) {
    std::vector<Eigen::MatrixXcd> next;
    for (const auto& u : frontier) {
      for (const auto& g : gens) {
        const Eigen::MatrixXcd v = g.dense() * u;
        const auto key = CliffordGate::from_dense(v).canonical_key();
        if (seen.insert(key).second) next.push_back(v);
      }
    }
    frontier = std::move(next);
  }
  CHECK(seen.size() == 11520);

  // Uniformity of the symplectic part (720 values) and the sign part (16).
  RngStream rng(25, 0, "uniform");
  std::map<std::uint32_t, long> symp_counts;
  long sign_counts[16] = {};
  const int n = 72000;
  for (int i = 0; i < n; ++i) {
    const CliffordGate g = sample_clifford2(rng);
    std::uint32_t skey = 0;
    int sbits = 0;
    for (int j = 0; j < 4; ++j) {
      const auto& p = g.images()[static_cast<std::size_t>(j)];
      skey |= (static_cast<std::uint32_t>(p.x) | (static_cast<std::uint32_t>(p.z) << 2))
              << (4 * j);
      sbits |= (p.neg ? 1 : 0) << j;
    }
    ++symp_counts[skey];
    ++sign_counts[sbits];
  }
  CHECK(symp_counts.size() == 720);
  double chi2 = 0;
  const double expect = static_cast<double>(n) / 720.0;
  for (const auto& [k, c] : symp_counts)
    chi2 += (c - expect) * (c - expect) / expect;
  // dof = 719; mean 719, sd ~ 38; 5 sigma window
  CHECK(chi2 < 719 + 5 * 38.0);
  CHECK(chi2 > 719 - 5 * 38.0);
  double chi2s = 0;
  const double expect_s = static_cast<double>(n) / 16.0;
  for (long c : sign_counts) chi2s += (c - expect_s) * (c - expect_s) / expect_s;
  CHECK(chi2s < 15 + 5 * std::sqrt(30.0));
}

TEST_CASE("conjugation table matches dense conjugation") {
  RngStream rng(26, 0, "table");
  for (int trial = 0; trial < 10; ++trial) {
    const CliffordGate g = sample_clifford2(rng);
    const Eigen::MatrixXcd u = g.dense();
    for (int idx = 1; idx < 16; ++idx) {
      SignedPauliBits in;
      in.x = static_cast<std::uint8_t>((idx & 1) | ((idx >> 2) & 1) << 1);
      in.z = static_cast<std::uint8_t>(((idx >> 1) & 1) | ((idx >> 3) & 1) << 1);
      // dense form of the input Pauli
      auto dense_of = [](const SignedPauliBits& p) {
        const Pauli table[4] = {Pauli::I, Pauli::X, Pauli::Z, Pauli::Y};
        Eigen::MatrixXcd m = kron2(
            pauli_matrix(table[((p.x & 1) | ((p.z & 1) << 1))]),
            pauli_matrix(table[(((p.x >> 1) & 1) | (((p.z >> 1) & 1) << 1))]));
        if (p.neg) m = -m;
        return m;
      };
      const Eigen::MatrixXcd conj = u * dense_of(in) * u.adjoint();
      const std::uint8_t obits = g.conjugate_bits(static_cast<std::uint8_t>(idx));
      SignedPauliBits out;
      out.x = static_cast<std::uint8_t>((obits & 1) | (((obits >> 2) & 1) << 1));
      out.z = static_cast<std::uint8_t>(((obits >> 1) & 1) | (((obits >> 3) & 1) << 1));
      out.neg = g.conjugate_sign(static_cast<std::uint8_t>(idx));
      CHECK((conj - dense_of(out)).cwiseAbs().maxCoeff() < 1e-9);
    }
  }
}

TEST_SUITE_END();
