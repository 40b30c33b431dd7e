#pragma once

#include <Eigen/Dense>
#include <array>
#include <cstdint>
#include <vector>

#include "circuitlab/rng.hpp"

namespace circuitlab {

/// Hermitian Pauli on n <= 2 qubits as bitmasks (bit j = qubit j) plus sign.
struct SignedPauliBits {
  std::uint8_t x = 0;
  std::uint8_t z = 0;
  bool neg = false;
};

/// Binary symplectic inner product of two (x|z) bit vectors; 1 = anticommute.
inline int symplectic_product(std::uint8_t x1, std::uint8_t z1, std::uint8_t x2,
                              std::uint8_t z2) {
  auto par = [](std::uint8_t v) { return __builtin_popcount(v) & 1; };
  return par(static_cast<std::uint8_t>(x1 & z2)) ^
         par(static_cast<std::uint8_t>(z1 & x2));
}

/// Clifford gate on n in {1,2} qubits, stored by the images of the
/// generators X_0, Z_0 (, X_1, Z_1) under conjugation. The images are the
/// rows of the 2n x 2n symplectic matrix over GF(2); signs carry the
/// phase information mod the global phase.
class CliffordGate {
 public:
  static CliffordGate from_images(int n,
                                  const std::array<SignedPauliBits, 4>& images);
  /// Decompose a dense 2^n x 2^n unitary; throws std::invalid_argument if it
  /// is not Clifford (some conjugated Pauli is not a single signed Pauli).
  static CliffordGate from_dense(const Eigen::MatrixXcd& u, double tol = 1e-8);

  int qubits() const { return n_; }
  const std::array<SignedPauliBits, 4>& images() const { return images_; }

  /// Dense unitary reproducing the images (global phase fixed
  /// deterministically).
  Eigen::MatrixXcd dense() const;

  /// Conjugation table: index = local bits (x0 | z0<<1 | x1<<2 | z1<<3),
  /// value = output bits in the same layout; sign_flip gives the extra sign.
  std::uint8_t conjugate_bits(std::uint8_t idx) const { return table_bits_[idx]; }
  bool conjugate_sign(std::uint8_t idx) const { return table_sign_[idx]; }

  bool preserves_symplectic_form() const;

  /// Canonical key (symplectic bits + signs) identifying the gate mod phase.
  std::uint32_t canonical_key() const;

 private:
  int n_ = 2;
  std::array<SignedPauliBits, 4> images_{};
  std::vector<std::uint8_t> table_bits_;
  std::vector<std::uint8_t> table_sign_;

  void build_table();
};

/// Uniform sample from the two-qubit Clifford group mod global phase:
/// uniform Sp(4,2) element via symplectic Gram-Schmidt on uniform bit
/// vectors, plus independent uniform sign bits (720 * 16 = 11520 elements).
CliffordGate sample_clifford2(RngStream& rng);

// Fixed Cliffords.
CliffordGate clifford_cz();
CliffordGate clifford_cnot();
CliffordGate clifford_swap();
CliffordGate clifford_h();   // single qubit
CliffordGate clifford_s();   // single qubit

}  // namespace circuitlab
