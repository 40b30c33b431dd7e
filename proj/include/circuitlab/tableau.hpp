#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "circuitlab/clifford.hpp"
#include "circuitlab/pauli.hpp"
#include "circuitlab/rng.hpp"

namespace circuitlab {

/// Stabilizer tableau over L qubits with k <= L generators (k < L encodes a
/// mixed state). Rows are bit-packed, 64 columns per machine word, with the
/// X and Z halves stored separately. A destabilizer row is kept paired with
/// every stabilizer row so measurements never need a linear solve.
class Tableau {
 public:
  static Tableau all_up(int L);           // generators Z_i
  static Tableau all_plus(int L);         // generators X_i
  static Tableau maximally_mixed(int L);  // k = 0
  /// Generators m_i Z_i Z_{i+1} plus the global parity X_1...X_L.
  static Tableau glassy(const std::vector<int>& m_signs);

  int num_qubits() const { return L_; }
  int num_generators() const { return k_; }

  /// Stabilizer generator as a signed Pauli word.
  PauliString generator(int row) const;

  void apply(const CliffordGate& g, int a, int b = -1);

  struct MeasureResult {
    int outcome = +1;       // eigenvalue of the measured operator
    bool was_random = true; // false when the outcome was forced
  };
  MeasureResult measure_pauli(const PauliString& p, RngStream& rng);
  MeasureResult measure_site(int site, Pauli basis, RngStream& rng);

  /// Entanglement entropy of a region in bits:
  /// S_A = |A| - k + rank_GF2(generators restricted to the complement).
  /// Renyi-index independent for stabilizer states.
  int entropy_bits(std::span<const int> region) const;
  /// L - k: entropy of the full (possibly mixed) state in bits.
  int purification_entropy_bits() const { return L_ - k_; }

  /// <Z_i Z_j> in {-1, 0, +1}; pure states only.
  int zz_expectation(int i, int j) const;
  /// Per-site key identifying which X-columns of the generator matrix are
  /// equal; <Z_i Z_j>^2 = 1 iff key[i] == key[j] (pure states).
  std::vector<std::uint64_t> x_column_keys() const;

  std::string snapshot() const;
  static Tableau from_snapshot(const std::string& text);

  /// Throws std::logic_error when a representation invariant is broken.
  void check_invariants() const;

  bool operator==(const Tableau& other) const;

 private:
  Tableau(int L, int k);

  int L_ = 0, k_ = 0, words_ = 0;
  // Row r occupies words [r*words_, (r+1)*words_).
  std::vector<std::uint64_t> sx_, sz_;  // stabilizer rows
  std::vector<std::uint64_t> dx_, dz_;  // destabilizer rows (paired)
  std::vector<std::uint8_t> ssign_, dsign_;

  bool get_bit(const std::vector<std::uint64_t>& v, int row, int col) const;
  void set_bit(std::vector<std::uint64_t>& v, int row, int col, bool b);
  bool row_anticommutes(const std::vector<std::uint64_t>& x,
                        const std::vector<std::uint64_t>& z, int row,
                        std::span<const std::uint64_t> px,
                        std::span<const std::uint64_t> pz) const;
  // dst *= src, tracking the sign; both must commute (asserted).
  void row_multiply(std::vector<std::uint64_t>& dstx,
                    std::vector<std::uint64_t>& dstz, std::uint8_t& dsign,
                    int drow, std::span<const std::uint64_t> srcx,
                    std::span<const std::uint64_t> srcz, bool ssign);
  std::span<const std::uint64_t> row_span(const std::vector<std::uint64_t>& v,
                                          int row) const;
  void append_generator(std::span<const std::uint64_t> px,
                        std::span<const std::uint64_t> pz, bool sign);
};

}  // namespace circuitlab
