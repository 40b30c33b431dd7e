#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

namespace circuitlab {

enum class Pauli : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char pauli_char(Pauli p);
Pauli pauli_from_char(char c);

/// 2x2 matrix of a single Pauli.
Eigen::Matrix2cd pauli_matrix(Pauli p);

/// Length-L word over {I,X,Y,Z} with an overall sign, e.g. -X I Y Z.
struct PauliString {
  std::vector<Pauli> ops;
  bool negated = false;

  PauliString() = default;
  explicit PauliString(int L) : ops(static_cast<std::size_t>(L), Pauli::I) {}
  static PauliString single(int L, int site, Pauli p);
  /// Parse e.g. "-XIYZ" or "+ZZ".
  static PauliString parse(const std::string& s);

  int size() const { return static_cast<int>(ops.size()); }
  Pauli at(int site) const { return ops[static_cast<std::size_t>(site)]; }
  void set(int site, Pauli p) { ops[static_cast<std::size_t>(site)] = p; }

  bool is_identity() const;
  /// Leftmost / rightmost non-identity site; -1 if identity.
  int left_end() const;
  int right_end() const;
  int support_size() const;

  std::string to_string() const;
  /// Dense 2^L x 2^L matrix (small L only; for tests and the exact engine).
  Eigen::MatrixXcd dense() const;

  bool operator==(const PauliString& other) const = default;
};

}  // namespace circuitlab
