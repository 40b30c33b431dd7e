#pragma once

#include <Eigen/Dense>
#include <array>
#include <optional>
#include <string>

#include "circuitlab/rng.hpp"

namespace circuitlab {

enum class GateKind { haar, clifford, u1_block, dual_unitary, fixed };

std::string gate_kind_name(GateKind k);
GateKind gate_kind_from_name(const std::string& s);

/// Dense local unitary. dim = q^2 for two-site gates, q for one-site.
/// Two-site index convention: row (o1*q + o2), column (i1*q + i2), with
/// site 1 the left member of the pair.
struct UnitaryGate {
  int dim = 0;
  Eigen::MatrixXcd entries;
  GateKind label = GateKind::fixed;

  /// max |U^dag U - 1| entry.
  double unitarity_defect() const;
  bool is_unitary(double tol = 1e-12) const { return unitarity_defect() < tol; }
};

/// Haar-distributed unitary on U(dim): complex Ginibre + QR with the phase
/// of the R diagonal fixed to be real positive, which makes the
/// factorization unique and the result exactly Haar.
Eigen::MatrixXcd haar_unitary(int dim, RngStream& rng);

/// Two-site Haar gate on a pair of q-level sites.
UnitaryGate sample_haar_gate(int q, RngStream& rng);

/// Two-qubit gate block-diagonal in total-Z charge sectors:
/// random phases on |00> and |11>, Haar U(2) on span{|01>,|10>}.
UnitaryGate sample_u1_gate(RngStream& rng);

/// Index reshuffle exchanging the roles of space and time for a two-site
/// gate: Util[(i2 o2),(i1 o1)] = U[(o1 o2),(i1 i2)]. An involution.
Eigen::MatrixXcd spacetime_flip(const Eigen::MatrixXcd& u, int q = 2);

/// True iff both U and spacetime_flip(U) are unitary within tol.
bool is_dual_unitary(const UnitaryGate& g, double tol = 1e-10);

/// (v1 (x) v2) V(J) (v3 (x) v4) with
/// V(J) = exp[-i pi/4 (XX + YY) - i J ZZ]; dual-unitary for every real J.
UnitaryGate make_dual_unitary(double J,
                              const std::array<Eigen::Matrix2cd, 4>& dressings);
/// Same with Haar-random single-site dressings.
UnitaryGate make_dual_unitary(double J, RngStream& rng);

// Fixed gates used throughout the tests and experiments.
Eigen::MatrixXcd gate_identity(int dim);
Eigen::MatrixXcd gate_cz();
Eigen::MatrixXcd gate_cnot();   // control = left site
Eigen::MatrixXcd gate_swap();
Eigen::Matrix2cd gate_h();
Eigen::Matrix2cd gate_s();      // phase gate diag(1, i)
Eigen::MatrixXcd kron2(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b);

}  // namespace circuitlab
