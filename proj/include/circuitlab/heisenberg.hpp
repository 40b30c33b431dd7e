#pragma once

#include <Eigen/Dense>
#include <vector>

#include "circuitlab/circuit.hpp"
#include "circuitlab/pauli.hpp"

namespace circuitlab {

/// Dense Heisenberg-picture operator on L qubits, normalized so that
/// tr_n[O^2] = 1 with tr_n the normalized trace (tr_n 1 = 1).
struct HeisenbergOperator {
  int L = 0;
  Eigen::MatrixXcd op;

  double norm_trace_sq() const;  // tr_n[O^2]
};

inline constexpr int kDenseCapDefault = 10;

/// O(r, t) = U(t) O U(t)^dag with U(t) the first `layers` circuit layers
/// (layers < 0 means the whole circuit). Enforces the dense-size cap.
HeisenbergOperator heisenberg_evolve(Pauli p, int site, const Circuit& c,
                                     int layers = -1,
                                     int dense_cap = kDenseCapDefault);

/// U(t)^dag O U(t): the operator propagated backwards, so that
/// tr_n[O(r,t) O(0,0)] = tr_n[O_r * backward(O_0)].
HeisenbergOperator heisenberg_evolve_backward(Pauli p, int site,
                                              const Circuit& c, int layers = -1,
                                              int dense_cap = kDenseCapDefault);

struct PauliWeights {
  int L = 0;
  std::vector<double> weight;             // a_S^2 indexed by base-4 string
  std::vector<double> site_density;       // per-site non-identity weight
  std::vector<double> right_end_density;  // weight with rightmost support here
  double total = 0.0;                     // sum of a_S^2
};

/// Expansion weights onto Pauli strings; site j of string index s is
/// (s >> 2*(L-1-j)) & 3 with the Pauli order I,X,Y,Z.
PauliWeights pauli_weights(const HeisenbergOperator& o);

/// -1/2 tr_n([O(r,t), O(src,0)]^2) for Pauli probe/source; in [0, 2].
/// Computed from one backward evolution of the source operator.
double otoc(const Circuit& c, int r, int t_layers, int source = 0,
            Pauli probe = Pauli::Z, Pauli source_op = Pauli::Z,
            int dense_cap = kDenseCapDefault);

/// OTOC at every site from a single backward evolution.
std::vector<double> otoc_profile(const Circuit& c, int t_layers, int source = 0,
                                 Pauli probe = Pauli::Z,
                                 Pauli source_op = Pauli::Z,
                                 int dense_cap = kDenseCapDefault);

/// G(r,t) = tr_n[O(r,t) O(src,0)] at every r, one backward evolution.
std::vector<double> two_point_profile(const Circuit& c, int t_layers,
                                      int source = 0, Pauli op = Pauli::Z,
                                      int dense_cap = kDenseCapDefault);

}  // namespace circuitlab
