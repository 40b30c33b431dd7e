#include "circuitlab/gate.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <unsupported/Eigen/MatrixFunctions>

#include "circuitlab/pauli.hpp"

namespace circuitlab {

using namespace std::complex_literals;

std::string gate_kind_name(GateKind k) {
  switch (k) {
    case GateKind::haar: return "haar";
    case GateKind::clifford: return "clifford";
    case GateKind::u1_block: return "u1-block";
    case GateKind::dual_unitary: return "dual-unitary";
    case GateKind::fixed: return "fixed";
  }
  return "?";
}

GateKind gate_kind_from_name(const std::string& s) {
  if (s == "haar") return GateKind::haar;
  if (s == "clifford") return GateKind::clifford;
  if (s == "u1-block") return GateKind::u1_block;
  if (s == "dual-unitary") return GateKind::dual_unitary;
  if (s == "fixed") return GateKind::fixed;
  throw std::invalid_argument("unknown gate kind: " + s);
}

double UnitaryGate::unitarity_defect() const {
  const Eigen::MatrixXcd d =
      entries.adjoint() * entries - Eigen::MatrixXcd::Identity(dim, dim);
  return d.cwiseAbs().maxCoeff();
}

Eigen::MatrixXcd haar_unitary(int dim, RngStream& rng) {
  if (dim < 1) throw std::invalid_argument("haar_unitary: dim must be >= 1");
  Eigen::MatrixXcd a(dim, dim);
  for (int j = 0; j < dim; ++j)
    for (int i = 0; i < dim; ++i) a(i, j) = rng.complex_normal();
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(a);
  Eigen::MatrixXcd q = qr.householderQ();
  const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < dim; ++j) {
    const std::complex<double> d = r(j, j);
    const double ad = std::abs(d);
    const std::complex<double> phase = ad > 0 ? d / ad : 1.0;
    q.col(j) *= phase;
  }
  return q;
}

UnitaryGate sample_haar_gate(int q, RngStream& rng) {
  if (q < 2) throw std::invalid_argument("sample_haar_gate: q must be >= 2");
  return UnitaryGate{q * q, haar_unitary(q * q, rng), GateKind::haar};
}

UnitaryGate sample_u1_gate(RngStream& rng) {
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(4, 4);
  // Z basis |0>=up, |1>=down; charge sectors {00}, {01,10}, {11}.
  const double twopi = 2.0 * std::numbers::pi;
  u(0, 0) = std::exp(1i * rng.uniform(0.0, twopi));
  u(3, 3) = std::exp(1i * rng.uniform(0.0, twopi));
  const Eigen::MatrixXcd c = haar_unitary(2, rng);
  u(1, 1) = c(0, 0);
  u(1, 2) = c(0, 1);
  u(2, 1) = c(1, 0);
  u(2, 2) = c(1, 1);
  return UnitaryGate{4, std::move(u), GateKind::u1_block};
}

Eigen::MatrixXcd spacetime_flip(const Eigen::MatrixXcd& u, int q) {
  const int d = q * q;
  if (u.rows() != d || u.cols() != d)
    throw std::invalid_argument("spacetime_flip: need a two-site gate");
  Eigen::MatrixXcd f(d, d);
  for (int i1 = 0; i1 < q; ++i1)
    for (int i2 = 0; i2 < q; ++i2)
      for (int o1 = 0; o1 < q; ++o1)
        for (int o2 = 0; o2 < q; ++o2)
          f(i2 * q + o2, i1 * q + o1) = u(o1 * q + o2, i1 * q + i2);
  return f;
}

bool is_dual_unitary(const UnitaryGate& g, double tol) {
  if (!g.is_unitary(tol)) return false;
  const int q = static_cast<int>(std::lround(std::sqrt(double(g.dim))));
  UnitaryGate flipped{g.dim, spacetime_flip(g.entries, q), g.label};
  return flipped.is_unitary(tol);
}

UnitaryGate make_dual_unitary(double J,
                              const std::array<Eigen::Matrix2cd, 4>& v) {
  const Eigen::MatrixXcd xx = kron2(pauli_matrix(Pauli::X), pauli_matrix(Pauli::X));
  const Eigen::MatrixXcd yy = kron2(pauli_matrix(Pauli::Y), pauli_matrix(Pauli::Y));
  const Eigen::MatrixXcd zz = kron2(pauli_matrix(Pauli::Z), pauli_matrix(Pauli::Z));
  const Eigen::MatrixXcd h =
      (std::numbers::pi / 4.0) * (xx + yy) + J * zz;
  const Eigen::MatrixXcd core = (-1i * h).exp();
  Eigen::MatrixXcd u = kron2(v[0], v[1]) * core * kron2(v[2], v[3]);
  return UnitaryGate{4, std::move(u), GateKind::dual_unitary};
}

UnitaryGate make_dual_unitary(double J, RngStream& rng) {
  std::array<Eigen::Matrix2cd, 4> v;
  for (auto& m : v) m = haar_unitary(2, rng);
  return make_dual_unitary(J, v);
}

Eigen::MatrixXcd gate_identity(int dim) {
  return Eigen::MatrixXcd::Identity(dim, dim);
}

Eigen::MatrixXcd gate_cz() {
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(4, 4);
  u(3, 3) = -1.0;
  return u;
}

Eigen::MatrixXcd gate_cnot() {
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(4, 4);
  u(0, 0) = 1;
  u(1, 1) = 1;
  u(2, 3) = 1;
  u(3, 2) = 1;
  return u;
}

Eigen::MatrixXcd gate_swap() {
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(4, 4);
  u(0, 0) = 1;
  u(1, 2) = 1;
  u(2, 1) = 1;
  u(3, 3) = 1;
  return u;
}

Eigen::Matrix2cd gate_h() {
  Eigen::Matrix2cd u;
  u << 1, 1, 1, -1;
  return u / std::sqrt(2.0);
}

Eigen::Matrix2cd gate_s() {
  Eigen::Matrix2cd u;
  u << 1, 0, 0, 1i;
  return u;
}

Eigen::MatrixXcd kron2(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
  Eigen::MatrixXcd m(4, 4);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) m.block(i * 2, j * 2, 2, 2) = a(i, j) * b;
  return m;
}

}  // namespace circuitlab
