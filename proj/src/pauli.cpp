#include "circuitlab/pauli.hpp"

#include <stdexcept>

namespace circuitlab {

using namespace std::complex_literals;

char pauli_char(Pauli p) {
  switch (p) {
    case Pauli::I: return 'I';
    case Pauli::X: return 'X';
    case Pauli::Y: return 'Y';
    case Pauli::Z: return 'Z';
  }
  return '?';
}

Pauli pauli_from_char(char c) {
  switch (c) {
    case 'I': return Pauli::I;
    case 'X': return Pauli::X;
    case 'Y': return Pauli::Y;
    case 'Z': return Pauli::Z;
    default: throw std::invalid_argument(std::string("not a Pauli: ") + c);
  }
}

Eigen::Matrix2cd pauli_matrix(Pauli p) {
  Eigen::Matrix2cd m;
  switch (p) {
    case Pauli::I: m << 1, 0, 0, 1; break;
    case Pauli::X: m << 0, 1, 1, 0; break;
    case Pauli::Y: m << 0, -1i, 1i, 0; break;
    case Pauli::Z: m << 1, 0, 0, -1; break;
  }
  return m;
}

PauliString PauliString::single(int L, int site, Pauli p) {
  PauliString s(L);
  s.set(site, p);
  return s;
}

PauliString PauliString::parse(const std::string& str) {
  PauliString s;
  std::size_t i = 0;
  if (!str.empty() && (str[0] == '+' || str[0] == '-')) {
    s.negated = (str[0] == '-');
    i = 1;
  }
  for (; i < str.size(); ++i) s.ops.push_back(pauli_from_char(str[i]));
  return s;
}

bool PauliString::is_identity() const {
  for (Pauli p : ops)
    if (p != Pauli::I) return false;
  return true;
}

int PauliString::left_end() const {
  for (int i = 0; i < size(); ++i)
    if (ops[static_cast<std::size_t>(i)] != Pauli::I) return i;
  return -1;
}

int PauliString::right_end() const {
  for (int i = size() - 1; i >= 0; --i)
    if (ops[static_cast<std::size_t>(i)] != Pauli::I) return i;
  return -1;
}

int PauliString::support_size() const {
  int n = 0;
  for (Pauli p : ops) n += (p != Pauli::I);
  return n;
}

std::string PauliString::to_string() const {
  std::string s(1, negated ? '-' : '+');
  for (Pauli p : ops) s.push_back(pauli_char(p));
  return s;
}

Eigen::MatrixXcd PauliString::dense() const {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(1, 1);
  for (Pauli p : ops) {
    Eigen::MatrixXcd next(m.rows() * 2, m.cols() * 2);
    const Eigen::Matrix2cd loc = pauli_matrix(p);
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b)
        next.block(a * m.rows(), b * m.cols(), m.rows(), m.cols()) =
            loc(a, b) * m;
    m = std::move(next);
  }
  if (negated) m = -m;
  return m;
}

}  // namespace circuitlab
