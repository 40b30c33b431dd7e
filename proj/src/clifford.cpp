#include "circuitlab/clifford.hpp"

#include <bit>
#include <stdexcept>

#include "circuitlab/gate.hpp"
#include "circuitlab/pauli.hpp"

namespace circuitlab {

namespace {

// Pauli words with an exact quarter-phase: i^t * X^x Z^z, site-major order
// X_0^{x0} Z_0^{z0} X_1^{x1} Z_1^{z1}. All arithmetic exact over Z_4.
struct PhasedWord {
  int t = 0;  // mod 4
  std::uint8_t x = 0, z = 0;
};

PhasedWord mul(const PhasedWord& a, const PhasedWord& b) {
  PhasedWord r;
  r.t = (a.t + b.t + 2 * std::popcount(static_cast<unsigned>(a.z & b.x))) & 3;
  r.x = a.x ^ b.x;
  r.z = a.z ^ b.z;
  return r;
}

// Canonical Hermitian form: P = (-1)^s * prod_j sigma_j with sigma in
// {I,X,Y,Z} equals i^{2s + popcount(x&z)} X^x Z^z.
PhasedWord from_signed(const SignedPauliBits& p) {
  PhasedWord w;
  w.x = p.x;
  w.z = p.z;
  w.t = (2 * (p.neg ? 1 : 0) +
         std::popcount(static_cast<unsigned>(p.x & p.z))) &
        3;
  return w;
}

SignedPauliBits to_signed(const PhasedWord& w) {
  const int herm = std::popcount(static_cast<unsigned>(w.x & w.z)) & 3;
  const int s2 = (w.t - herm) & 3;
  if (s2 & 1)
    throw std::logic_error("phased word is not a Hermitian Pauli");
  return SignedPauliBits{w.x, w.z, s2 == 2};
}

Eigen::MatrixXcd signed_pauli_dense(const SignedPauliBits& p, int n) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(1, 1);
  for (int j = 0; j < n; ++j) {
    const bool xb = (p.x >> j) & 1, zb = (p.z >> j) & 1;
    Pauli loc = Pauli::I;
    if (xb && zb) loc = Pauli::Y;
    else if (xb) loc = Pauli::X;
    else if (zb) loc = Pauli::Z;
    const Eigen::Matrix2cd l = pauli_matrix(loc);
    Eigen::MatrixXcd next(m.rows() * 2, m.cols() * 2);
    // qubit 0 is the leftmost tensor factor (most significant index bit).
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b)
        next.block(a * m.rows(), b * m.cols(), m.rows(), m.cols()) = l(a, b) * m;
    m = std::move(next);
  }
  if (p.neg) m = -m;
  return m;
}

}  // namespace

CliffordGate CliffordGate::from_images(
    int n, const std::array<SignedPauliBits, 4>& images) {
  CliffordGate g;
  g.n_ = n;
  g.images_ = images;
  if (!g.preserves_symplectic_form())
    throw std::invalid_argument(
        "CliffordGate: images do not preserve the symplectic form");
  g.build_table();
  return g;
}

bool CliffordGate::preserves_symplectic_form() const {
  const int m = 2 * n_;
  for (int i = 0; i < m; ++i) {
    for (int j = i; j < m; ++j) {
      // Generators X_0,Z_0,X_1,Z_1: pair (2k, 2k+1) anticommutes, rest commute.
      const int want = (j == i + 1 && (i % 2 == 0)) ? 1 : 0;
      const auto& a = images_[static_cast<std::size_t>(i)];
      const auto& b = images_[static_cast<std::size_t>(j)];
      if (symplectic_product(a.x, a.z, b.x, b.z) != want) return false;
    }
  }
  return true;
}

void CliffordGate::build_table() {
  const int size = 1 << (2 * n_);
  table_bits_.assign(static_cast<std::size_t>(size), 0);
  table_sign_.assign(static_cast<std::size_t>(size), 0);
  for (int idx = 0; idx < size; ++idx) {
    // idx layout: x0 | z0<<1 | x1<<2 | z1<<3.
    std::uint8_t xin = 0, zin = 0;
    for (int j = 0; j < n_; ++j) {
      xin |= static_cast<std::uint8_t>(((idx >> (2 * j)) & 1) << j);
      zin |= static_cast<std::uint8_t>(((idx >> (2 * j + 1)) & 1) << j);
    }
    PhasedWord acc;  // identity
    acc.t = std::popcount(static_cast<unsigned>(xin & zin)) & 3;  // Hermitian input
    PhasedWord prod{0, 0, 0};
    bool first = true;
    for (int j = 0; j < n_; ++j) {
      if ((xin >> j) & 1) {
        const PhasedWord w = from_signed(images_[static_cast<std::size_t>(2 * j)]);
        prod = first ? w : mul(prod, w);
        first = false;
      }
      if ((zin >> j) & 1) {
        const PhasedWord w =
            from_signed(images_[static_cast<std::size_t>(2 * j + 1)]);
        prod = first ? w : mul(prod, w);
        first = false;
      }
    }
    if (first) prod = PhasedWord{0, 0, 0};
    prod.t = (prod.t + acc.t) & 3;
    const SignedPauliBits out = to_signed(prod);
    std::uint8_t obits = 0;
    for (int j = 0; j < n_; ++j) {
      obits |= static_cast<std::uint8_t>(((out.x >> j) & 1) << (2 * j));
      obits |= static_cast<std::uint8_t>(((out.z >> j) & 1) << (2 * j + 1));
    }
    table_bits_[static_cast<std::size_t>(idx)] = obits;
    table_sign_[static_cast<std::size_t>(idx)] = out.neg ? 1 : 0;
  }
}

Eigen::MatrixXcd CliffordGate::dense() const {
  const int dim = 1 << n_;
  // |psi_0> = joint +1 eigenvector of the images of the Z generators.
  Eigen::MatrixXcd proj = Eigen::MatrixXcd::Identity(dim, dim);
  for (int j = 0; j < n_; ++j) {
    const Eigen::MatrixXcd s =
        signed_pauli_dense(images_[static_cast<std::size_t>(2 * j + 1)], n_);
    proj = proj * 0.5 * (Eigen::MatrixXcd::Identity(dim, dim) + s);
  }
  Eigen::VectorXcd psi0;
  for (int c = 0; c < dim; ++c) {
    if (proj.col(c).norm() > 1e-9) {
      psi0 = proj.col(c).normalized();
      break;
    }
  }
  if (psi0.size() == 0)
    throw std::logic_error("CliffordGate::dense: empty joint eigenspace");
  // Deterministic global phase: first nonzero entry real positive.
  for (int i = 0; i < dim; ++i) {
    if (std::abs(psi0(i)) > 1e-9) {
      psi0 *= std::conj(psi0(i)) / std::abs(psi0(i));
      break;
    }
  }
  std::vector<Eigen::MatrixXcd> ximg;
  for (int j = 0; j < n_; ++j)
    ximg.push_back(signed_pauli_dense(images_[static_cast<std::size_t>(2 * j)], n_));
  Eigen::MatrixXcd u(dim, dim);
  for (int b = 0; b < dim; ++b) {
    Eigen::VectorXcd col = psi0;
    for (int j = 0; j < n_; ++j) {
      // qubit 0 = most significant bit of the basis index
      if ((b >> (n_ - 1 - j)) & 1) col = ximg[static_cast<std::size_t>(j)] * col;
    }
    u.col(b) = col;
  }
  return u;
}

CliffordGate CliffordGate::from_dense(const Eigen::MatrixXcd& u, double tol) {
  const int dim = static_cast<int>(u.rows());
  int n = 0;
  while ((1 << n) < dim) ++n;
  if ((1 << n) != dim || (n != 1 && n != 2))
    throw std::invalid_argument("from_dense: need a 1- or 2-qubit gate");
  if ((u.adjoint() * u - Eigen::MatrixXcd::Identity(dim, dim))
          .cwiseAbs()
          .maxCoeff() > 1e-10)
    throw std::invalid_argument("from_dense: matrix is not unitary");
  std::array<SignedPauliBits, 4> images{};
  for (int g = 0; g < 2 * n; ++g) {
    const int j = g / 2;
    SignedPauliBits gen;
    if (g % 2 == 0) gen.x = static_cast<std::uint8_t>(1 << j);
    else gen.z = static_cast<std::uint8_t>(1 << j);
    const Eigen::MatrixXcd conj = u * signed_pauli_dense(gen, n) * u.adjoint();
    bool found = false;
    for (int xz = 0; xz < (1 << (2 * n)) && !found; ++xz) {
      SignedPauliBits cand;
      cand.x = static_cast<std::uint8_t>(xz & ((1 << n) - 1));
      cand.z = static_cast<std::uint8_t>(xz >> n);
      const Eigen::MatrixXcd pd = signed_pauli_dense(cand, n);
      if ((conj - pd).cwiseAbs().maxCoeff() < tol) {
        images[static_cast<std::size_t>(g)] = cand;
        found = true;
      } else if ((conj + pd).cwiseAbs().maxCoeff() < tol) {
        cand.neg = true;
        images[static_cast<std::size_t>(g)] = cand;
        found = true;
      }
    }
    if (!found)
      throw std::invalid_argument(
          "from_dense: gate is not Clifford (conjugated Pauli is a superposition)");
  }
  return from_images(n, images);
}

std::uint32_t CliffordGate::canonical_key() const {
  std::uint32_t key = 0;
  for (int g = 0; g < 2 * n_; ++g) {
    const auto& p = images_[static_cast<std::size_t>(g)];
    std::uint32_t chunk = static_cast<std::uint32_t>(p.x) |
                          (static_cast<std::uint32_t>(p.z) << 2) |
                          (static_cast<std::uint32_t>(p.neg) << 4);
    key |= chunk << (5 * g);
  }
  return key;
}

CliffordGate sample_clifford2(RngStream& rng) {
  struct V {
    std::uint8_t x, z;
  };
  auto form = [](V a, V b) { return symplectic_product(a.x, a.z, b.x, b.z); };
  auto draw = [&rng]() {
    const std::uint64_t r = rng.next_u64();
    return V{static_cast<std::uint8_t>(r & 3),
             static_cast<std::uint8_t>((r >> 2) & 3)};
  };
  // First hyperbolic pair.
  V v1{};
  do {
    v1 = draw();
  } while (v1.x == 0 && v1.z == 0);
  V f1{};
  do {
    f1 = draw();
  } while (form(v1, f1) != 1);
  // Second pair, drawn uniformly from the symplectic complement of (v1, f1).
  auto project = [&](V w) {
    if (form(w, f1)) { w.x ^= v1.x; w.z ^= v1.z; }
    if (form(w, v1)) { w.x ^= f1.x; w.z ^= f1.z; }
    return w;
  };
  V v2{};
  do {
    v2 = project(draw());
  } while (v2.x == 0 && v2.z == 0);
  V f2{};
  do {
    f2 = project(draw());
  } while (form(v2, f2) != 1);

  std::array<SignedPauliBits, 4> images{};
  const V vs[4] = {v1, f1, v2, f2};
  const std::uint64_t signs = rng.next_u64();
  for (int g = 0; g < 4; ++g) {
    images[static_cast<std::size_t>(g)] =
        SignedPauliBits{vs[g].x, vs[g].z, ((signs >> g) & 1) != 0};
  }
  return CliffordGate::from_images(2, images);
}

CliffordGate clifford_cz() { return CliffordGate::from_dense(gate_cz()); }
CliffordGate clifford_cnot() { return CliffordGate::from_dense(gate_cnot()); }
CliffordGate clifford_swap() { return CliffordGate::from_dense(gate_swap()); }
CliffordGate clifford_h() { return CliffordGate::from_dense(gate_h()); }
CliffordGate clifford_s() { return CliffordGate::from_dense(gate_s()); }

}  // namespace circuitlab
