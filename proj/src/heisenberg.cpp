#include "circuitlab/heisenberg.hpp"

#include <bit>
#include <cmath>
#include <complex>
#include <stdexcept>

namespace circuitlab {

using namespace std::complex_literals;

namespace {

// u acting on sites (a, b) of the row index: O <- (u (x) 1) O.
void apply_rows(Eigen::MatrixXcd& o, const Eigen::MatrixXcd& u, int L, int a,
                int b) {
  const long n = o.rows();
  const long sa = 1L << (L - 1 - a);
  const long sb = b >= 0 ? (1L << (L - 1 - b)) : 0;
  const int q = 2;
  Eigen::Vector4cd loc;
  for (long col = 0; col < o.cols(); ++col) {
    if (b < 0) {
      for (long base = 0; base < n; ++base) {
        if ((base / sa) % 2 != 0) continue;
        Eigen::Vector2cd v(o(base, col), o(base + sa, col));
        o(base, col) = u(0, 0) * v(0) + u(0, 1) * v(1);
        o(base + sa, col) = u(1, 0) * v(0) + u(1, 1) * v(1);
      }
      continue;
    }
    for (long base = 0; base < n; ++base) {
      if ((base / sa) % 2 != 0 || (base / sb) % 2 != 0) continue;
      for (int ia = 0; ia < q; ++ia)
        for (int ib = 0; ib < q; ++ib)
          loc(ia * q + ib) = o(base + ia * sa + ib * sb, col);
      for (int oa = 0; oa < q; ++oa)
        for (int ob = 0; ob < q; ++ob) {
          std::complex<double> acc = 0;
          for (int ic = 0; ic < 4; ++ic) acc += u(oa * q + ob, ic) * loc(ic);
          o(base + oa * sa + ob * sb, col) = acc;
        }
    }
  }
}

// O <- O (u^dag (x) 1) acting on column indices.
void apply_cols_dagger(Eigen::MatrixXcd& o, const Eigen::MatrixXcd& u, int L,
                       int a, int b) {
  const long n = o.cols();
  const long sa = 1L << (L - 1 - a);
  const long sb = b >= 0 ? (1L << (L - 1 - b)) : 0;
  const int q = 2;
  Eigen::Vector4cd loc;
  for (long row = 0; row < o.rows(); ++row) {
    if (b < 0) {
      for (long base = 0; base < n; ++base) {
        if ((base / sa) % 2 != 0) continue;
        Eigen::Vector2cd v(o(row, base), o(row, base + sa));
        // (O u^dag)[row, o] = sum_i O[row, i] conj(u(o, i))^T ... columns mix
        // with conj(u): new[c_out] = sum_in old[c_in] * conj(u(c_out, c_in)).
        o(row, base) = v(0) * std::conj(u(0, 0)) + v(1) * std::conj(u(0, 1));
        o(row, base + sa) = v(0) * std::conj(u(1, 0)) + v(1) * std::conj(u(1, 1));
      }
      continue;
    }
    for (long base = 0; base < n; ++base) {
      if ((base / sa) % 2 != 0 || (base / sb) % 2 != 0) continue;
      for (int ia = 0; ia < q; ++ia)
        for (int ib = 0; ib < q; ++ib)
          loc(ia * q + ib) = o(row, base + ia * sa + ib * sb);
      for (int oa = 0; oa < q; ++oa)
        for (int ob = 0; ob < q; ++ob) {
          std::complex<double> acc = 0;
          for (int ic = 0; ic < 4; ++ic)
            acc += loc(ic) * std::conj(u(oa * q + ob, ic));
          o(row, base + oa * sa + ob * sb) = acc;
        }
    }
  }
}

HeisenbergOperator evolve_impl(Pauli p, int site, const Circuit& c, int layers,
                               int dense_cap, bool backward) {
  if (c.q != 2)
    throw std::invalid_argument("heisenberg_evolve: qubit circuits only");
  if (c.L > dense_cap)
    throw std::invalid_argument("heisenberg_evolve: dense cap exceeded");
  if (site < 0 || site >= c.L)
    throw std::invalid_argument("heisenberg_evolve: bad site");
  HeisenbergOperator h;
  h.L = c.L;
  h.op = PauliString::single(c.L, site, p).dense();
  const int upto = layers < 0 ? c.depth() : std::min(layers, c.depth());
  if (!backward) {
    for (int l = 0; l < upto; ++l) {
      for (const auto& e : c.layers[static_cast<std::size_t>(l)].events) {
        if (const auto* g = std::get_if<GateEvent>(&e)) {
          const auto& u = c.gates[static_cast<std::size_t>(g->gate_id)].unitary.entries;
          apply_rows(h.op, u, c.L, g->a, g->b);
          apply_cols_dagger(h.op, u, c.L, g->a, g->b);
        }
      }
    }
  } else {
    // U^dag O U = conjugation by the daggered gates in reverse order.
    for (int l = upto - 1; l >= 0; --l) {
      const auto& events = c.layers[static_cast<std::size_t>(l)].events;
      for (auto it = events.rbegin(); it != events.rend(); ++it) {
        if (const auto* g = std::get_if<GateEvent>(&*it)) {
          const Eigen::MatrixXcd ud =
              c.gates[static_cast<std::size_t>(g->gate_id)].unitary.entries.adjoint();
          apply_rows(h.op, ud, c.L, g->a, g->b);
          apply_cols_dagger(h.op, ud, c.L, g->a, g->b);
        }
      }
    }
  }
  return h;
}

}  // namespace

double HeisenbergOperator::norm_trace_sq() const {
  // tr_n[O^2] for Hermitian O = sum |O_ij|^2 / 2^L.
  return op.squaredNorm() / static_cast<double>(op.rows());
}

HeisenbergOperator heisenberg_evolve(Pauli p, int site, const Circuit& c,
                                     int layers, int dense_cap) {
  return evolve_impl(p, site, c, layers, dense_cap, false);
}

HeisenbergOperator heisenberg_evolve_backward(Pauli p, int site,
                                              const Circuit& c, int layers,
                                              int dense_cap) {
  return evolve_impl(p, site, c, layers, dense_cap, true);
}

PauliWeights pauli_weights(const HeisenbergOperator& o) {
  const int L = o.L;
  const long dim = o.op.rows();
  const long nstrings = 1L << (2 * L);
  PauliWeights out;
  out.L = L;
  out.weight.assign(static_cast<std::size_t>(nstrings), 0.0);
  out.site_density.assign(static_cast<std::size_t>(L), 0.0);
  out.right_end_density.assign(static_cast<std::size_t>(L), 0.0);
  for (long s = 0; s < nstrings; ++s) {
    // Decode masks: site j holds (s >> 2*(L-1-j)) & 3, order I,X,Y,Z.
    long xmask = 0;
    long ymask = 0, zmask = 0;
    int n_y = 0;
    for (int j = 0; j < L; ++j) {
      const int code = static_cast<int>((s >> (2 * (L - 1 - j))) & 3);
      const long bit = 1L << (L - 1 - j);
      if (code == 1) xmask |= bit;
      else if (code == 2) { xmask |= bit; ymask |= bit; ++n_y; }
      else if (code == 3) zmask |= bit;
    }
    std::complex<double> acc = 0;
    for (long m = 0; m < dim; ++m) {
      const int par =
          std::popcount(static_cast<std::uint64_t>(m & (ymask | zmask))) & 1;
      const double sign = par ? -1.0 : 1.0;
      acc += sign * o.op(m, m ^ xmask);
    }
    std::complex<double> iphase = 1.0;
    switch (n_y & 3) {
      case 1: iphase = 1i; break;
      case 2: iphase = -1.0; break;
      case 3: iphase = -1i; break;
      default: break;
    }
    const std::complex<double> a = iphase * acc / static_cast<double>(dim);
    const double w = std::norm(a);
    out.weight[static_cast<std::size_t>(s)] = w;
    if (w > 0) {
      int right = -1;
      for (int j = 0; j < L; ++j) {
        const int code = static_cast<int>((s >> (2 * (L - 1 - j))) & 3);
        if (code != 0) {
          out.site_density[static_cast<std::size_t>(j)] += w;
          right = j;
        }
      }
      if (right >= 0) out.right_end_density[static_cast<std::size_t>(right)] += w;
    }
    out.total += w;
  }
  return out;
}

namespace {

// tr_n[P_r M P_r M] for single-site Pauli P at site r and Hermitian M.
double sandwich_trace(const Eigen::MatrixXcd& m, int L, int r, Pauli p) {
  const long dim = m.rows();
  const long bit = 1L << (L - 1 - r);
  std::complex<double> acc = 0;
  switch (p) {
    case Pauli::Z: {
      for (long k = 0; k < dim; ++k) {
        const double zk = (k & bit) ? -1.0 : 1.0;
        for (long mm = 0; mm < dim; ++mm) {
          const double zm = (mm & bit) ? -1.0 : 1.0;
          acc += zk * zm * m(k, mm) * m(mm, k);
        }
      }
      break;
    }
    case Pauli::X: {
      for (long k = 0; k < dim; ++k)
        for (long mm = 0; mm < dim; ++mm)
          acc += m(k ^ bit, mm ^ bit) * m(mm, k);
      break;
    }
    case Pauli::Y: {
      for (long k = 0; k < dim; ++k) {
        const double yk = (k & bit) ? -1.0 : 1.0;
        for (long mm = 0; mm < dim; ++mm) {
          const double ym = (mm & bit) ? -1.0 : 1.0;
          acc += yk * ym * m(k ^ bit, mm ^ bit) * m(mm, k);
        }
      }
      break;
    }
    default:
      throw std::invalid_argument("sandwich_trace: probe must be X, Y or Z");
  }
  return (acc / static_cast<double>(dim)).real();
}

}  // namespace

double otoc(const Circuit& c, int r, int t_layers, int source, Pauli probe,
            Pauli source_op, int dense_cap) {
  const HeisenbergOperator m =
      heisenberg_evolve_backward(source_op, source, c, t_layers, dense_cap);
  return 1.0 - sandwich_trace(m.op, c.L, r, probe);
}

std::vector<double> otoc_profile(const Circuit& c, int t_layers, int source,
                                 Pauli probe, Pauli source_op, int dense_cap) {
  const HeisenbergOperator m =
      heisenberg_evolve_backward(source_op, source, c, t_layers, dense_cap);
  std::vector<double> out(static_cast<std::size_t>(c.L));
  for (int r = 0; r < c.L; ++r)
    out[static_cast<std::size_t>(r)] = 1.0 - sandwich_trace(m.op, c.L, r, probe);
  return out;
}

std::vector<double> two_point_profile(const Circuit& c, int t_layers,
                                      int source, Pauli op, int dense_cap) {
  const HeisenbergOperator m =
      heisenberg_evolve_backward(op, source, c, t_layers, dense_cap);
  const long dim = m.op.rows();
  std::vector<double> out(static_cast<std::size_t>(c.L), 0.0);
  for (int r = 0; r < c.L; ++r) {
    const long bit = 1L << (c.L - 1 - r);
    std::complex<double> acc = 0;
    switch (op) {
      case Pauli::Z:
        for (long k = 0; k < dim; ++k)
          acc += ((k & bit) ? -1.0 : 1.0) * m.op(k, k);
        break;
      case Pauli::X:
        for (long k = 0; k < dim; ++k) acc += m.op(k ^ bit, k);
        break;
      case Pauli::Y:
        for (long k = 0; k < dim; ++k) {
          const std::complex<double> ph = (k & bit) ? -1i : 1i;
          acc += ph * m.op(k ^ bit, k);
        }
        break;
      default:
        throw std::invalid_argument("two_point_profile: op must be X, Y or Z");
    }
    out[static_cast<std::size_t>(r)] = (acc / static_cast<double>(dim)).real();
  }
  return out;
}

}  // namespace circuitlab
