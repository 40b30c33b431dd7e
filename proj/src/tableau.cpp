#include "circuitlab/tableau.hpp"

#include <algorithm>
#include <bit>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace circuitlab {

namespace {
constexpr int kWordBits = 64;
inline int word_count(int L) { return (L + kWordBits - 1) / kWordBits; }

// dst *= src over the Pauli group; returns the new sign bit. Rows are in the
// Hermitian convention (-1)^s prod_j sigma_j, i.e. i^{2s + |x&z|} X^x Z^z;
// the quarter-phase bookkeeping is exact and must come out even.
std::uint8_t word_multiply(std::uint64_t* dx, std::uint64_t* dz, int dsign,
                           const std::uint64_t* sx, const std::uint64_t* sz,
                           int ssign, int words) {
  long t = 2 * dsign + 2 * ssign;
  for (int w = 0; w < words; ++w) {
    const std::uint64_t ax = dx[w], az = dz[w], bx = sx[w], bz = sz[w];
    t += std::popcount(ax & az) + std::popcount(bx & bz) +
         2 * std::popcount(az & bx) - std::popcount((ax ^ bx) & (az ^ bz));
    dx[w] = ax ^ bx;
    dz[w] = az ^ bz;
  }
  t &= 3;
  if (t & 1) throw std::logic_error("pauli row product has quarter phase");
  return static_cast<std::uint8_t>(t >> 1);
}

int gf2_rank(std::vector<std::vector<std::uint64_t>>& rows) {
  const std::size_t nrows = rows.size();
  if (nrows == 0) return 0;
  const std::size_t width = rows[0].size();
  int rank = 0;
  std::size_t pivot_row = 0;
  for (std::size_t w = 0; w < width && pivot_row < nrows; ++w) {
    for (int b = 0; b < kWordBits && pivot_row < nrows; ++b) {
      const std::uint64_t mask = std::uint64_t{1} << b;
      std::size_t found = nrows;
      for (std::size_t r = pivot_row; r < nrows; ++r) {
        if (rows[r][w] & mask) {
          found = r;
          break;
        }
      }
      if (found == nrows) continue;
      std::swap(rows[pivot_row], rows[found]);
      for (std::size_t r = 0; r < nrows; ++r) {
        if (r != pivot_row && (rows[r][w] & mask)) {
          for (std::size_t ww = w; ww < width; ++ww)
            rows[r][ww] ^= rows[pivot_row][ww];
        }
      }
      ++pivot_row;
      ++rank;
    }
  }
  return rank;
}
}  // namespace

Tableau::Tableau(int L, int k) : L_(L), k_(k), words_(word_count(L)) {
  const std::size_t cap =
      static_cast<std::size_t>(L) * static_cast<std::size_t>(words_);
  sx_.assign(cap, 0);
  sz_.assign(cap, 0);
  dx_.assign(cap, 0);
  dz_.assign(cap, 0);
  ssign_.assign(static_cast<std::size_t>(L), 0);
  dsign_.assign(static_cast<std::size_t>(L), 0);
}

bool Tableau::get_bit(const std::vector<std::uint64_t>& v, int row, int col) const {
  return (v[static_cast<std::size_t>(row) * words_ + col / kWordBits] >>
          (col % kWordBits)) &
         1;
}

void Tableau::set_bit(std::vector<std::uint64_t>& v, int row, int col, bool b) {
  auto& w = v[static_cast<std::size_t>(row) * words_ + col / kWordBits];
  const std::uint64_t mask = std::uint64_t{1} << (col % kWordBits);
  w = b ? (w | mask) : (w & ~mask);
}

std::span<const std::uint64_t> Tableau::row_span(
    const std::vector<std::uint64_t>& v, int row) const {
  return {v.data() + static_cast<std::size_t>(row) * words_,
          static_cast<std::size_t>(words_)};
}

Tableau Tableau::all_up(int L) {
  Tableau t(L, L);
  for (int i = 0; i < L; ++i) {
    t.set_bit(t.sz_, i, i, true);  // Z_i
    t.set_bit(t.dx_, i, i, true);
  }
  return t;
}

Tableau Tableau::all_plus(int L) {
  Tableau t(L, L);
  for (int i = 0; i < L; ++i) {
    t.set_bit(t.sx_, i, i, true);  // X_i
    t.set_bit(t.dz_, i, i, true);
  }
  return t;
}

Tableau Tableau::maximally_mixed(int L) { return Tableau(L, 0); }

Tableau Tableau::glassy(const std::vector<int>& m) {
  const int L = static_cast<int>(m.size()) + 1;
  Tableau t(L, L);
  for (int i = 0; i + 1 < L; ++i) {
    t.set_bit(t.sz_, i, i, true);
    t.set_bit(t.sz_, i, i + 1, true);
    t.ssign_[static_cast<std::size_t>(i)] = m[static_cast<std::size_t>(i)] < 0;
    for (int j = 0; j <= i; ++j) t.set_bit(t.dx_, i, j, true);
  }
  for (int j = 0; j < L; ++j) t.set_bit(t.sx_, L - 1, j, true);  // global parity
  t.set_bit(t.dz_, L - 1, L - 1, true);
  return t;
}

PauliString Tableau::generator(int row) const {
  PauliString p(L_);
  for (int c = 0; c < L_; ++c) {
    const bool x = get_bit(sx_, row, c), z = get_bit(sz_, row, c);
    p.set(c, x && z ? Pauli::Y : x ? Pauli::X : z ? Pauli::Z : Pauli::I);
  }
  p.negated = ssign_[static_cast<std::size_t>(row)] != 0;
  return p;
}

void Tableau::apply(const CliffordGate& g, int a, int b) {
  const int n = g.qubits();
  if (n == 2 && (b < 0 || b == a))
    throw std::invalid_argument("two-qubit gate needs two distinct sites");
  auto conj_rows = [&](std::vector<std::uint64_t>& xs,
                       std::vector<std::uint64_t>& zs,
                       std::vector<std::uint8_t>& signs) {
    for (int r = 0; r < k_; ++r) {
      std::uint8_t idx = 0;
      idx |= static_cast<std::uint8_t>(get_bit(xs, r, a) << 0);
      idx |= static_cast<std::uint8_t>(get_bit(zs, r, a) << 1);
      if (n == 2) {
        idx |= static_cast<std::uint8_t>(get_bit(xs, r, b) << 2);
        idx |= static_cast<std::uint8_t>(get_bit(zs, r, b) << 3);
      }
      const std::uint8_t out = g.conjugate_bits(idx);
      set_bit(xs, r, a, (out >> 0) & 1);
      set_bit(zs, r, a, (out >> 1) & 1);
      if (n == 2) {
        set_bit(xs, r, b, (out >> 2) & 1);
        set_bit(zs, r, b, (out >> 3) & 1);
      }
      signs[static_cast<std::size_t>(r)] ^= g.conjugate_sign(idx);
    }
  };
  conj_rows(sx_, sz_, ssign_);
  conj_rows(dx_, dz_, dsign_);
}

bool Tableau::row_anticommutes(const std::vector<std::uint64_t>& x,
                               const std::vector<std::uint64_t>& z, int row,
                               std::span<const std::uint64_t> px,
                               std::span<const std::uint64_t> pz) const {
  const std::size_t off = static_cast<std::size_t>(row) * words_;
  int acc = 0;
  for (int w = 0; w < words_; ++w) {
    acc ^= std::popcount(x[off + w] & pz[static_cast<std::size_t>(w)]) ^
           std::popcount(z[off + w] & px[static_cast<std::size_t>(w)]);
  }
  return acc & 1;
}

void Tableau::row_multiply(std::vector<std::uint64_t>& dstx,
                           std::vector<std::uint64_t>& dstz, std::uint8_t& dsgn,
                           int drow, std::span<const std::uint64_t> srcx,
                           std::span<const std::uint64_t> srcz, bool ssgn) {
  const std::size_t off = static_cast<std::size_t>(drow) * words_;
  dsgn = word_multiply(dstx.data() + off, dstz.data() + off, dsgn & 1,
                       srcx.data(), srcz.data(), ssgn ? 1 : 0, words_);
}

void Tableau::append_generator(std::span<const std::uint64_t> px,
                               std::span<const std::uint64_t> pz, bool sign) {
  const std::size_t off = static_cast<std::size_t>(k_) * words_;
  for (int w = 0; w < words_; ++w) {
    sx_[off + w] = px[static_cast<std::size_t>(w)];
    sz_[off + w] = pz[static_cast<std::size_t>(w)];
    dx_[off + w] = 0;
    dz_[off + w] = 0;
  }
  ssign_[static_cast<std::size_t>(k_)] = sign;
  dsign_[static_cast<std::size_t>(k_)] = 0;
  ++k_;
}

Tableau::MeasureResult Tableau::measure_pauli(const PauliString& p,
                                              RngStream& rng) {
  if (p.size() != L_)
    throw std::invalid_argument("measure_pauli: string length mismatch");
  if (p.is_identity())
    throw std::invalid_argument("measure_pauli: cannot measure the identity");
  std::vector<std::uint64_t> px(static_cast<std::size_t>(words_), 0);
  std::vector<std::uint64_t> pz(static_cast<std::size_t>(words_), 0);
  for (int c = 0; c < L_; ++c) {
    const Pauli loc = p.at(c);
    if (loc == Pauli::X || loc == Pauli::Y)
      px[static_cast<std::size_t>(c / kWordBits)] |= std::uint64_t{1} << (c % kWordBits);
    if (loc == Pauli::Z || loc == Pauli::Y)
      pz[static_cast<std::size_t>(c / kWordBits)] |= std::uint64_t{1} << (c % kWordBits);
  }
  const bool psign = p.negated;

  // Case (a): some stabilizer anticommutes with P.
  int pivot = -1;
  for (int r = 0; r < k_; ++r) {
    if (row_anticommutes(sx_, sz_, r, px, pz)) {
      pivot = r;
      break;
    }
  }
  if (pivot >= 0) {
    std::vector<std::uint64_t> spx(row_span(sx_, pivot).begin(),
                                   row_span(sx_, pivot).end());
    std::vector<std::uint64_t> spz(row_span(sz_, pivot).begin(),
                                   row_span(sz_, pivot).end());
    const bool spsign = ssign_[static_cast<std::size_t>(pivot)] != 0;
    for (int r = pivot + 1; r < k_; ++r) {
      if (row_anticommutes(sx_, sz_, r, px, pz))
        row_multiply(sx_, sz_, ssign_[static_cast<std::size_t>(r)], r, spx, spz,
                     spsign);
    }
    for (int r = 0; r < k_; ++r) {
      if (r != pivot && row_anticommutes(dx_, dz_, r, px, pz))
        row_multiply(dx_, dz_, dsign_[static_cast<std::size_t>(r)], r, spx, spz,
                     spsign);
    }
    const std::size_t off = static_cast<std::size_t>(pivot) * words_;
    for (int w = 0; w < words_; ++w) {
      dx_[off + w] = spx[static_cast<std::size_t>(w)];
      dz_[off + w] = spz[static_cast<std::size_t>(w)];
      sx_[off + w] = px[static_cast<std::size_t>(w)];
      sz_[off + w] = pz[static_cast<std::size_t>(w)];
    }
    dsign_[static_cast<std::size_t>(pivot)] = spsign;
    const int outcome = rng.bernoulli(0.5) ? -1 : +1;
    ssign_[static_cast<std::size_t>(pivot)] = psign ^ (outcome < 0);
    return {outcome, true};
  }

  // P commutes with every stabilizer: expand via the destabilizer pairing.
  // If P is in the group (mod sign) it must equal R = prod of the
  // stabilizers whose destabilizer partner anticommutes with P.
  std::vector<std::uint64_t> rx(static_cast<std::size_t>(words_), 0);
  std::vector<std::uint64_t> rz(static_cast<std::size_t>(words_), 0);
  std::uint8_t rsign = 0;
  for (int r = 0; r < k_; ++r) {
    if (!row_anticommutes(dx_, dz_, r, px, pz)) continue;
    const std::size_t off = static_cast<std::size_t>(r) * words_;
    rsign = word_multiply(rx.data(), rz.data(), rsign & 1, sx_.data() + off,
                          sz_.data() + off,
                          ssign_[static_cast<std::size_t>(r)] & 1, words_);
  }
  bool equal = true;
  for (int w = 0; w < words_ && equal; ++w) {
    equal = rx[static_cast<std::size_t>(w)] == px[static_cast<std::size_t>(w)] &&
            rz[static_cast<std::size_t>(w)] == pz[static_cast<std::size_t>(w)];
  }
  if (equal) {
    // Case (b): deterministic outcome, state unchanged.
    const int outcome = (rsign != 0) == psign ? +1 : -1;
    return {outcome, false};
  }

  // Case (c): P commutes with the group but is independent (k < L).
  if (k_ >= L_)
    throw std::logic_error("measure_pauli: full-rank group but P independent");
  // P_eff = P * R commutes with every stabilizer AND destabilizer, and
  // measuring P on this state is equivalent to measuring P_eff.
  std::uint8_t esign = word_multiply(px.data(), pz.data(), psign ? 1 : 0,
                                     rx.data(), rz.data(), rsign & 1, words_);
  const int outcome = rng.bernoulli(0.5) ? -1 : +1;
  const int newrow = k_;
  append_generator(px, pz, (esign != 0) ^ (outcome < 0));
  // Paired destabilizer: anticommutes with P_eff, commutes with all other
  // pairs (symplectic Gram-Schmidt against the existing pairs).
  std::vector<std::uint64_t> qx(static_cast<std::size_t>(words_), 0);
  std::vector<std::uint64_t> qz(static_cast<std::size_t>(words_), 0);
  {
    int site = -1;
    bool use_z = true;
    for (int c = 0; c < L_ && site < 0; ++c) {
      const bool xb =
          (px[static_cast<std::size_t>(c / kWordBits)] >> (c % kWordBits)) & 1;
      const bool zb =
          (pz[static_cast<std::size_t>(c / kWordBits)] >> (c % kWordBits)) & 1;
      if (xb) {
        site = c;
        use_z = true;
      } else if (zb) {
        site = c;
        use_z = false;
      }
    }
    auto& target = use_z ? qz : qx;
    target[static_cast<std::size_t>(site / kWordBits)] |= std::uint64_t{1}
                                                          << (site % kWordBits);
  }
  std::uint8_t qsign = 0;
  for (int r = 0; r < newrow; ++r) {
    const std::size_t off = static_cast<std::size_t>(r) * words_;
    if (row_anticommutes(sx_, sz_, r, qx, qz)) {
      qsign = word_multiply(qx.data(), qz.data(), qsign & 1, dx_.data() + off,
                            dz_.data() + off,
                            dsign_[static_cast<std::size_t>(r)] & 1, words_);
    }
    if (row_anticommutes(dx_, dz_, r, qx, qz)) {
      qsign = word_multiply(qx.data(), qz.data(), qsign & 1, sx_.data() + off,
                            sz_.data() + off,
                            ssign_[static_cast<std::size_t>(r)] & 1, words_);
    }
  }
  const std::size_t off = static_cast<std::size_t>(newrow) * words_;
  for (int w = 0; w < words_; ++w) {
    dx_[off + w] = qx[static_cast<std::size_t>(w)];
    dz_[off + w] = qz[static_cast<std::size_t>(w)];
  }
  dsign_[static_cast<std::size_t>(newrow)] = qsign;
  return {outcome, true};
}

Tableau::MeasureResult Tableau::measure_site(int site, Pauli basis,
                                             RngStream& rng) {
  if (basis == Pauli::I)
    throw std::invalid_argument("measure_site: basis must be X, Y or Z");
  return measure_pauli(PauliString::single(L_, site, basis), rng);
}

int Tableau::entropy_bits(std::span<const int> region) const {
  std::vector<bool> in_region(static_cast<std::size_t>(L_), false);
  for (int s : region) {
    if (s < 0 || s >= L_)
      throw std::invalid_argument("entropy_bits: site out of range");
    in_region[static_cast<std::size_t>(s)] = true;
  }
  std::vector<int> complement;
  complement.reserve(static_cast<std::size_t>(L_));
  for (int s = 0; s < L_; ++s)
    if (!in_region[static_cast<std::size_t>(s)]) complement.push_back(s);
  const int nc = static_cast<int>(complement.size());
  const int wc = word_count(std::max(2 * nc, 1));
  std::vector<std::vector<std::uint64_t>> rows(
      static_cast<std::size_t>(k_),
      std::vector<std::uint64_t>(static_cast<std::size_t>(wc), 0));
  for (int r = 0; r < k_; ++r) {
    auto& row = rows[static_cast<std::size_t>(r)];
    for (int c = 0; c < nc; ++c) {
      const int col = complement[static_cast<std::size_t>(c)];
      if (get_bit(sx_, r, col))
        row[static_cast<std::size_t>((2 * c) / kWordBits)] |=
            std::uint64_t{1} << ((2 * c) % kWordBits);
      if (get_bit(sz_, r, col))
        row[static_cast<std::size_t>((2 * c + 1) / kWordBits)] |=
            std::uint64_t{1} << ((2 * c + 1) % kWordBits);
    }
  }
  const int rank = gf2_rank(rows);
  return static_cast<int>(region.size()) - k_ + rank;
}

std::vector<std::uint64_t> Tableau::x_column_keys() const {
  std::vector<std::uint64_t> keys(static_cast<std::size_t>(L_), 0);
  for (int c = 0; c < L_; ++c) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (int r = 0; r < k_; ++r) {
      h ^= static_cast<std::uint64_t>(get_bit(sx_, r, c));
      h *= 0x100000001b3ULL;
    }
    keys[static_cast<std::size_t>(c)] = h;
  }
  return keys;
}

int Tableau::zz_expectation(int i, int j) const {
  if (k_ != L_)
    throw std::logic_error("zz_expectation: implemented for pure states only");
  if (i == j) return 1;
  std::vector<std::uint64_t> px(static_cast<std::size_t>(words_), 0);
  std::vector<std::uint64_t> pz(static_cast<std::size_t>(words_), 0);
  pz[static_cast<std::size_t>(i / kWordBits)] |= std::uint64_t{1} << (i % kWordBits);
  pz[static_cast<std::size_t>(j / kWordBits)] |= std::uint64_t{1} << (j % kWordBits);
  for (int r = 0; r < k_; ++r)
    if (row_anticommutes(sx_, sz_, r, px, pz)) return 0;
  std::vector<std::uint64_t> rx(static_cast<std::size_t>(words_), 0);
  std::vector<std::uint64_t> rz(static_cast<std::size_t>(words_), 0);
  std::uint8_t rsign = 0;
  for (int r = 0; r < k_; ++r) {
    if (!row_anticommutes(dx_, dz_, r, px, pz)) continue;
    const std::size_t off = static_cast<std::size_t>(r) * words_;
    rsign = word_multiply(rx.data(), rz.data(), rsign & 1, sx_.data() + off,
                          sz_.data() + off,
                          ssign_[static_cast<std::size_t>(r)] & 1, words_);
  }
  return rsign ? -1 : +1;
}

std::string Tableau::snapshot() const {
  std::ostringstream os;
  os << "tableau " << L_ << " " << k_ << "\n";
  auto dump_rows = [&](const std::vector<std::uint64_t>& xs,
                       const std::vector<std::uint64_t>& zs,
                       const std::vector<std::uint8_t>& signs, char tag) {
    char buf[17];
    for (int r = 0; r < k_; ++r) {
      os << tag << " ";
      for (int w = 0; w < words_; ++w) {
        std::snprintf(buf, sizeof buf, "%016llx",
                      static_cast<unsigned long long>(
                          xs[static_cast<std::size_t>(r) * words_ + w]));
        os << buf;
      }
      os << " ";
      for (int w = 0; w < words_; ++w) {
        std::snprintf(buf, sizeof buf, "%016llx",
                      static_cast<unsigned long long>(
                          zs[static_cast<std::size_t>(r) * words_ + w]));
        os << buf;
      }
      os << " " << int(signs[static_cast<std::size_t>(r)]) << "\n";
    }
  };
  dump_rows(sx_, sz_, ssign_, 'S');
  dump_rows(dx_, dz_, dsign_, 'D');
  return os.str();
}

Tableau Tableau::from_snapshot(const std::string& text) {
  std::istringstream is(text);
  std::string word;
  int L = 0, k = 0;
  is >> word >> L >> k;
  if (word != "tableau" || L <= 0 || k < 0 || k > L)
    throw std::invalid_argument("bad tableau snapshot header");
  Tableau t(L, k);
  const int words = t.words_;
  auto parse_hex = [&](const std::string& hex, std::vector<std::uint64_t>& v,
                       int row) {
    if (hex.size() != static_cast<std::size_t>(words) * 16)
      throw std::invalid_argument("bad hex row width in tableau snapshot");
    for (int w = 0; w < words; ++w) {
      v[static_cast<std::size_t>(row) * words + w] = std::stoull(
          hex.substr(static_cast<std::size_t>(w) * 16, 16), nullptr, 16);
    }
  };
  for (int pass = 0; pass < 2; ++pass) {
    for (int r = 0; r < k; ++r) {
      std::string tag, xhex, zhex;
      int sign = 0;
      if (!(is >> tag >> xhex >> zhex >> sign))
        throw std::invalid_argument("truncated tableau snapshot");
      const char want = pass == 0 ? 'S' : 'D';
      if (tag.size() != 1 || tag[0] != want)
        throw std::invalid_argument("unexpected row tag in tableau snapshot");
      auto& xs = pass == 0 ? t.sx_ : t.dx_;
      auto& zs = pass == 0 ? t.sz_ : t.dz_;
      auto& sg = pass == 0 ? t.ssign_ : t.dsign_;
      parse_hex(xhex, xs, r);
      parse_hex(zhex, zs, r);
      sg[static_cast<std::size_t>(r)] = static_cast<std::uint8_t>(sign);
    }
  }
  t.check_invariants();
  return t;
}

void Tableau::check_invariants() const {
  for (int i = 0; i < k_; ++i) {
    for (int j = 0; j < k_; ++j) {
      if (row_anticommutes(sx_, sz_, i, row_span(sx_, j), row_span(sz_, j)))
        throw std::logic_error("stabilizers do not commute");
      if (row_anticommutes(dx_, dz_, i, row_span(dx_, j), row_span(dz_, j)))
        throw std::logic_error("destabilizers do not commute");
      const bool anti =
          row_anticommutes(dx_, dz_, i, row_span(sx_, j), row_span(sz_, j));
      if (anti != (i == j))
        throw std::logic_error("destabilizer pairing broken");
    }
  }
  const int wc = word_count(std::max(2 * L_, 1));
  std::vector<std::vector<std::uint64_t>> rows(
      static_cast<std::size_t>(k_),
      std::vector<std::uint64_t>(static_cast<std::size_t>(wc), 0));
  for (int r = 0; r < k_; ++r) {
    for (int c = 0; c < L_; ++c) {
      if (get_bit(sx_, r, c))
        rows[static_cast<std::size_t>(r)]
            [static_cast<std::size_t>((2 * c) / kWordBits)] |=
            std::uint64_t{1} << ((2 * c) % kWordBits);
      if (get_bit(sz_, r, c))
        rows[static_cast<std::size_t>(r)]
            [static_cast<std::size_t>((2 * c + 1) / kWordBits)] |=
            std::uint64_t{1} << ((2 * c + 1) % kWordBits);
    }
  }
  if (gf2_rank(rows) != k_)
    throw std::logic_error("stabilizer generators are linearly dependent");
}

bool Tableau::operator==(const Tableau& other) const {
  return L_ == other.L_ && k_ == other.k_ && sx_ == other.sx_ &&
         sz_ == other.sz_ && dx_ == other.dx_ && dz_ == other.dz_ &&
         ssign_ == other.ssign_ && dsign_ == other.dsign_;
}

}  // namespace circuitlab
