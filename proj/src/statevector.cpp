#include "circuitlab/statevector.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace circuitlab {

namespace {
long ipow(int q, int e) {
  long r = 1;
  for (int i = 0; i < e; ++i) r *= q;
  return r;
}
}  // namespace

int PureState::digit(long index, int site) const {
  const long stride = ipow(q, L - 1 - site);
  return static_cast<int>((index / stride) % q);
}

PureState init_product(int L, int q,
                       const std::vector<Eigen::VectorXcd>& kets) {
  if (static_cast<int>(kets.size()) != L)
    throw std::invalid_argument("init_product: need one ket per site");
  for (const auto& k : kets) {
    if (k.size() != q)
      throw std::invalid_argument("init_product: local ket dimension mismatch");
    if (std::abs(k.squaredNorm() - 1.0) > 1e-9)
      throw std::invalid_argument("init_product: local ket not normalized");
  }
  PureState s;
  s.L = L;
  s.q = q;
  s.amps = Eigen::VectorXcd::Ones(1);
  for (const auto& k : kets) {
    Eigen::VectorXcd next(s.amps.size() * q);
    for (long i = 0; i < s.amps.size(); ++i)
      for (int d = 0; d < q; ++d) next(i * q + d) = s.amps(i) * k(d);
    s.amps = std::move(next);
  }
  return s;
}

PureState state_all_up(int L) {
  Eigen::VectorXcd up(2);
  up << 1, 0;
  return init_product(L, 2, std::vector<Eigen::VectorXcd>(
                                static_cast<std::size_t>(L), up));
}

PureState state_all_plus(int L) {
  Eigen::VectorXcd plus(2);
  plus << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  return init_product(L, 2, std::vector<Eigen::VectorXcd>(
                                static_cast<std::size_t>(L), plus));
}

void apply_gate(PureState& s, const Eigen::MatrixXcd& u, int a, int b) {
  const int q = s.q;
  const bool two_site = b >= 0;
  const int dim_needed = two_site ? q * q : q;
  if (u.rows() != dim_needed || u.cols() != dim_needed)
    throw std::invalid_argument("apply_gate: gate dimension mismatch");
  if (a < 0 || a >= s.L || (two_site && (b < 0 || b >= s.L || b == a)))
    throw std::invalid_argument("apply_gate: bad sites");
  {
    const Eigen::MatrixXcd d =
        u.adjoint() * u - Eigen::MatrixXcd::Identity(dim_needed, dim_needed);
    if (d.cwiseAbs().maxCoeff() > 1e-10)
      throw std::invalid_argument("apply_gate: gate is not unitary");
  }
  const long n = s.amps.size();
  if (!two_site) {
    const long sa = ipow(q, s.L - 1 - a);
    Eigen::VectorXcd loc(q);
    for (long base = 0; base < n; ++base) {
      if ((base / sa) % q != 0) continue;
      for (int i = 0; i < q; ++i) loc(i) = s.amps(base + i * sa);
      for (int o = 0; o < q; ++o) {
        std::complex<double> acc = 0;
        for (int i = 0; i < q; ++i) acc += u(o, i) * loc(i);
        s.amps(base + o * sa) = acc;
      }
    }
    return;
  }
  const long sa = ipow(q, s.L - 1 - a);
  const long sb = ipow(q, s.L - 1 - b);
  Eigen::VectorXcd loc(q * q);
  for (long base = 0; base < n; ++base) {
    if ((base / sa) % q != 0 || (base / sb) % q != 0) continue;
    for (int ia = 0; ia < q; ++ia)
      for (int ib = 0; ib < q; ++ib)
        loc(ia * q + ib) = s.amps(base + ia * sa + ib * sb);
    for (int oa = 0; oa < q; ++oa) {
      for (int ob = 0; ob < q; ++ob) {
        std::complex<double> acc = 0;
        const int orow = oa * q + ob;
        for (int ic = 0; ic < q * q; ++ic) acc += u(orow, ic) * loc(ic);
        s.amps(base + oa * sa + ob * sb) = acc;
      }
    }
  }
}

SvMeasurement measure(PureState& s, int site, Pauli basis, RngStream& rng) {
  if (basis == Pauli::I)
    throw std::invalid_argument("measure: basis must be X, Y or Z");
  if (site < 0 || site >= s.L) throw std::invalid_argument("measure: bad site");
  if (s.q != 2)
    throw std::invalid_argument("measure: Pauli measurement needs qubits");
  const Eigen::Matrix2cd p = pauli_matrix(basis);
  const Eigen::Matrix2cd proj_plus = 0.5 * (Eigen::Matrix2cd::Identity() + p);
  const Eigen::Matrix2cd proj_minus = 0.5 * (Eigen::Matrix2cd::Identity() - p);
  const long sa = ipow(2, s.L - 1 - site);
  double p_plus = 0.0;
  for (long base = 0; base < s.amps.size(); ++base) {
    if ((base / sa) % 2 != 0) continue;
    Eigen::Vector2cd v(s.amps(base), s.amps(base + sa));
    p_plus += (proj_plus * v).squaredNorm();
  }
  const double p_minus = s.norm_sq() - p_plus;
  if (p_plus < 1e-12 && p_minus < 1e-12)
    throw degeneracy_error("measure: both outcome probabilities below 1e-12");
  const bool plus = rng.uniform() < p_plus / (p_plus + p_minus);
  const Eigen::Matrix2cd& proj = plus ? proj_plus : proj_minus;
  const double prob = plus ? p_plus : p_minus;
  const double inv = 1.0 / std::sqrt(prob);
  for (long base = 0; base < s.amps.size(); ++base) {
    if ((base / sa) % 2 != 0) continue;
    Eigen::Vector2cd v(s.amps(base), s.amps(base + sa));
    v = proj * v * inv;
    s.amps(base) = v(0);
    s.amps(base + sa) = v(1);
  }
  return {plus ? +1 : -1, prob};
}

TrajectoryRecord run_circuit(PureState& s, const Circuit& c, RngStream& rng,
                             int record_every) {
  if (c.L != s.L) throw std::invalid_argument("run_circuit: size mismatch");
  TrajectoryRecord rec;
  int unitary_layers = 0;
  for (const auto& layer : c.layers) {
    bool has_gates = false;
    for (const auto& e : layer.events) {
      if (const auto* g = std::get_if<GateEvent>(&e)) {
        const auto& sg = c.gates[static_cast<std::size_t>(g->gate_id)];
        apply_gate(s, sg.unitary.entries, g->a, g->b);
        has_gates = true;
      } else {
        const auto& m = std::get<MeasureEvent>(e);
        const SvMeasurement r = measure(s, m.site, m.basis, rng);
        rec.outcomes.push_back(r.outcome);
        rec.log_prob += std::log(r.probability);
      }
    }
    if (has_gates) ++unitary_layers;
    if (record_every > 0 && has_gates && unitary_layers % record_every == 0) {
      std::vector<int> half(static_cast<std::size_t>(s.L / 2));
      std::iota(half.begin(), half.end(), 0);
      rec.times.push_back(unitary_layers);
      rec.half_entropy.push_back(entropy(s, half, 1.0).value);
    }
  }
  return rec;
}

namespace {

Eigen::VectorXd schmidt_spectrum(const PureState& s,
                                 const std::vector<int>& region) {
  const int q = s.q;
  std::vector<bool> in_a(static_cast<std::size_t>(s.L), false);
  for (int r : region) in_a[static_cast<std::size_t>(r)] = true;
  std::vector<int> a_sites, b_sites;
  for (int i = 0; i < s.L; ++i)
    (in_a[static_cast<std::size_t>(i)] ? a_sites : b_sites).push_back(i);
  const long da = ipow(q, static_cast<int>(a_sites.size()));
  const long db = ipow(q, static_cast<int>(b_sites.size()));
  Eigen::MatrixXcd m(da, db);
  // strides of each site in the flat index
  std::vector<long> stride(static_cast<std::size_t>(s.L));
  for (int i = 0; i < s.L; ++i)
    stride[static_cast<std::size_t>(i)] = ipow(q, s.L - 1 - i);
  for (long ia = 0; ia < da; ++ia) {
    long base = 0;
    long rest = ia;
    for (int j = static_cast<int>(a_sites.size()) - 1; j >= 0; --j) {
      base += (rest % q) * stride[static_cast<std::size_t>(a_sites[static_cast<std::size_t>(j)])];
      rest /= q;
    }
    for (long ib = 0; ib < db; ++ib) {
      long idx = base;
      long rb = ib;
      for (int j = static_cast<int>(b_sites.size()) - 1; j >= 0; --j) {
        idx += (rb % q) * stride[static_cast<std::size_t>(b_sites[static_cast<std::size_t>(j)])];
        rb /= q;
      }
      m(ia, ib) = s.amps(idx);
    }
  }
  Eigen::MatrixXcd rho;
  if (da <= db) rho = m * m.adjoint();
  else rho = (m.adjoint() * m).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho);
  Eigen::VectorXd ev = es.eigenvalues().reverse();
  return ev;
}

}  // namespace

EntropyResult entropy(const PureState& s, std::vector<int> region, double n) {
  std::sort(region.begin(), region.end());
  region.erase(std::unique(region.begin(), region.end()), region.end());
  if (region.empty() || static_cast<int>(region.size()) >= s.L)
    throw std::invalid_argument("entropy: region must be a nonempty proper subset");
  for (int r : region)
    if (r < 0 || r >= s.L) throw std::invalid_argument("entropy: site out of range");
  if (n <= 0.0) throw std::invalid_argument("entropy: Renyi index must be positive");
  EntropyResult out;
  out.region = region;
  out.renyi_n = n;
  Eigen::VectorXd ev = schmidt_spectrum(s, region);
  // Clip tiny negative eigenvalues from Hermitian round-off.
  for (int i = 0; i < ev.size(); ++i) {
    if (ev(i) < 0) {
      if (ev(i) < -1e-12)
        throw std::logic_error("entropy: significantly negative Schmidt weight");
      ev(i) = 0.0;
    }
  }
  out.schmidt = ev;
  if (std::abs(n - 1.0) < 1e-12) {
    double acc = 0.0;
    for (int i = 0; i < ev.size(); ++i)
      if (ev(i) > 0) acc -= ev(i) * std::log(ev(i));
    out.value = acc;
  } else {
    double acc = 0.0;
    for (int i = 0; i < ev.size(); ++i)
      if (ev(i) > 0) acc += std::pow(ev(i), n);
    out.value = std::log(acc) / (1.0 - n);
  }
  if (out.value < 0 && out.value > -1e-9) out.value = 0.0;
  return out;
}

double mutual_information(const PureState& s, const std::vector<int>& A,
                          const std::vector<int>& B, double n) {
  for (int a : A)
    for (int b : B)
      if (a == b)
        throw std::invalid_argument("mutual_information: regions overlap");
  std::vector<int> ab = A;
  ab.insert(ab.end(), B.begin(), B.end());
  return entropy(s, A, n).value + entropy(s, B, n).value -
         entropy(s, ab, n).value;
}

double region_purity(const PureState& s, const std::vector<int>& region) {
  Eigen::VectorXd ev = schmidt_spectrum(s, region);
  double acc = 0.0;
  for (int i = 0; i < ev.size(); ++i) acc += ev(i) * ev(i);
  return acc;
}

double total_z(const PureState& s) {
  if (s.q != 2) throw std::invalid_argument("total_z: qubits only");
  double acc = 0.0;
  for (long idx = 0; idx < s.amps.size(); ++idx) {
    const double w = std::norm(s.amps(idx));
    if (w == 0.0) continue;
    int zsum = 0;
    for (int site = 0; site < s.L; ++site)
      zsum += (s.digit(idx, site) == 0) ? 1 : -1;
    acc += w * zsum;
  }
  return acc;
}

}  // namespace circuitlab
