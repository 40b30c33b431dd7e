#include "circuitlab/cutgraph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>

#include "circuitlab/analysis.hpp"

namespace circuitlab {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

CutGraph CutGraph::from_circuit(const Circuit& c) {
  CutGraph g;
  g.L = c.L;
  g.ln_q = std::log(static_cast<double>(c.q));
  g.bond_gates.assign(static_cast<std::size_t>(std::max(c.L - 1, 0)), {});
  g.site_meas.assign(static_cast<std::size_t>(c.L), {});
  double tmax = 0.0;
  for (std::size_t l = 0; l < c.layers.size(); ++l) {
    const auto& layer = c.layers[l];
    const double t = layer.time > 0 ? layer.time : static_cast<double>(l + 1);
    tmax = std::max(tmax, t);
    for (const auto& e : layer.events) {
      if (const auto* ge = std::get_if<GateEvent>(&e)) {
        if (ge->b < 0) continue;  // one-site gates do not block any gap
        const int bond = std::min(ge->a, ge->b);
        if (std::max(ge->a, ge->b) != bond + 1)
          throw std::invalid_argument(
              "CutGraph: only nearest-neighbour circuits have a bond lattice");
        g.bond_gates[static_cast<std::size_t>(bond)].push_back(t);
      } else {
        const auto& m = std::get<MeasureEvent>(e);
        g.site_meas[static_cast<std::size_t>(m.site)].push_back(t);
      }
    }
  }
  for (auto& v : g.bond_gates) std::sort(v.begin(), v.end());
  for (auto& v : g.site_meas) std::sort(v.begin(), v.end());
  g.t_top = tmax + 0.5;
  return g;
}

CutGraph CutGraph::poisson(int L, double duration, double rate, RngStream& rng,
                           double ln_q) {
  if (L < 2 || duration <= 0 || rate <= 0)
    throw std::invalid_argument("CutGraph::poisson: bad parameters");
  CutGraph g;
  g.L = L;
  g.ln_q = ln_q;
  g.t_top = duration;
  g.bond_gates.assign(static_cast<std::size_t>(L - 1), {});
  g.site_meas.assign(static_cast<std::size_t>(L), {});
  for (int b = 0; b < L - 1; ++b) {
    double t = 0.0;
    auto& v = g.bond_gates[static_cast<std::size_t>(b)];
    while (true) {
      t += rng.exponential(rate);
      if (t >= duration) break;
      v.push_back(t);
    }
  }
  return g;
}

namespace {

bool any_meas_in(const CutGraph& g, int s, double lo, double hi) {
  const auto& v = g.site_meas[static_cast<std::size_t>(s)];
  auto it = std::lower_bound(v.begin(), v.end(), lo);
  return it != v.end() && *it <= hi;
}

// Segment boundaries of site s around time t. Gates on bonds s-1 and s
// delimit the worldline of site s. "above": segment containing t+epsilon;
// "below": segment containing t-epsilon.
std::pair<double, double> site_segment(const CutGraph& g, int s, double t,
                                       bool above) {
  double lo = 0.0, hi = g.t_top;
  for (int b : {s - 1, s}) {
    if (b < 0 || b >= static_cast<int>(g.bond_gates.size())) continue;
    const auto& v = g.bond_gates[static_cast<std::size_t>(b)];
    if (above) {
      auto it = std::upper_bound(v.begin(), v.end(), t);
      if (it != v.begin()) lo = std::max(lo, *std::prev(it));
      if (it != v.end()) hi = std::min(hi, *it);
    } else {
      auto it = std::lower_bound(v.begin(), v.end(), t);
      if (it != v.begin()) lo = std::max(lo, *std::prev(it));
      if (it != v.end()) hi = std::min(hi, *it);
    }
  }
  return {lo, hi};
}

}  // namespace

double CutGraph::leg_cost_above(int s, double t) const {
  const auto [lo, hi] = site_segment(*this, s, t, true);
  return any_meas_in(*this, s, lo, hi) ? 0.0 : ln_q;
}

double CutGraph::leg_cost_below(int s, double t) const {
  const auto [lo, hi] = site_segment(*this, s, t, false);
  return any_meas_in(*this, s, lo, hi) ? 0.0 : ln_q;
}

namespace {

// Face decomposition: per gap, the time windows between consecutive gates on
// the blocking bond. Face ids are offset[g] + window index.
struct FaceGraph {
  const CutGraph* g = nullptr;
  std::vector<std::vector<double>> cuts;  // per gap, interior boundaries
  std::vector<int> offset;
  int n_faces = 0;

  explicit FaceGraph(const CutGraph& cg) : g(&cg) {
    const int L = cg.L;
    cuts.resize(static_cast<std::size_t>(L + 1));
    for (int gap = 1; gap <= L - 1; ++gap)
      cuts[static_cast<std::size_t>(gap)] =
          cg.bond_gates[static_cast<std::size_t>(gap - 1)];
    offset.assign(static_cast<std::size_t>(L + 2), 0);
    for (int gap = 0; gap <= L; ++gap) {
      offset[static_cast<std::size_t>(gap + 1)] =
          offset[static_cast<std::size_t>(gap)] +
          static_cast<int>(cuts[static_cast<std::size_t>(gap)].size()) + 1;
    }
    n_faces = offset[static_cast<std::size_t>(L + 1)];
  }

  int face_count(int gap) const {
    return static_cast<int>(cuts[static_cast<std::size_t>(gap)].size()) + 1;
  }
  std::pair<double, double> window(int gap, int idx) const {
    const auto& v = cuts[static_cast<std::size_t>(gap)];
    const double lo = idx == 0 ? 0.0 : v[static_cast<std::size_t>(idx - 1)];
    const double hi = idx == static_cast<int>(v.size())
                          ? g->t_top
                          : v[static_cast<std::size_t>(idx)];
    return {lo, hi};
  }
  int face_at(int gap, double t) const {
    const auto& v = cuts[static_cast<std::size_t>(gap)];
    const int idx = static_cast<int>(
        std::upper_bound(v.begin(), v.end(), t) - v.begin());
    return offset[static_cast<std::size_t>(gap)] + idx;
  }
  int gap_of(int face) const {
    int gap = 0;
    while (offset[static_cast<std::size_t>(gap + 1)] <= face) ++gap;
    return gap;
  }

  // Edges from face (gap, idx) to neighbouring gaps' overlapping faces.
  template <typename F>
  void for_each_edge(int face, F&& fn) const {
    const int gap = gap_of(face);
    const int idx = face - offset[static_cast<std::size_t>(gap)];
    const auto [lo, hi] = window(gap, idx);
    for (int dir = -1; dir <= 1; dir += 2) {
      const int ngap = gap + dir;
      if (ngap < 0 || ngap > g->L) continue;
      const int site = dir > 0 ? gap : gap - 1;  // worldline crossed
      if (site < 0 || site >= g->L) continue;
      const auto& v = cuts[static_cast<std::size_t>(ngap)];
      int j0 = static_cast<int>(std::upper_bound(v.begin(), v.end(), lo) -
                                v.begin());
      for (int j = j0; j < face_count(ngap); ++j) {
        const auto [nlo, nhi] = window(ngap, j);
        if (nlo >= hi) break;
        const double olo = std::max(lo, nlo), ohi = std::min(hi, nhi);
        if (ohi <= olo) continue;
        const double w = any_meas_in(*g, site, olo, ohi) ? 0.0 : g->ln_q;
        fn(offset[static_cast<std::size_t>(ngap)] + j, w);
      }
    }
  }
};

CutResult dijkstra_cut(const CutGraph& cg, int gap_top,
                       std::optional<int> target_gap_top) {
  const FaceGraph fg(cg);
  std::vector<double> dist(static_cast<std::size_t>(fg.n_faces), kInf);
  std::vector<int> prev(static_cast<std::size_t>(fg.n_faces), -1);
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  const int src = fg.face_at(gap_top, cg.t_top - 1e-12);
  dist[static_cast<std::size_t>(src)] = 0.0;
  pq.push({0.0, src});
  while (!pq.empty()) {
    const auto [d, f] = pq.top();
    pq.pop();
    if (d > dist[static_cast<std::size_t>(f)]) continue;
    fg.for_each_edge(f, [&](int nf, double w) {
      if (d + w < dist[static_cast<std::size_t>(nf)]) {
        dist[static_cast<std::size_t>(nf)] = d + w;
        prev[static_cast<std::size_t>(nf)] = f;
        pq.push({d + w, nf});
      }
    });
  }
  CutResult out;
  int best_face = -1;
  double best = kInf;
  if (target_gap_top) {
    const int tf = fg.face_at(*target_gap_top, cg.t_top - 1e-12);
    best = dist[static_cast<std::size_t>(tf)];
    best_face = tf;
  } else {
    // Any face touching the initial-time boundary is a free exit (product
    // initial state); so are the outer gaps, which contain t = 0 anyway.
    for (int gap = 0; gap <= cg.L; ++gap) {
      const int f = fg.face_at(gap, 0.0);
      if (dist[static_cast<std::size_t>(f)] < best) {
        best = dist[static_cast<std::size_t>(f)];
        best_face = f;
      }
    }
  }
  out.cost_nats = best;
  if (best_face >= 0 && best < kInf) {
    for (int f = best_face; f != -1; f = prev[static_cast<std::size_t>(f)]) {
      const int gap = fg.gap_of(f);
      const int idx = f - fg.offset[static_cast<std::size_t>(gap)];
      const auto [lo, hi] = fg.window(gap, idx);
      out.path.emplace_back(0.5 * (lo + hi), gap);
    }
    std::reverse(out.path.begin(), out.path.end());
    out.bottom_gap = fg.gap_of(best_face);
  }
  return out;
}

}  // namespace

CutResult min_cut(const CutGraph& g, int gap_top) {
  if (gap_top < 0 || gap_top > g.L)
    throw std::invalid_argument("min_cut: gap out of range");
  return dijkstra_cut(g, gap_top, std::nullopt);
}

CutResult min_cut_region(const CutGraph& g, int gap_left, int gap_right) {
  if (gap_left < 0 || gap_right > g.L || gap_left >= gap_right)
    throw std::invalid_argument("min_cut_region: bad gaps");
  const CutResult a = dijkstra_cut(g, gap_left, std::nullopt);
  const CutResult b = dijkstra_cut(g, gap_right, std::nullopt);
  const CutResult arc = dijkstra_cut(g, gap_left, gap_right);
  if (a.cost_nats + b.cost_nats <= arc.cost_nats) {
    CutResult out = a;
    out.cost_nats += b.cost_nats;
    out.path.insert(out.path.end(), b.path.begin(), b.path.end());
    return out;
  }
  return arc;
}

CutResult min_cut_directed(const CutGraph& g, int gap_top,
                           std::optional<int> bottom_gap) {
  if (gap_top < 0 || gap_top > g.L)
    throw std::invalid_argument("min_cut_directed: gap out of range");
  struct Ev {
    double t;
    int bond;
  };
  std::vector<Ev> events;
  std::size_t total = 0;
  for (const auto& v : g.bond_gates) total += v.size();
  events.reserve(total);
  for (int b = 0; b < g.L - 1; ++b)
    for (double t : g.bond_gates[static_cast<std::size_t>(b)])
      events.push_back({t, b});
  std::sort(events.begin(), events.end(), [](const Ev& a, const Ev& b) {
    if (a.t != b.t) return a.t > b.t;  // downward in time
    return a.bond > b.bond;
  });
  std::vector<double> cost(static_cast<std::size_t>(g.L + 1), kInf);
  cost[static_cast<std::size_t>(gap_top)] = 0.0;
  for (const Ev& ev : events) {
    const int gp = ev.bond + 1;  // blocked gap
    const double c = cost[static_cast<std::size_t>(gp)];
    if (c < kInf) {
      // escape just above the gate
      const double wl = g.leg_cost_above(gp - 1, ev.t);
      const double wr = g.leg_cost_above(gp, ev.t);
      if (c + wl < cost[static_cast<std::size_t>(gp - 1)])
        cost[static_cast<std::size_t>(gp - 1)] = c + wl;
      if (c + wr < cost[static_cast<std::size_t>(gp + 1)])
        cost[static_cast<std::size_t>(gp + 1)] = c + wr;
    }
    // re-entry just below the gate
    const double from_left =
        cost[static_cast<std::size_t>(gp - 1)] + g.leg_cost_below(gp - 1, ev.t);
    const double from_right =
        cost[static_cast<std::size_t>(gp + 1)] + g.leg_cost_below(gp, ev.t);
    cost[static_cast<std::size_t>(gp)] =
        std::min({from_left, from_right, kInf});
  }
  CutResult out;
  if (bottom_gap) {
    double best = kInf;
    for (int gp = 0; gp <= g.L; ++gp) {
      double c = cost[static_cast<std::size_t>(gp)];
      if (c == kInf) continue;
      const int lo = std::min(gp, *bottom_gap), hi = std::max(gp, *bottom_gap);
      for (int s = lo; s < hi; ++s) c += g.leg_cost_above(s, 0.0);
      best = std::min(best, c);
    }
    out.cost_nats = best;
    out.bottom_gap = *bottom_gap;
  } else {
    double best = kInf;
    int arg = -1;
    for (int gp = 0; gp <= g.L; ++gp) {
      if (cost[static_cast<std::size_t>(gp)] < best) {
        best = cost[static_cast<std::size_t>(gp)];
        arg = gp;
      }
    }
    out.cost_nats = best;
    out.bottom_gap = arg;
  }
  return out;
}

TensionEstimate line_tension_estimate(double rate, double v,
                                      const std::vector<int>& t_ladder,
                                      int samples, std::uint64_t seed) {
  if (t_ladder.empty() || samples < 2)
    throw std::invalid_argument("line_tension_estimate: need sizes and samples");
  // Fit mean cost(t) = E t + b t^{1/3} by weighted least squares.
  std::vector<double> ts, means, errs;
  for (std::size_t i = 0; i < t_ladder.size(); ++i) {
    const int t = t_ladder[i];
    const int margin = static_cast<int>(6.0 * std::pow(t, 2.0 / 3.0)) + 16;
    const int L = static_cast<int>(std::ceil(std::abs(v) * t)) + 2 * margin;
    const int top = margin + (v < 0 ? static_cast<int>(std::ceil(-v * t)) : 0);
    const int bot = top + static_cast<int>(std::lround(v * t));
    RunningStat stat;
    for (int s = 0; s < samples; ++s) {
      RngStream rng(seed, static_cast<std::uint64_t>(s),
                    fnv1a64("line-tension") ^ (static_cast<std::uint64_t>(t) << 20) ^
                        static_cast<std::uint64_t>(std::llround((v + 2.0) * 1e6)));
      const CutGraph g = CutGraph::poisson(L, t, rate, rng, 1.0);
      const CutResult r = min_cut_directed(g, top, bot);
      stat.add(r.cost_nats);  // ln_q = 1: cost in crossings
    }
    ts.push_back(t);
    means.push_back(stat.mean());
    errs.push_back(std::max(stat.sem(), 1e-9));
  }
  // WLS for y = E t + b t^{1/3}.
  double s11 = 0, s12 = 0, s22 = 0, sy1 = 0, sy2 = 0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const double w = 1.0 / (errs[i] * errs[i]);
    const double f1 = ts[i], f2 = std::cbrt(ts[i]);
    s11 += w * f1 * f1;
    s12 += w * f1 * f2;
    s22 += w * f2 * f2;
    sy1 += w * means[i] * f1;
    sy2 += w * means[i] * f2;
  }
  const double det = s11 * s22 - s12 * s12;
  TensionEstimate est;
  est.v = v;
  if (ts.size() == 1 || std::abs(det) < 1e-30) {
    est.value = means[0] / ts[0];
    est.error = errs[0] / ts[0];
    return est;
  }
  est.value = (sy1 * s22 - sy2 * s12) / det;
  est.error = std::sqrt(s22 / det);
  return est;
}

KpzEstimate kpz_exponents(double rate, const std::vector<int>& sizes,
                          int samples, std::uint64_t seed) {
  if (sizes.size() < 2 || samples < 8)
    throw std::invalid_argument("kpz_exponents: need >= 2 sizes, >= 8 samples");
  KpzEstimate out;
  out.sizes = sizes;
  for (int t : sizes) {
    const int margin = static_cast<int>(8.0 * std::pow(t, 2.0 / 3.0)) + 16;
    const int L = 2 * margin;
    const int top = margin;
    RunningStat cost_stat;
    double wander2 = 0.0;
    for (int s = 0; s < samples; ++s) {
      RngStream rng(seed, static_cast<std::uint64_t>(s),
                    fnv1a64("kpz") ^ (static_cast<std::uint64_t>(t) << 20));
      const CutGraph g = CutGraph::poisson(L, t, rate, rng, 1.0);
      // fixed-endpoint cost for beta
      const CutResult fixed = min_cut_directed(g, top, top);
      cost_stat.add(fixed.cost_nats);
      // free endpoint for zeta
      const CutResult free_end = min_cut_directed(g, top, std::nullopt);
      const double dx = free_end.bottom_gap - top;
      wander2 += dx * dx;
    }
    out.cost_sd.push_back(cost_stat.sd());
    out.wander_rms.push_back(std::sqrt(wander2 / samples));
  }
  std::vector<double> xs(sizes.begin(), sizes.end());
  const PowerlawFit fb = powerlaw_fit(xs, out.cost_sd, {});
  const PowerlawFit fz = powerlaw_fit(xs, out.wander_rms, {});
  out.beta = fb.exponent;
  out.beta_err = fb.exponent_err;
  out.zeta = fz.exponent;
  out.zeta_err = fz.exponent_err;
  return out;
}

}  // namespace circuitlab
