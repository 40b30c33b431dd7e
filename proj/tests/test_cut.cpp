#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>
#include <vector>

#include "circuitlab/cutgraph.hpp"
#include "circuitlab/membrane.hpp"

using namespace circuitlab;

namespace {

const double kLn2 = std::log(2.0);

// Independent oracle: max-flow (Edmonds-Karp) on the primal tensor network.
// Nodes: one per gate, one leaf per initial product tensor, plus source and
// sink. Edges are worldline segments with unit capacity (zero when a
// measurement sits on them). Top segments attach to the source when the site
// is inside the region, else to the sink. Min cut = max flow by duality.
struct MaxFlowOracle {
  struct Edge {
    int to;
    double cap;
    std::size_t rev;
  };
  std::vector<std::vector<Edge>> adj;

  int add_node() {
    adj.emplace_back();
    return static_cast<int>(adj.size()) - 1;
  }
  void add_edge(int a, int b, double cap) {
    adj[static_cast<std::size_t>(a)].push_back({b, cap, adj[static_cast<std::size_t>(b)].size()});
    adj[static_cast<std::size_t>(b)].push_back({a, cap, adj[static_cast<std::size_t>(a)].size() - 1});
  }
  double max_flow(int s, int t) {
    double flow = 0;
    while (true) {
      std::vector<int> prev_node(adj.size(), -1);
      std::vector<std::size_t> prev_edge(adj.size());
      std::queue<int> q;
      q.push(s);
      prev_node[static_cast<std::size_t>(s)] = s;
      while (!q.empty() && prev_node[static_cast<std::size_t>(t)] < 0) {
        const int u = q.front();
        q.pop();
        for (std::size_t i = 0; i < adj[static_cast<std::size_t>(u)].size(); ++i) {
          const Edge& e = adj[static_cast<std::size_t>(u)][i];
          if (e.cap > 1e-12 && prev_node[static_cast<std::size_t>(e.to)] < 0) {
            prev_node[static_cast<std::size_t>(e.to)] = u;
            prev_edge[static_cast<std::size_t>(e.to)] = i;
            q.push(e.to);
          }
        }
      }
      if (prev_node[static_cast<std::size_t>(t)] < 0) break;
      double aug = 1e300;
      for (int v = t; v != s; v = prev_node[static_cast<std::size_t>(v)]) {
        const Edge& e = adj[static_cast<std::size_t>(prev_node[static_cast<std::size_t>(v)])]
                            [prev_edge[static_cast<std::size_t>(v)]];
        aug = std::min(aug, e.cap);
      }
      for (int v = t; v != s; v = prev_node[static_cast<std::size_t>(v)]) {
        Edge& e = adj[static_cast<std::size_t>(prev_node[static_cast<std::size_t>(v)])]
                      [prev_edge[static_cast<std::size_t>(v)]];
        e.cap -= aug;
        adj[static_cast<std::size_t>(e.to)][e.rev].cap += aug;
      }
      flow += aug;
    }
    return flow;
  }
};

// Min cut of a half-line region [0, gap_top) on the final boundary, in ln q
// units, by max-flow on the primal graph.
double maxflow_min_cut(const CutGraph& g, int gap_top) {
  MaxFlowOracle mf;
  const int source = mf.add_node();
  const int sink = mf.add_node();
  // gate nodes per bond event
  std::map<std::pair<int, int>, int> gate_node;  // (bond, idx)
  for (int b = 0; b < g.L - 1; ++b)
    for (std::size_t i = 0; i < g.bond_gates[static_cast<std::size_t>(b)].size(); ++i)
      gate_node[{b, static_cast<int>(i)}] = mf.add_node();
  // site worldline segments: delimited by gates on the touching bonds
  for (int s = 0; s < g.L; ++s) {
    // gather delimiters: (time, node) sorted
    std::vector<std::pair<double, int>> dl;
    for (int b : {s - 1, s}) {
      if (b < 0 || b >= g.L - 1) continue;
      for (std::size_t i = 0; i < g.bond_gates[static_cast<std::size_t>(b)].size(); ++i)
        dl.push_back({g.bond_gates[static_cast<std::size_t>(b)][i],
                      gate_node[{b, static_cast<int>(i)}]});
    }
    std::sort(dl.begin(), dl.end());
    // segment endpoints: initial product tensor (leaf) -> gates -> top
    int prev = mf.add_node();
    double prev_t = 0.0;
    for (const auto& [t, node] : dl) {
      const bool measured = [&] {
        const auto& mv = g.site_meas[static_cast<std::size_t>(s)];
        auto it = std::lower_bound(mv.begin(), mv.end(), prev_t);
        return it != mv.end() && *it <= t;
      }();
      mf.add_edge(prev, node, measured ? 0.0 : 1.0);
      prev = node;
      prev_t = t;
    }
    // top segment
    const bool measured_top = [&] {
      const auto& mv = g.site_meas[static_cast<std::size_t>(s)];
      auto it = std::lower_bound(mv.begin(), mv.end(), prev_t);
      return it != mv.end();
    }();
    const int top_attach = s < gap_top ? source : sink;
    mf.add_edge(prev, top_attach, measured_top ? 0.0 : 1.0);
  }
  return mf.max_flow(source, sink);
}

}  // namespace

TEST_SUITE_BEGIN("cut");

TEST_CASE("intact brickwork: half cut costs one bond per layer") {
  for (int depth : {2, 4, 6}) {
    RngStream rng(91, static_cast<std::uint64_t>(depth), "bw");
    const Circuit c = build_brickwork(2 * depth + 8, depth, Boundary::open,
                                      GateSpec::fixed_gate(gate_cz()), rng);
    const CutGraph g = CutGraph::from_circuit(c);
    const CutResult r = min_cut(g, c.L / 2);
    CHECK(r.cost_nats == doctest::Approx(depth * kLn2).epsilon(1e-9));
    const CutResult rd = min_cut_directed(g, c.L / 2, std::nullopt);
    CHECK(rd.cost_nats == doctest::Approx(depth * kLn2).epsilon(1e-9));
  }
}

TEST_CASE("all bonds measured: zero cost") {
  RngStream rng(92, 0, "bw");
  Circuit c = build_brickwork(8, 4, Boundary::open, GateSpec::fixed_gate(gate_cz()), rng);
  c = place_measurements(c, 1.0, rng);
  const CutGraph g = CutGraph::from_circuit(c);
  CHECK(min_cut(g, 4).cost_nats == doctest::Approx(0.0));
}

TEST_CASE("finite region saturates at ell ln q") {
  RngStream rng(93, 0, "bw");
  const int ell = 4, depth = 12;  // t > ell / (2 v_E)
  const Circuit c = build_brickwork(2 * depth + ell + 8, depth, Boundary::open,
                                    GateSpec::fixed_gate(gate_cz()), rng);
  const CutGraph g = CutGraph::from_circuit(c);
  const int left = c.L / 2 - ell / 2;
  const CutResult r = min_cut_region(g, left, left + ell);
  CHECK(r.cost_nats == doctest::Approx(ell * kLn2).epsilon(1e-9));
  // early times: two vertical cuts, cost 2 t ln q
  const Circuit c2 = build_brickwork(24, 1, Boundary::open,
                                     GateSpec::fixed_gate(gate_cz()), rng);
  const CutGraph g2 = CutGraph::from_circuit(c2);
  const CutResult r2 = min_cut_region(g2, 8, 8 + ell);
  CHECK(r2.cost_nats == doctest::Approx(2 * kLn2).epsilon(1e-9));
}

TEST_CASE("dijkstra agrees with the max-flow oracle on random measured circuits") {
  for (int trial = 0; trial < 12; ++trial) {
    RngStream rng(94, static_cast<std::uint64_t>(trial), "mc");
    const int L = 6 + static_cast<int>(rng.uniform_index(3)) * 2;
    const int depth = 2 + static_cast<int>(rng.uniform_index(4));
    Circuit c = build_brickwork(L, depth, Boundary::open,
                                GateSpec::fixed_gate(gate_cz()), rng);
    c = place_measurements(c, 0.25, rng);
    const CutGraph g = CutGraph::from_circuit(c);
    for (int gap = 1; gap < L; gap += 2) {
      const double dj = min_cut(g, gap).cost_nats / kLn2;
      const double mfv = maxflow_min_cut(g, gap);
      CHECK(dj == doctest::Approx(mfv).epsilon(1e-9));
    }
  }
}

TEST_CASE("directed and undirected cuts agree on unitary Poisson circuits") {
  for (int trial = 0; trial < 8; ++trial) {
    RngStream rng(95, static_cast<std::uint64_t>(trial), "poisson");
    const CutGraph g = CutGraph::poisson(14, 10.0, 1.0, rng, kLn2);
    const double und = min_cut(g, 7).cost_nats;
    const double dir = min_cut_directed(g, 7, std::nullopt).cost_nats;
    CHECK(dir == doctest::Approx(und).epsilon(1e-9));
  }
}

TEST_CASE("cut cost is monotone under additional measurements") {
  RngStream rng(96, 0, "mono");
  Circuit base = build_brickwork(10, 6, Boundary::open,
                                 GateSpec::fixed_gate(gate_cz()), rng);
  double prev = 1e300;
  for (double p : {0.0, 0.15, 0.3, 0.6, 1.0}) {
    RngStream mr(97, 0, "meas");  // nested placements share the same draws
    const Circuit c = place_measurements(base, p, mr);
    const double cost = min_cut(CutGraph::from_circuit(c), 5).cost_nats;
    CHECK(cost <= prev + 1e-12);
    prev = cost;
  }
}

TEST_CASE("poisson line tension is near one half at v=0, one at |v|=1") {
  const TensionEstimate e0 =
      line_tension_estimate(1.0, 0.0, {32, 64, 128}, 40, 98);
  CHECK(std::abs(e0.value - 0.5) < 0.06);
  const TensionEstimate e1 =
      line_tension_estimate(1.0, 1.0, {32, 64, 128}, 40, 99);
  CHECK(std::abs(e1.value - 1.0) < 0.08);
}

TEST_CASE("membrane: growth rate s_eq v_E and the degenerate cone") {
  const MembraneModel m = MembraneModel::random_circuit();
  CHECK(m.v_entanglement() == doctest::Approx(0.5));
  CHECK(m.v_butterfly() == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(m.is_convex());
  const auto zero = [](double) { return 0.0; };
  for (double t : {2.0, 4.0, 8.0}) {
    const double s = membrane_entropy(m, zero, 0.0, t);
    CHECK(std::abs(s - m.s_eq * 0.5 * t) < 0.01 * m.s_eq * t + 1e-9);
  }
  // E(v) = |v|: transport along the light cone is free of time cost
  MembraneModel cone;
  cone.s_eq = 1.0;
  cone.tension = [](double v) { return std::abs(v); };
  const auto step = [](double x) { return x < 0 ? 0.0 : 3.0; };
  // S(y,t) = min_x0 (|y - x0| + S0(x0)): for y=2, t large enough to reach
  // x0 < 0, the minimum is min(3, 2) = 2.
  const double v = membrane_entropy(cone, step, 2.0, 8.0);
  CHECK(v == doctest::Approx(2.0).epsilon(0.02));

  MembraneModel bad;
  bad.tension = [](double v) { return -v * v; };
  CHECK_THROWS_AS(membrane_entropy(bad, zero, 0.0, 1.0), std::invalid_argument);
}

TEST_CASE("membrane finite region crossover at t* = ell / (2 v_E)") {
  const MembraneModel m = MembraneModel::random_circuit();
  const double ell = 8.0;
  // before t*: growing branch 2 s_eq v_E t; after: s_eq ell
  const double early = membrane_entropy_region(m, ell, 2.0);
  CHECK(std::abs(early - m.s_eq * 2 * 0.5 * 2.0) < 0.05 * m.s_eq * 2);
  const double late = membrane_entropy_region(m, ell, 20.0);
  CHECK(late == doctest::Approx(m.s_eq * ell));
}

TEST_SUITE_END();
