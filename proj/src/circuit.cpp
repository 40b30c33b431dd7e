#include "circuitlab/circuit.hpp"

#include <algorithm>
#include <nlohmann/json.hpp>
#include <set>
#include <stdexcept>

namespace circuitlab {

using json = nlohmann::ordered_json;

long Circuit::gate_count() const {
  long n = 0;
  for (const auto& layer : layers)
    for (const auto& e : layer.events) n += std::holds_alternative<GateEvent>(e);
  return n;
}

long Circuit::measurement_count() const {
  long n = 0;
  for (const auto& layer : layers)
    for (const auto& e : layer.events)
      n += std::holds_alternative<MeasureEvent>(e);
  return n;
}

void Circuit::check_layers_disjoint() const {
  for (const auto& layer : layers) {
    std::set<int> seen;
    for (const auto& e : layer.events) {
      std::vector<int> sites;
      if (const auto* g = std::get_if<GateEvent>(&e)) {
        sites.push_back(g->a);
        if (g->b >= 0) sites.push_back(g->b);
      } else {
        sites.push_back(std::get<MeasureEvent>(e).site);
      }
      for (int s : sites) {
        if (s < 0 || s >= L) throw std::logic_error("event site out of range");
        if (!seen.insert(s).second)
          throw std::logic_error("layer touches a site twice");
      }
    }
  }
}

GateSpec GateSpec::haar(int q) {
  GateSpec s;
  s.kind = GateKind::haar;
  s.q = q;
  return s;
}
GateSpec GateSpec::clifford() {
  GateSpec s;
  s.kind = GateKind::clifford;
  return s;
}
GateSpec GateSpec::u1() {
  GateSpec s;
  s.kind = GateKind::u1_block;
  return s;
}
GateSpec GateSpec::dual_unitary(double J, bool dress) {
  GateSpec s;
  s.kind = GateKind::dual_unitary;
  s.dual_J = J;
  s.dual_dress = dress;
  return s;
}
GateSpec GateSpec::fixed_gate(const Eigen::MatrixXcd& u) {
  GateSpec s;
  s.kind = GateKind::fixed;
  s.fixed = u;
  try {
    s.fixed_clifford = CliffordGate::from_dense(u);
  } catch (const std::invalid_argument&) {
    // not Clifford; statevector engine only
  }
  return s;
}

namespace {

StoredGate sample_gate(const GateSpec& spec, RngStream& rng) {
  StoredGate g;
  switch (spec.kind) {
    case GateKind::haar:
      g.unitary = sample_haar_gate(spec.q, rng);
      break;
    case GateKind::clifford: {
      CliffordGate c = sample_clifford2(rng);
      g.unitary = UnitaryGate{4, c.dense(), GateKind::clifford};
      g.clifford = std::move(c);
      break;
    }
    case GateKind::u1_block:
      g.unitary = sample_u1_gate(rng);
      break;
    case GateKind::dual_unitary:
      if (spec.dual_dress) {
        g.unitary = make_dual_unitary(spec.dual_J, rng);
      } else {
        std::array<Eigen::Matrix2cd, 4> id;
        id.fill(Eigen::Matrix2cd::Identity());
        g.unitary = make_dual_unitary(spec.dual_J, id);
      }
      break;
    case GateKind::fixed:
      if (!spec.fixed) throw std::invalid_argument("fixed gate spec has no matrix");
      g.unitary = UnitaryGate{static_cast<int>(spec.fixed->rows()), *spec.fixed,
                              GateKind::fixed};
      g.clifford = spec.fixed_clifford;
      break;
  }
  return g;
}

}  // namespace

Circuit build_brickwork(int L, int depth, Boundary boundary,
                        const GateSpec& spec, RngStream& rng) {
  if (L < 2) throw std::invalid_argument("build_brickwork: L must be >= 2");
  if (depth < 1) throw std::invalid_argument("build_brickwork: depth must be >= 1");
  if (boundary == Boundary::periodic && L % 2 != 0)
    throw std::invalid_argument("build_brickwork: periodic boundary needs even L");
  Circuit c;
  c.L = L;
  c.q = spec.q;
  c.boundary = boundary;
  c.geometry = Geometry::brickwork;
  for (int tau = 1; tau <= depth; ++tau) {
    Layer layer;
    layer.time = tau;
    // 1-based bond x joins sites (x, x+1); odd layers take odd x. In 0-based
    // site indices that is pairs starting at even sites for odd tau.
    const int start = (tau % 2 == 1) ? 0 : 1;
    for (int a = start; a + 1 < L; a += 2) {
      GateEvent e;
      e.a = a;
      e.b = a + 1;
      e.gate_id = static_cast<int>(c.gates.size());
      c.gates.push_back(sample_gate(spec, rng));
      layer.events.push_back(e);
    }
    if (boundary == Boundary::periodic && start == 1 && L >= 2) {
      GateEvent e;  // wrap bond (L-1, 0)
      e.a = L - 1;
      e.b = 0;
      e.gate_id = static_cast<int>(c.gates.size());
      c.gates.push_back(sample_gate(spec, rng));
      layer.events.push_back(e);
    }
    c.layers.push_back(std::move(layer));
  }
  return c;
}

Circuit build_poisson_circuit(int L, double duration, double rate,
                              RngStream& rng, const GateSpec& spec) {
  if (L < 2) throw std::invalid_argument("build_poisson_circuit: L must be >= 2");
  if (rate <= 0.0)
    throw std::invalid_argument("build_poisson_circuit: rate must be > 0");
  if (duration <= 0.0)
    throw std::invalid_argument("build_poisson_circuit: duration must be > 0");
  struct Ev {
    double t;
    int bond;
  };
  std::vector<Ev> events;
  for (int b = 0; b < L - 1; ++b) {
    double t = 0.0;
    while (true) {
      t += rng.exponential(rate);
      if (t >= duration) break;
      events.push_back({t, b});
    }
  }
  std::sort(events.begin(), events.end(), [](const Ev& a, const Ev& b) {
    if (a.t != b.t) return a.t < b.t;
    return a.bond < b.bond;
  });
  Circuit c;
  c.L = L;
  c.q = spec.q;
  c.boundary = Boundary::open;
  c.geometry = Geometry::poisson;
  // Greedy micro-layer packing preserving time order: an event goes into the
  // first layer after every earlier event touching one of its sites.
  std::vector<int> next_free(static_cast<std::size_t>(L), 0);
  for (const Ev& ev : events) {
    const int a = ev.bond, b = ev.bond + 1;
    const int slot = std::max(next_free[static_cast<std::size_t>(a)],
                              next_free[static_cast<std::size_t>(b)]);
    while (c.depth() <= slot) c.layers.push_back(Layer{});
    GateEvent e;
    e.a = a;
    e.b = b;
    e.gate_id = static_cast<int>(c.gates.size());
    c.gates.push_back(sample_gate(spec, rng));
    auto& layer = c.layers[static_cast<std::size_t>(slot)];
    layer.events.push_back(e);
    layer.time = std::max(layer.time, ev.t);
    next_free[static_cast<std::size_t>(a)] = slot + 1;
    next_free[static_cast<std::size_t>(b)] = slot + 1;
  }
  return c;
}

Circuit place_measurements(const Circuit& in, double p, RngStream& rng,
                           Pauli basis) {
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument("place_measurements: p must be in [0, 1]");
  Circuit c = in;
  if (p == 0.0) return c;
  std::vector<Layer> out;
  out.reserve(c.layers.size() * 2);
  for (const auto& layer : c.layers) {
    out.push_back(layer);
    Layer meas;
    meas.time = layer.time + 0.5;
    for (int s = 0; s < c.L; ++s) {
      if (rng.bernoulli(p)) meas.events.push_back(MeasureEvent{s, basis});
    }
    if (!meas.events.empty()) out.push_back(std::move(meas));
  }
  c.layers = std::move(out);
  return c;
}

namespace {

json matrix_to_json(const Eigen::MatrixXcd& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols(); ++j)
      row.push_back(json::array({m(i, j).real(), m(i, j).imag()}));
    rows.push_back(std::move(row));
  }
  return rows;
}

Eigen::MatrixXcd matrix_from_json(const json& rows) {
  const int n = static_cast<int>(rows.size());
  const int mcols = n > 0 ? static_cast<int>(rows[0].size()) : 0;
  Eigen::MatrixXcd m(n, mcols);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < mcols; ++j)
      m(i, j) = std::complex<double>(rows[i][j][0].get<double>(),
                                     rows[i][j][1].get<double>());
  return m;
}

}  // namespace

std::string circuit_to_json(const Circuit& c) {
  json j;
  j["L"] = c.L;
  j["q"] = c.q;
  j["boundary"] = c.boundary == Boundary::open ? "open" : "periodic";
  switch (c.geometry) {
    case Geometry::brickwork: j["geometry"] = "brickwork"; break;
    case Geometry::poisson: j["geometry"] = "poisson"; break;
    case Geometry::all_to_all: j["geometry"] = "all-to-all"; break;
  }
  json layers = json::array();
  for (const auto& layer : c.layers) {
    json jl;
    jl["time"] = layer.time;
    json evs = json::array();
    for (const auto& e : layer.events) {
      json je;
      if (const auto* g = std::get_if<GateEvent>(&e)) {
        je["type"] = "gate";
        je["sites"] = g->b >= 0 ? json::array({g->a, g->b}) : json::array({g->a});
        const auto& sg = c.gates[static_cast<std::size_t>(g->gate_id)];
        je["gate_kind"] = gate_kind_name(sg.unitary.label);
        je["matrix"] = matrix_to_json(sg.unitary.entries);
      } else {
        const auto& m = std::get<MeasureEvent>(e);
        je["type"] = "measure";
        je["sites"] = json::array({m.site});
        je["basis"] = std::string(1, pauli_char(m.basis));
      }
      evs.push_back(std::move(je));
    }
    jl["events"] = std::move(evs);
    layers.push_back(std::move(jl));
  }
  j["layers"] = std::move(layers);
  return j.dump(2) + "\n";
}

Circuit circuit_from_json(const std::string& text) {
  const json j = json::parse(text);
  Circuit c;
  c.L = j.at("L").get<int>();
  c.q = j.at("q").get<int>();
  c.boundary = j.at("boundary").get<std::string>() == "open" ? Boundary::open
                                                             : Boundary::periodic;
  const std::string geo = j.at("geometry").get<std::string>();
  c.geometry = geo == "brickwork"   ? Geometry::brickwork
               : geo == "poisson"   ? Geometry::poisson
                                    : Geometry::all_to_all;
  for (const auto& jl : j.at("layers")) {
    Layer layer;
    layer.time = jl.at("time").get<double>();
    for (const auto& je : jl.at("events")) {
      if (je.at("type").get<std::string>() == "gate") {
        GateEvent e;
        e.a = je.at("sites")[0].get<int>();
        e.b = je.at("sites").size() > 1 ? je.at("sites")[1].get<int>() : -1;
        e.gate_id = static_cast<int>(c.gates.size());
        StoredGate sg;
        sg.unitary.entries = matrix_from_json(je.at("matrix"));
        sg.unitary.dim = static_cast<int>(sg.unitary.entries.rows());
        sg.unitary.label = gate_kind_from_name(je.at("gate_kind").get<std::string>());
        if (sg.unitary.label == GateKind::clifford && sg.unitary.dim <= 4) {
          sg.clifford = CliffordGate::from_dense(sg.unitary.entries);
        }
        c.gates.push_back(std::move(sg));
        layer.events.push_back(e);
      } else {
        MeasureEvent m;
        m.site = je.at("sites")[0].get<int>();
        m.basis = pauli_from_char(je.at("basis").get<std::string>()[0]);
        layer.events.push_back(m);
      }
    }
    c.layers.push_back(std::move(layer));
  }
  return c;
}

}  // namespace circuitlab
