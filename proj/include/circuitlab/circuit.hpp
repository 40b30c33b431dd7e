#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "circuitlab/clifford.hpp"
#include "circuitlab/gate.hpp"
#include "circuitlab/pauli.hpp"
#include "circuitlab/rng.hpp"

namespace circuitlab {

enum class Boundary { open, periodic };
enum class Geometry { brickwork, poisson, all_to_all };

/// Two-site or one-site gate application; b = -1 for one-site events.
/// gate_id indexes Circuit::gates.
struct GateEvent {
  int a = 0;
  int b = -1;
  int gate_id = 0;
};

struct MeasureEvent {
  int site = 0;
  Pauli basis = Pauli::Z;
};

using Event = std::variant<GateEvent, MeasureEvent>;

struct Layer {
  std::vector<Event> events;
  double time = 0.0;  // physical time for Poisson circuits; layer index otherwise
};

struct StoredGate {
  UnitaryGate unitary;
  std::optional<CliffordGate> clifford;
};

struct Circuit {
  int L = 0;
  int q = 2;
  Boundary boundary = Boundary::open;
  Geometry geometry = Geometry::brickwork;
  std::vector<Layer> layers;
  std::vector<StoredGate> gates;

  int depth() const { return static_cast<int>(layers.size()); }
  long gate_count() const;
  long measurement_count() const;
  /// Throws std::logic_error if any layer touches a site twice.
  void check_layers_disjoint() const;
};

/// Which ensemble a builder samples gates from.
struct GateSpec {
  GateKind kind = GateKind::haar;
  int q = 2;
  double dual_J = 0.3;
  bool dual_dress = true;
  std::optional<Eigen::MatrixXcd> fixed;  // for kind == fixed
  std::optional<CliffordGate> fixed_clifford;

  static GateSpec haar(int q = 2);
  static GateSpec clifford();
  static GateSpec u1();
  static GateSpec dual_unitary(double J, bool dress = true);
  static GateSpec fixed_gate(const Eigen::MatrixXcd& u);
};

/// Alternating brickwork: layer tau (1-based) applies gates on odd bonds
/// when tau is odd, even bonds when tau is even (bond x joins sites x, x+1,
/// 1-based). With open boundaries edge sites idle on alternating layers;
/// with periodic boundaries (even L) the wrap bond is included.
Circuit build_brickwork(int L, int depth, Boundary boundary,
                        const GateSpec& spec, RngStream& rng);

/// Gates arrive on each bond as an independent Poisson process of the given
/// rate over [0, duration]; events are packed into micro-layers in time
/// order, ties broken by bond index.
Circuit build_poisson_circuit(int L, double duration, double rate,
                              RngStream& rng, const GateSpec& spec = GateSpec::haar());

/// After each unitary layer, each site independently gets a MeasureEvent in
/// the given basis with probability p.
Circuit place_measurements(const Circuit& c, double p, RngStream& rng,
                           Pauli basis = Pauli::Z);

std::string circuit_to_json(const Circuit& c);
Circuit circuit_from_json(const std::string& text);

}  // namespace circuitlab
