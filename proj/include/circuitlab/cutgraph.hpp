#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "circuitlab/circuit.hpp"
#include "circuitlab/rng.hpp"

namespace circuitlab {

/// Spacetime bond lattice of a circuit, reduced to what the cut solvers
/// need: gate times per bond, measurement times per site. A leg is a segment
/// of a site worldline between consecutive gates touching that site; legs
/// cost ln q, or 0 when a measurement lies on them. Gates are impenetrable.
/// Gap g (0..L) is the dual channel between sites g-1 and g; gates on bond
/// g-1 block it.
struct CutGraph {
  int L = 0;
  double t_top = 0.0;
  double ln_q = 0.0;
  std::vector<std::vector<double>> bond_gates;  // size L-1, ascending times
  std::vector<std::vector<double>> site_meas;   // size L, ascending times

  static CutGraph from_circuit(const Circuit& c);
  /// Bare Poisson event set (rate per bond), no gate sampling.
  static CutGraph poisson(int L, double duration, double rate, RngStream& rng,
                          double ln_q = 0.6931471805599453);

  /// Cost in ln-q units of crossing site `s` just above / below time t.
  double leg_cost_above(int s, double t) const;
  double leg_cost_below(int s, double t) const;
};

struct CutResult {
  double cost_nats = 0.0;
  /// (time, gap) vertices of the optimal dual path, top to bottom; empty for
  /// the directed solver.
  std::vector<std::pair<double, int>> path;
  int bottom_gap = -1;
};

/// Undirected minimal cut: Dijkstra on the planar dual (faces of the
/// circuit diagram). One boundary point: cheapest path from the top anchor
/// at `gap_top` to the initial-time boundary (or out the open sides).
CutResult min_cut(const CutGraph& g, int gap_top);

/// Finite region [gap_left, gap_right] at the top: min of (two independent
/// cuts to the bottom) and (a single arc connecting the two anchors).
CutResult min_cut_region(const CutGraph& g, int gap_left, int gap_right);

/// Directed (monotone-in-time) minimal cut via an event-driven DP.
/// bottom_gap fixed = point-to-point; nullopt = free bottom end.
CutResult min_cut_directed(const CutGraph& g, int gap_top,
                           std::optional<int> bottom_gap);

struct TensionEstimate {
  double v = 0.0;
  double value = 0.0;  // in ln-q units; paper-normalized so E(0) = 1/2
  double error = 0.0;
};

/// Mean directed-cut cost per unit time at fixed endpoint slope v on rate-r
/// Poisson circuits, extrapolated to large t by fitting
/// cost(t) = E t + b t^{1/3} over the ladder.
TensionEstimate line_tension_estimate(double rate, double v,
                                      const std::vector<int>& t_ladder,
                                      int samples, std::uint64_t seed);

struct KpzEstimate {
  double beta = 0.0, beta_err = 0.0;
  double zeta = 0.0, zeta_err = 0.0;
  std::vector<int> sizes;
  std::vector<double> cost_sd;       // fluctuation of the cut cost
  std::vector<double> wander_rms;    // transverse endpoint wandering
};

/// Fluctuation exponent (cost sd ~ t^beta) and wandering exponent
/// (free-end displacement ~ t^zeta) of the directed cut on Poisson circuits.
KpzEstimate kpz_exponents(double rate, const std::vector<int>& sizes,
                          int samples, std::uint64_t seed);

}  // namespace circuitlab
