#pragma once

#include <functional>

namespace circuitlab {

/// Coarse-grained membrane model: dimensionless tension E(v) (in units of
/// s_eq per unit time), equilibrium entropy density s_eq in nats per site.
struct MembraneModel {
  std::function<double(double)> tension;
  double s_eq = 0.6931471805599453;  // ln 2
  double v_max = 1.0;

  double v_entanglement() const { return tension(0.0); }
  /// Solve E(v) = v on (0, v_max] by bisection; the butterfly speed.
  double v_butterfly() const;
  /// Convexity probe of E on a sampled velocity grid.
  bool is_convex(int grid = 201) const;

  /// The random-circuit tension E(v) = (1+v^2)/2 clamped to 1 beyond |v|=1.
  static MembraneModel random_circuit(double s_eq_nats = 0.6931471805599453);
};

/// S_y(t) = s_eq * min over trajectories x(t') ending at y of
/// [ integral E(xdot) dt' + S0(x0)/s_eq ], by dynamic programming on a
/// spacetime grid with an 81-point velocity stencil, Richardson-extrapolated
/// in the grid spacing. S0 is given and the result returned in nats.
/// Throws std::invalid_argument when E fails the convexity probe.
double membrane_entropy(const MembraneModel& m,
                        const std::function<double(double)>& s0_nats, double y,
                        double t, int time_steps = 256);

/// Finite region of width ell from a product state: min of the two-cut
/// growth branch and the saturated branch s_eq * ell.
double membrane_entropy_region(const MembraneModel& m, double ell, double t,
                               int time_steps = 256);

}  // namespace circuitlab
