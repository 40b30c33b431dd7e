#include "circuitlab/membrane.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace circuitlab {

double MembraneModel::v_butterfly() const {
  // E(v) - v is decreasing down to the fixed point for convex E with
  // E(0) > 0 and E'(v_B) = 1.
  double lo = 0.0, hi = v_max;
  if (tension(hi) > hi) return hi;  // fixed point at or beyond the light cone
  for (int it = 0; it < 80; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (tension(mid) > mid) lo = mid;
    else hi = mid;
  }
  return 0.5 * (lo + hi);
}

bool MembraneModel::is_convex(int grid) const {
  const double h = 2.0 * v_max / (grid - 1);
  double prev_slope = -std::numeric_limits<double>::infinity();
  for (int i = 0; i + 1 < grid; ++i) {
    const double a = -v_max + i * h, b = a + h;
    const double slope = (tension(b) - tension(a)) / h;
    if (slope < prev_slope - 1e-9) return false;
    prev_slope = slope;
  }
  return true;
}

MembraneModel MembraneModel::random_circuit(double s_eq_nats) {
  MembraneModel m;
  m.s_eq = s_eq_nats;
  m.v_max = 1.0;
  m.tension = [](double v) {
    const double av = std::abs(v);
    return av >= 1.0 ? av : 0.5 * (1.0 + v * v);
  };
  return m;
}

namespace {

double solve_grid(const MembraneModel& m,
                  const std::function<double(double)>& s0_over_seq, double y,
                  double t, int steps) {
  constexpr int kVelocityPoints = 81;
  const double dt = t / steps;
  const double pad = 2.0;
  const double half_width = m.v_max * t + pad;
  const double dx = m.v_max * dt;  // light-cone aligned grid
  const int half_cells = static_cast<int>(std::ceil(half_width / dx));
  const int nx = 2 * half_cells + 1;
  auto x_of = [&](int i) { return y + (i - half_cells) * dx; };
  std::vector<double> value(static_cast<std::size_t>(nx));
  for (int i = 0; i < nx; ++i)
    value[static_cast<std::size_t>(i)] = s0_over_seq(x_of(i));
  std::vector<double> next(static_cast<std::size_t>(nx));
  std::vector<double> evals(kVelocityPoints);
  std::vector<double> voff(kVelocityPoints);
  for (int k = 0; k < kVelocityPoints; ++k) {
    const double v = -m.v_max + 2.0 * m.v_max * k / (kVelocityPoints - 1);
    evals[static_cast<std::size_t>(k)] = m.tension(v) * dt;
    voff[static_cast<std::size_t>(k)] = v * dt / dx;  // in cell units
  }
  for (int s = 0; s < steps; ++s) {
    for (int i = 0; i < nx; ++i) {
      double best = std::numeric_limits<double>::infinity();
      for (int k = 0; k < kVelocityPoints; ++k) {
        const double src = i - voff[static_cast<std::size_t>(k)];
        if (src < 0 || src > nx - 1) continue;
        const int j = static_cast<int>(src);
        const double f = src - j;
        const double interp =
            j + 1 < nx
                ? (1 - f) * value[static_cast<std::size_t>(j)] +
                      f * value[static_cast<std::size_t>(j + 1)]
                : value[static_cast<std::size_t>(j)];
        best = std::min(best, interp + evals[static_cast<std::size_t>(k)]);
      }
      next[static_cast<std::size_t>(i)] = best;
    }
    value.swap(next);
  }
  return value[static_cast<std::size_t>(half_cells)];
}

}  // namespace

double membrane_entropy(const MembraneModel& m,
                        const std::function<double(double)>& s0_nats, double y,
                        double t, int time_steps) {
  if (!m.is_convex())
    throw std::invalid_argument("membrane_entropy: tension is not convex");
  if (t <= 0) return s0_nats(y);
  auto s0_scaled = [&](double x) { return s0_nats(x) / m.s_eq; };
  // Richardson extrapolation in the time step: F(h) = F + c h.
  const double coarse = solve_grid(m, s0_scaled, y, t, time_steps / 2);
  const double fine = solve_grid(m, s0_scaled, y, t, time_steps);
  return m.s_eq * (2.0 * fine - coarse);
}

double membrane_entropy_region(const MembraneModel& m, double ell, double t,
                               int time_steps) {
  const auto zero = [](double) { return 0.0; };
  const double growth = 2.0 * membrane_entropy(m, zero, 0.0, t, time_steps);
  return std::min(growth, m.s_eq * ell);
}

}  // namespace circuitlab
