#include "circuitlab/dprm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "circuitlab/analysis.hpp"

namespace circuitlab {

DprmResult dprm_ground_state(int width, int height, DisorderLaw law,
                             RngStream& rng, bool keep_path) {
  if (width < 3 || height < 1)
    throw std::invalid_argument("dprm_ground_state: bad lattice");
  constexpr double kInf = std::numeric_limits<double>::infinity();
  const int apex = width / 2;
  auto draw = [&]() {
    switch (law) {
      case DisorderLaw::uniform01: return rng.uniform();
      case DisorderLaw::exponential: return rng.exponential(1.0);
      case DisorderLaw::none: return 0.5;
    }
    return 0.5;
  };
  std::vector<double> cost(static_cast<std::size_t>(width), kInf);
  std::vector<double> next(static_cast<std::size_t>(width));
  std::vector<std::int16_t> moves;
  if (keep_path)
    moves.resize(static_cast<std::size_t>(width) *
                 static_cast<std::size_t>(height));
  cost[static_cast<std::size_t>(apex)] = 0.0;
  for (int row = 0; row < height; ++row) {
    for (int xcol = 0; xcol < width; ++xcol) {
      double best = cost[static_cast<std::size_t>(xcol)];
      int mv = 0;
      if (xcol > 0 && cost[static_cast<std::size_t>(xcol - 1)] < best) {
        best = cost[static_cast<std::size_t>(xcol - 1)];
        mv = -1;
      }
      if (xcol + 1 < width && cost[static_cast<std::size_t>(xcol + 1)] < best) {
        best = cost[static_cast<std::size_t>(xcol + 1)];
        mv = +1;
      }
      next[static_cast<std::size_t>(xcol)] =
          best == kInf ? kInf : best + draw();
      if (keep_path)
        moves[static_cast<std::size_t>(row) * width +
              static_cast<std::size_t>(xcol)] = static_cast<std::int16_t>(mv);
    }
    cost.swap(next);
  }
  DprmResult out;
  out.energy = kInf;
  for (int xcol = 0; xcol < width; ++xcol) {
    if (cost[static_cast<std::size_t>(xcol)] < out.energy) {
      out.energy = cost[static_cast<std::size_t>(xcol)];
      out.endpoint = xcol;
    }
  }
  if (keep_path) {
    out.path.resize(static_cast<std::size_t>(height));
    int xcol = out.endpoint;
    for (int row = height - 1; row >= 0; --row) {
      out.path[static_cast<std::size_t>(row)] = xcol;
      xcol += moves[static_cast<std::size_t>(row) * width +
                    static_cast<std::size_t>(xcol)];
    }
    std::reverse(out.path.begin(), out.path.end());
  }
  return out;
}

DprmExponents dprm_exponents(const std::vector<int>& heights, int samples,
                             std::uint64_t seed, DisorderLaw law) {
  if (heights.size() < 2 || samples < 8)
    throw std::invalid_argument("dprm_exponents: need >= 2 heights, >= 8 samples");
  DprmExponents out;
  out.heights = heights;
  for (int h : heights) {
    const int width =
        std::min(2 * h + 1, 2 * (static_cast<int>(4.0 * std::pow(h, 2.0 / 3.0)) + 8) + 1);
    const int apex = width / 2;
    RunningStat e;
    double w2 = 0.0;
    for (int s = 0; s < samples; ++s) {
      RngStream rng(seed, static_cast<std::uint64_t>(s),
                    fnv1a64("dprm") ^ (static_cast<std::uint64_t>(h) << 24));
      const DprmResult r = dprm_ground_state(width, h, law, rng);
      e.add(r.energy);
      const double dx = r.endpoint - apex;
      w2 += dx * dx;
    }
    out.energy_sd.push_back(e.sd());
    out.wander_rms.push_back(std::sqrt(w2 / samples));
  }
  std::vector<double> xs(heights.begin(), heights.end());
  const PowerlawFit fb = powerlaw_fit(xs, out.energy_sd, {});
  const PowerlawFit fz = powerlaw_fit(xs, out.wander_rms, {});
  out.beta = fb.exponent;
  out.beta_err = fb.exponent_err;
  out.zeta = fz.exponent;
  out.zeta_err = fz.exponent_err;
  return out;
}

}  // namespace circuitlab
