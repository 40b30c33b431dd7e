#include "circuitlab/u1.hpp"

#include <stdexcept>

namespace circuitlab {

U1DiffusionResult u1_amplitude_diffusion(int L, int t_max, int initial_site) {
  if (L < 2 || initial_site < 0 || initial_site >= L)
    throw std::invalid_argument("u1_amplitude_diffusion: bad parameters");
  if (t_max < 1)
    throw std::invalid_argument("u1_amplitude_diffusion: t_max must be >= 1");
  std::vector<double> a(static_cast<std::size_t>(L), 0.0);
  a[static_cast<std::size_t>(initial_site)] = 1.0;
  U1DiffusionResult out;
  out.conserved_weight.reserve(static_cast<std::size_t>(t_max));
  out.second_moment.reserve(static_cast<std::size_t>(t_max));
  for (int tau = 1; tau <= t_max; ++tau) {
    const int start = (tau % 2 == 1) ? 0 : 1;
    for (int x = start; x + 1 < L; x += 2) {
      const double m = 0.5 * (a[static_cast<std::size_t>(x)] +
                              a[static_cast<std::size_t>(x + 1)]);
      a[static_cast<std::size_t>(x)] = m;
      a[static_cast<std::size_t>(x + 1)] = m;
    }
    double wc = 0.0, m2 = 0.0;
    for (int x = 0; x < L; ++x) {
      const double v = a[static_cast<std::size_t>(x)];
      wc += v * v;
      const double dx = x - initial_site;
      m2 += dx * dx * v;
    }
    out.conserved_weight.push_back(wc);
    out.second_moment.push_back(m2);
  }
  out.profile = std::move(a);
  return out;
}

std::vector<double> u1_conserved_weight(int L, int t_max, int initial_site) {
  return u1_amplitude_diffusion(L, t_max, initial_site).conserved_weight;
}

}  // namespace circuitlab
