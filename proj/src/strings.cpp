#include "circuitlab/strings.hpp"

#include <cmath>
#include <stdexcept>

#include "circuitlab/analysis.hpp"

namespace circuitlab {

StringTrajectory string_markov_run(int L, int depth, RngStream& rng,
                                   const PauliString& initial) {
  if (initial.size() != L)
    throw std::invalid_argument("string_markov_run: length mismatch");
  std::vector<std::uint8_t> s(static_cast<std::size_t>(L));
  for (int i = 0; i < L; ++i)
    s[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(initial.at(i));
  StringTrajectory out;
  out.left.reserve(static_cast<std::size_t>(depth));
  out.right.reserve(static_cast<std::size_t>(depth));
  out.support.reserve(static_cast<std::size_t>(depth));
  for (int tau = 1; tau <= depth; ++tau) {
    const int start = (tau % 2 == 1) ? 0 : 1;
    for (int a = start; a + 1 < L; a += 2) {
      const std::uint8_t pa = s[static_cast<std::size_t>(a)];
      const std::uint8_t pb = s[static_cast<std::size_t>(a + 1)];
      if (pa == 0 && pb == 0) continue;  // identity pair is invariant
      const std::uint64_t pick = rng.uniform_index(15) + 1;  // 1..15
      s[static_cast<std::size_t>(a)] = static_cast<std::uint8_t>(pick >> 2);
      s[static_cast<std::size_t>(a + 1)] = static_cast<std::uint8_t>(pick & 3);
    }
    int l = -1, r = -1, n = 0;
    for (int i = 0; i < L; ++i) {
      if (s[static_cast<std::size_t>(i)] != 0) {
        if (l < 0) l = i;
        r = i;
        ++n;
      }
    }
    out.left.push_back(l);
    out.right.push_back(r);
    out.support.push_back(n);
  }
  out.final_string = PauliString(L);
  for (int i = 0; i < L; ++i)
    out.final_string.set(i, static_cast<Pauli>(s[static_cast<std::size_t>(i)]));
  return out;
}

std::vector<double> string_markov_exact_distribution(
    int L, int depth, const std::vector<double>& initial) {
  const long n = 1L << (2 * L);
  if (static_cast<long>(initial.size()) != n)
    throw std::invalid_argument("string_markov_exact_distribution: bad size");
  std::vector<double> p = initial;
  std::vector<double> q(p.size());
  for (int tau = 1; tau <= depth; ++tau) {
    const int start = (tau % 2 == 1) ? 0 : 1;
    for (int a = start; a + 1 < L; a += 2) {
      // local pair occupies bits 2*(L-1-a)-2 .. 2*(L-1-a)+1
      const int shift_a = 2 * (L - 1 - a);
      const int shift_b = 2 * (L - 1 - (a + 1));
      std::fill(q.begin(), q.end(), 0.0);
      for (long idx = 0; idx < n; ++idx) {
        const int ca = static_cast<int>((idx >> shift_a) & 3);
        const int cb = static_cast<int>((idx >> shift_b) & 3);
        if (ca == 0 && cb == 0) {
          q[static_cast<std::size_t>(idx)] += p[static_cast<std::size_t>(idx)];
          continue;
        }
        const long base =
            idx & ~((3L << shift_a) | (3L << shift_b));
        const double share = p[static_cast<std::size_t>(idx)] / 15.0;
        for (int c = 1; c < 16; ++c) {
          const long to = base | (static_cast<long>(c >> 2) << shift_a) |
                          (static_cast<long>(c & 3) << shift_b);
          q[static_cast<std::size_t>(to)] += share;
        }
      }
      p.swap(q);
    }
  }
  return p;
}

FrontEnsemble otoc_front(int L, int depth, int samples, std::uint64_t seed) {
  if (samples < 8) throw std::invalid_argument("otoc_front: too few samples");
  const int center = L / 2;
  FrontEnsemble out;
  std::vector<RunningStat> right_stats(static_cast<std::size_t>(depth));
  std::vector<double> profile(static_cast<std::size_t>(L), 0.0);
  const PauliString init = PauliString::single(L, center, Pauli::Z);
  for (int s = 0; s < samples; ++s) {
    RngStream rng(seed, static_cast<std::uint64_t>(s), "otoc-front");
    const StringTrajectory tr = string_markov_run(L, depth, rng, init);
    for (int t = 0; t < depth; ++t)
      right_stats[static_cast<std::size_t>(t)].add(
          tr.right[static_cast<std::size_t>(t)]);
    for (int i = 0; i < L; ++i)
      profile[static_cast<std::size_t>(i)] +=
          tr.final_string.at(i) != Pauli::I ? 1.0 : 0.0;
  }
  for (double& v : profile) v /= samples;
  out.profile = profile;
  for (int t = 1; t <= depth; ++t) {
    out.times.push_back(t);
    out.width.push_back(right_stats[static_cast<std::size_t>(t - 1)].sd());
    out.mean_right.push_back(right_stats[static_cast<std::size_t>(t - 1)].mean() -
                             center);
  }
  // v_B from the linear drift of the mean right endpoint over the second
  // half of the run (front must stay away from the boundary).
  {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    long cnt = 0;
    for (int t = depth / 2; t <= depth; ++t) {
      const double x = t, y = out.mean_right[static_cast<std::size_t>(t - 1)];
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
      ++cnt;
    }
    const double det = cnt * sxx - sx * sx;
    out.vb = (cnt * sxy - sx * sy) / det;
    double rss = 0;
    const double icpt = (sy - out.vb * sx) / cnt;
    for (int t = depth / 2; t <= depth; ++t) {
      const double r =
          out.mean_right[static_cast<std::size_t>(t - 1)] - (icpt + out.vb * t);
      rss += r * r;
    }
    out.vb_err = std::sqrt(rss / std::max<long>(cnt - 2, 1) * cnt / det);
  }
  // Interior plateau: average density within half the front radius.
  {
    const int radius = std::max(2, static_cast<int>(0.5 * out.vb * depth));
    double acc = 0;
    int cnt = 0;
    for (int i = center - radius; i <= center + radius; ++i) {
      acc += profile[static_cast<std::size_t>(i)];
      ++cnt;
    }
    out.interior_density = acc / cnt;
  }
  return out;
}

}  // namespace circuitlab
