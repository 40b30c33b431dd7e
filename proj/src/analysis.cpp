#include "circuitlab/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace circuitlab {

namespace {
void kahan_add(double& sum, double& comp, double x) {
  const double y = x - comp;
  const double t = sum + y;
  comp = (t - sum) - y;
  sum = t;
}
}  // namespace

void RunningStat::add(double x) {
  ++n_;
  const double delta = x - mean_;
  kahan_add(mean_, mean_c_, delta / n_);
  const double delta2 = x - mean_;
  kahan_add(m2_, m2_c_, delta * delta2);
}

double RunningStat::mean() const { return mean_; }
double RunningStat::var() const { return n_ > 1 ? m2_ / (n_ - 1) : 0.0; }
double RunningStat::sd() const { return std::sqrt(var()); }
double RunningStat::sem() const {
  return n_ > 0 ? std::sqrt(var() / n_) : 0.0;
}

void Series::push(double xv, double yv, double ye, long nv) {
  x.push_back(xv);
  y.push_back(yv);
  yerr.push_back(ye);
  n.push_back(nv);
}

void Series::validate() const {
  if (y.size() != x.size() || yerr.size() != x.size() || n.size() != x.size())
    throw std::invalid_argument("Series: column lengths differ");
  for (double e : yerr)
    if (e < 0) throw std::invalid_argument("Series: negative standard error");
}

PowerlawFit powerlaw_fit(std::span<const double> x, std::span<const double> y,
                         std::span<const double> yerr) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("powerlaw_fit: need >= 2 matching points");
  const bool weighted = !yerr.empty();
  if (weighted && yerr.size() != x.size())
    throw std::invalid_argument("powerlaw_fit: error column length mismatch");
  double sw = 0, swx = 0, swy = 0, swxx = 0, swxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0) || !(y[i] > 0))
      throw std::invalid_argument("powerlaw_fit: data must be positive");
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    // error of ln y ~ yerr / y
    double w = 1.0;
    if (weighted) {
      const double se = yerr[i] / y[i];
      w = se > 0 ? 1.0 / (se * se) : 1.0;
    }
    sw += w;
    swx += w * lx;
    swy += w * ly;
    swxx += w * lx * lx;
    swxy += w * lx * ly;
  }
  const double det = sw * swxx - swx * swx;
  if (std::abs(det) < 1e-30)
    throw std::invalid_argument("powerlaw_fit: degenerate x values");
  PowerlawFit f;
  f.exponent = (sw * swxy - swx * swy) / det;
  const double lnA = (swxx * swy - swx * swxy) / det;
  f.amplitude = std::exp(lnA);
  if (weighted) {
    f.exponent_err = std::sqrt(sw / det);
    f.amplitude_err = f.amplitude * std::sqrt(swxx / det);
  } else {
    // scale covariance by residual variance
    double rss = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double r = std::log(y[i]) - (lnA + f.exponent * std::log(x[i]));
      rss += r * r;
    }
    const double s2 =
        x.size() > 2 ? rss / (static_cast<double>(x.size()) - 2) : 0.0;
    f.exponent_err = std::sqrt(s2 * sw / det);
    f.amplitude_err = f.amplitude * std::sqrt(s2 * swxx / det);
  }
  return f;
}

PowerlawFit powerlaw_fit(const Series& s, double xmin, double xmax) {
  std::vector<double> xs, ys, es;
  bool have_err = false;
  for (std::size_t i = 0; i < s.x.size(); ++i) {
    if (s.x[i] < xmin || s.x[i] > xmax) continue;
    xs.push_back(s.x[i]);
    ys.push_back(s.y[i]);
    es.push_back(s.yerr[i]);
    if (s.yerr[i] > 0) have_err = true;
  }
  return powerlaw_fit(xs, ys, have_err ? std::span<const double>(es)
                                       : std::span<const double>{});
}

namespace {

double interp(const Series& s, double xq) {
  const auto& xs = s.x;
  if (xq <= xs.front()) return s.y.front();
  if (xq >= xs.back()) return s.y.back();
  auto it = std::upper_bound(xs.begin(), xs.end(), xq);
  const std::size_t j = static_cast<std::size_t>(it - xs.begin());
  const double f = (xq - xs[j - 1]) / (xs[j] - xs[j - 1]);
  return s.y[j - 1] + f * (s.y[j] - s.y[j - 1]);
}

// Crossing of two curves on their shared x range by scanning sign changes of
// the difference on a fine grid, then linear inversion.
double pair_crossing(const Series& a, const Series& b) {
  const double lo = std::max(a.x.front(), b.x.front());
  const double hi = std::min(a.x.back(), b.x.back());
  if (!(hi > lo)) throw std::invalid_argument("crossing_finder: disjoint ranges");
  const int n = 512;
  double prev_x = lo, prev_d = interp(a, lo) - interp(b, lo);
  for (int i = 1; i <= n; ++i) {
    const double xq = lo + (hi - lo) * i / n;
    const double d = interp(a, xq) - interp(b, xq);
    if ((prev_d <= 0 && d >= 0) || (prev_d >= 0 && d <= 0)) {
      if (d == prev_d) return 0.5 * (prev_x + xq);
      return prev_x + (xq - prev_x) * (-prev_d) / (d - prev_d);
    }
    prev_x = xq;
    prev_d = d;
  }
  throw std::invalid_argument("crossing_finder: curves do not cross in range");
}

}  // namespace

CrossingResult crossing_finder(const std::vector<Series>& curves) {
  if (curves.size() < 2)
    throw std::invalid_argument("crossing_finder: need >= 2 curves");
  CrossingResult out;
  for (std::size_t i = 0; i < curves.size(); ++i)
    for (std::size_t j = i + 1; j < curves.size(); ++j)
      out.pairwise.push_back(pair_crossing(curves[i], curves[j]));
  out.location = out.pairwise.back();  // largest-size pair
  double lo = out.pairwise.front(), hi = out.pairwise.front();
  for (double c : out.pairwise) {
    lo = std::min(lo, c);
    hi = std::max(hi, c);
  }
  out.error = std::max(0.5 * (hi - lo), 1e-12);
  return out;
}

namespace {

GaussianFit gaussianfit_impl(std::span<const double> profile, double t) {
  const std::size_t n = profile.size();
  double total = 0;
  for (double v : profile) {
    if (v < -1e-9)
      throw std::invalid_argument("gaussian_kernel_fit: negative weight");
    total += v;
  }
  if (!(total > 1e-12))
    throw std::invalid_argument("gaussian_kernel_fit: profile not normalizable");
  // Moment start.
  double mean = 0;
  for (std::size_t i = 0; i < n; ++i) mean += profile[i] * i;
  mean /= total;
  double var = 0;
  for (std::size_t i = 0; i < n; ++i)
    var += profile[i] * (i - mean) * (i - mean);
  var /= total;
  // A few Gauss-Newton refinements of (A, mu, s2) against the profile.
  double A = total / std::sqrt(2 * std::numbers::pi * var), mu = mean, s2 = var;
  for (int it = 0; it < 32; ++it) {
    double g_a = 0, g_m = 0, g_s = 0;
    double h_aa = 0, h_mm = 0, h_ss = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const double dx = i - mu;
      const double e = std::exp(-dx * dx / (2 * s2));
      const double f = A * e;
      const double r = f - profile[i];
      const double dfda = e;
      const double dfdm = f * dx / s2;
      const double dfds = f * dx * dx / (2 * s2 * s2);
      g_a += r * dfda;
      g_m += r * dfdm;
      g_s += r * dfds;
      h_aa += dfda * dfda;
      h_mm += dfdm * dfdm;
      h_ss += dfds * dfds;
    }
    const double da = h_aa > 0 ? g_a / h_aa : 0;
    const double dm = h_mm > 0 ? g_m / h_mm : 0;
    const double ds = h_ss > 0 ? g_s / h_ss : 0;
    A -= da;
    mu -= dm;
    s2 -= ds;
    if (s2 <= 0) s2 = var;
    if (std::abs(dm) < 1e-12 && std::abs(ds) < 1e-10 * var) break;
  }
  double rss = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = i - mu;
    const double r = A * std::exp(-dx * dx / (2 * s2)) - profile[i];
    rss += r * r;
  }
  GaussianFit out;
  out.center = mu;
  out.variance = s2;
  out.d_const = s2 / (2.0 * t);
  out.rms_residual = std::sqrt(rss / n);
  return out;
}

}  // namespace

GaussianFit gaussian_kernel_fit(std::span<const double> profile, double t) {
  if (t <= 0) throw std::invalid_argument("gaussian_kernel_fit: t must be > 0");
  return gaussianfit_impl(profile, t);
}

double collapse_quality(const std::vector<Series>& curves, double p_c,
                        double nu) {
  if (curves.size() < 2)
    throw std::invalid_argument("collapse_quality: need >= 2 curves");
  if (!(nu > 0)) throw std::invalid_argument("collapse_quality: nu must be > 0");
  // Rescale each curve's x to (p - p_c) L^{1/nu}, then measure the spread of
  // curve values at common rescaled points.
  struct Scaled {
    std::vector<double> u, y;
  };
  std::vector<Scaled> scaled;
  double lo = -1e300, hi = 1e300;
  for (const auto& s : curves) {
    auto it = s.meta.find("L");
    if (it == s.meta.end())
      throw std::invalid_argument("collapse_quality: curve missing L metadata");
    const double f = std::pow(it->second, 1.0 / nu);
    Scaled sc;
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      sc.u.push_back((s.x[i] - p_c) * f);
      sc.y.push_back(s.y[i]);
    }
    lo = std::max(lo, sc.u.front());
    hi = std::min(hi, sc.u.back());
    scaled.push_back(std::move(sc));
  }
  if (!(hi > lo)) return 1e9;  // no shared support: maximally bad
  const int n = 64;
  double obj = 0;
  for (int i = 0; i <= n; ++i) {
    const double u = lo + (hi - lo) * i / n;
    double mean = 0;
    std::vector<double> vals;
    for (const auto& sc : scaled) {
      Series tmp;
      tmp.x = sc.u;
      tmp.y = sc.y;
      tmp.yerr.assign(sc.u.size(), 0.0);
      tmp.n.assign(sc.u.size(), 0);
      const double v = interp(tmp, u);
      vals.push_back(v);
      mean += v;
    }
    mean /= static_cast<double>(vals.size());
    for (double v : vals) obj += (v - mean) * (v - mean);
  }
  return obj / (n + 1);
}

CollapseResult collapse_scan(const std::vector<Series>& curves,
                             std::span<const double> pc_grid,
                             std::span<const double> nu_grid) {
  if (pc_grid.empty() || nu_grid.empty())
    throw std::invalid_argument("collapse_scan: degenerate grid");
  CollapseResult best;
  best.objective = 1e300;
  for (double pc : pc_grid) {
    for (double nu : nu_grid) {
      const double q = collapse_quality(curves, pc, nu);
      if (q < best.objective) {
        best = {pc, nu, q};
      }
    }
  }
  return best;
}

}  // namespace circuitlab
