#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

namespace circuitlab {

/// Streaming mean/variance (Welford) with Kahan-compensated sums so that
/// reductions are bitwise stable under a fixed accumulation order.
class RunningStat {
 public:
  void add(double x);
  long n() const { return n_; }
  double mean() const;
  double var() const;  // unbiased
  double sd() const;
  double sem() const;

 private:
  long n_ = 0;
  double mean_ = 0.0, m2_ = 0.0;
  double mean_c_ = 0.0, m2_c_ = 0.0;  // compensations
};

/// One measured curve: y(x) with standard errors and sample counts.
struct Series {
  std::vector<double> x;
  std::vector<double> y;
  std::vector<double> yerr;
  std::vector<long> n;
  std::map<std::string, double> meta;  // e.g. {"L": 64, "p": 0.17}

  void push(double xv, double yv, double ye = 0.0, long nv = 0);
  void validate() const;  // equal lengths, nonnegative errors
};

struct PowerlawFit {
  double exponent = 0.0;
  double amplitude = 0.0;
  double exponent_err = 0.0;
  double amplitude_err = 0.0;
};

/// Weighted least squares of ln y = ln A + k ln x. Positive data only;
/// throws std::invalid_argument otherwise. Empty yerr = unweighted.
PowerlawFit powerlaw_fit(std::span<const double> x, std::span<const double> y,
                         std::span<const double> yerr = {});
PowerlawFit powerlaw_fit(const Series& s, double xmin, double xmax);

struct CrossingResult {
  double location = 0.0;
  double error = 0.0;
  std::vector<double> pairwise;  // crossing of each size pair
};

/// Pairwise intersections of curves ordered by increasing size, by local
/// linear interpolation on the shared x grid. Estimate = largest-size pair;
/// error = spread over all pairs. Throws if a pair never crosses.
CrossingResult crossing_finder(const std::vector<Series>& curves);

struct GaussianFit {
  double d_const = 0.0;   // D = variance / (2 t)
  double center = 0.0;
  double variance = 0.0;
  double rms_residual = 0.0;
};

/// Least-squares Gaussian fit of a normalized profile a_x (x = index offsets
/// around the center); D is reported as variance/(2t) for the kernel
/// exp(-x^2 / (4 D t)).
GaussianFit gaussian_kernel_fit(std::span<const double> profile, double t);

/// Residual objective of replotting curves y_L(p) against (p - p_c) L^{1/nu};
/// identical collapsed curves give 0. The dynamical exponent enters only
/// through the caller's choice of sampling times (z = 1 is an input, never
/// fitted).
double collapse_quality(const std::vector<Series>& curves, double p_c,
                        double nu);

struct CollapseResult {
  double p_c = 0.0;
  double nu = 0.0;
  double objective = 0.0;
};

/// Grid search of collapse_quality over (p_c, nu).
CollapseResult collapse_scan(const std::vector<Series>& curves,
                             std::span<const double> pc_grid,
                             std::span<const double> nu_grid);

}  // namespace circuitlab
