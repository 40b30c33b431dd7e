#include "circuitlab/sff.hpp"

#include <complex>
#include <stdexcept>

#include "circuitlab/gate.hpp"

namespace circuitlab {

std::vector<double> sff_fixed(const Eigen::MatrixXcd& w, int t_max) {
  const int dim = static_cast<int>(w.rows());
  if (dim > kSffDimCap) throw std::invalid_argument("sff: dimension cap exceeded");
  if (w.cols() != dim) throw std::invalid_argument("sff: matrix must be square");
  Eigen::ComplexSchur<Eigen::MatrixXcd> schur(w, /*computeU=*/false);
  Eigen::VectorXcd phases(dim);
  for (int i = 0; i < dim; ++i) {
    std::complex<double> lam = schur.matrixT()(i, i);
    const double a = std::abs(lam);
    phases(i) = a > 0 ? lam / a : 1.0;  // project to the unit circle
  }
  std::vector<double> k(static_cast<std::size_t>(t_max) + 1);
  Eigen::VectorXcd pow = Eigen::VectorXcd::Ones(dim);
  for (int t = 0; t <= t_max; ++t) {
    const std::complex<double> tr = pow.sum();
    k[static_cast<std::size_t>(t)] = std::norm(tr);
    pow.array() *= phases.array();
  }
  return k;
}

std::vector<double> sff_cue(int dim, int t_max, int samples, RngStream& rng) {
  if (dim > kSffDimCap) throw std::invalid_argument("sff: dimension cap exceeded");
  std::vector<double> mean(static_cast<std::size_t>(t_max) + 1, 0.0);
  std::vector<double> comp(mean.size(), 0.0);  // Kahan compensation
  for (int s = 0; s < samples; ++s) {
    const std::vector<double> k = sff_fixed(haar_unitary(dim, rng), t_max);
    for (std::size_t i = 0; i < mean.size(); ++i) {
      const double y = k[i] - comp[i];
      const double t = mean[i] + y;
      comp[i] = (t - mean[i]) - y;
      mean[i] = t;
    }
  }
  for (double& m : mean) m /= samples;
  return mean;
}

Eigen::MatrixXcd floquet_brickwork_unitary(int L, RngStream& rng) {
  if (L < 2 || L % 2 != 0)
    throw std::invalid_argument("floquet_brickwork_unitary: need even L >= 2");
  const long dim = 1L << L;
  if (dim > kSffDimCap) throw std::invalid_argument("sff: dimension cap exceeded");
  Eigen::MatrixXcd w = Eigen::MatrixXcd::Identity(dim, dim);
  auto apply_layer = [&](int start) {
    for (int a = start; a < L; a += 2) {
      const int b = (a + 1) % L;
      const Eigen::MatrixXcd u = haar_unitary(4, rng);
      // multiply into W from the left: W <- (u on (a,b)) W
      const long sa = 1L << (L - 1 - a);
      const long sb = 1L << (L - 1 - b);
      for (long col = 0; col < dim; ++col) {
        for (long base = 0; base < dim; ++base) {
          if ((base / sa) % 2 != 0 || (base / sb) % 2 != 0) continue;
          Eigen::Vector4cd loc;
          for (int ia = 0; ia < 2; ++ia)
            for (int ib = 0; ib < 2; ++ib)
              loc(ia * 2 + ib) = w(base + ia * sa + ib * sb, col);
          for (int oa = 0; oa < 2; ++oa)
            for (int ob = 0; ob < 2; ++ob) {
              std::complex<double> acc = 0;
              for (int ic = 0; ic < 4; ++ic) acc += u(oa * 2 + ob, ic) * loc(ic);
              w(base + oa * sa + ob * sb, col) = acc;
            }
        }
      }
    }
  };
  apply_layer(0);
  apply_layer(1);
  return w;
}

std::vector<double> sff_floquet_brickwork(int L, int t_max, int samples,
                                          RngStream& rng) {
  std::vector<double> mean(static_cast<std::size_t>(t_max) + 1, 0.0);
  for (int s = 0; s < samples; ++s) {
    const std::vector<double> k = sff_fixed(floquet_brickwork_unitary(L, rng), t_max);
    for (std::size_t i = 0; i < mean.size(); ++i) mean[i] += k[i];
  }
  for (double& m : mean) m /= samples;
  return mean;
}

}  // namespace circuitlab
