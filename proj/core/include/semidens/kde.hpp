#pragma once

#include "semidens/estimate.hpp"
#include "semidens/kernels.hpp"
#include "semidens/mixtures.hpp"
#include "semidens/sample.hpp"

namespace semidens {

/// Classical kernel estimate f0(x) = n^-1 sum_i K_h(x_i - x) with analytic
/// derivative; direct O(n) summation per evaluation.
DensityEstimate kde_fit(const Sample& data, double h, KernelSpec k);

struct KdeAsymptotics {
  double bias = 0.0;
  double variance = 0.0;
};

/// Leading-order mean and variance of f0 at x under the true density m:
/// bias = (1/2) k2 h^2 f''(x), variance = R(K) f(x)/(nh) - f(x)^2/n.
KdeAsymptotics kde_asymptotics(const NormalMixture& m, KernelSpec k, double h,
                               long n, double x);

}  // namespace semidens
