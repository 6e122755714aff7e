#pragma once

#include "semidens/estimate.hpp"
#include "semidens/kernels.hpp"
#include "semidens/sample.hpp"

namespace semidens {

/// Globally fitted normal start estimate: mu_hat = mean, sigma_hat = sd
/// (divisor n).
struct NormalStart {
  double mu_hat = 0.0;
  double sigma_hat = 0.0;
};

NormalStart normal_start(const Sample& data);

/// Jones variance-corrected estimate: kernel estimate with the same h on the
/// shrunken points y_i = mean + (x_i - mean) * s / sqrt(s^2 + h^2).
DensityEstimate jones_fit(const Sample& data, double h, KernelSpec k);

/// Hjort-Glad multiplicative estimate with normal start,
/// f3(x) = n^-1 sum_i phi_h(x_i - x) exp[((x_i-mu)^2 - (x-mu)^2)/(2 sigma^2)].
DensityEstimate hjort_glad_fit(const Sample& data, double h);

/// Local-level likelihood corrector with normal start,
/// f4(x) = f0(x) (1 + h^2/s^2)^(1/2)
///         exp[-(1/2) h^2 (x-mu)^2 / {s^2 (s^2 + h^2)}].
DensityEstimate local_level_fit(const Sample& data, double h);

/// Local-linear likelihood corrector with normal start,
/// f5(x) = f0(x) (1 + h^2/s^2)^(1/2)
///         exp[-(1/2) h^2 (1 + h^2/s^2) {f0'(x)/f0(x)}^2].
/// Evaluation throws EvaluationOutsideSupport where f0 underflows to zero.
DensityEstimate local_linear_fit(const Sample& data, double h);

}  // namespace semidens
