#pragma once

#include "semidens/estimate.hpp"
#include "semidens/kernels.hpp"
#include "semidens/sample.hpp"

namespace semidens {

/// Fit any of the nine methods with one call. Non-kernel methods other than
/// et1..et4 require the Gaussian kernel. With renormalize set, local1/local2
/// are divided by their quadrature integral (only those two accept the flag).
DensityEstimate fit_method(Method method, const Sample& data, double h,
                           KernelSpec k, bool renormalize = false);

}  // namespace semidens
