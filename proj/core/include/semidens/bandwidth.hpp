#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "semidens/estimate.hpp"
#include "semidens/kernels.hpp"
#include "semidens/mixtures.hpp"
#include "semidens/sample.hpp"

namespace semidens {

struct BandwidthReport {
  double h_selected = 0.0;
  std::string selector;
  /// (h, criterion value) samples; h_selected is their argmin.
  std::vector<std::pair<double, double>> curve;
};

/// AMISE-optimal bandwidth against the true density (an oracle selector for
/// study use): h0 = {R(K)/k2^2 * int(w f)/int(w b^2)}^(1/5) n^(-1/5).
/// Throws ZeroBias when int(w b^2) vanishes (exactly unbiased cases have no
/// finite minimizer).
double amise_bandwidth(const NormalMixture& m, Method method, KernelSpec k,
                       long n, const std::function<double(double)>& weight = {});

/// Least squares cross validation over an ascending bandwidth grid:
/// CV(h) = int fhat^2 - (2/n) sum_i fhat_{-i}(x_i) with a full pipeline
/// refit for every leave-one-out fold. Bandwidths whose fits fail are
/// recorded as skipped; throws only if every grid point fails.
BandwidthReport lscv_select(const Sample& data, Method method, KernelSpec k,
                            const std::vector<double>& h_grid);

/// Normal-reference rate 1.0592 * s * n^(-1/5) used to anchor default grids.
double normal_reference_h(const Sample& data);

}  // namespace semidens
