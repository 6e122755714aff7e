#include "semidens/bandwidth.hpp"

#include <algorithm>
#include <cmath>

#include "semidens/bias_bench.hpp"
#include "semidens/errors.hpp"
#include "semidens/expfam.hpp"
#include "semidens/fit.hpp"
#include "semidens/quadrature.hpp"

namespace semidens {

double amise_bandwidth(const NormalMixture& m, Method method, KernelSpec k,
                       long n, const std::function<double(double)>& weight) {
  if (n < 1) throw ValidationError("amise_bandwidth: n must be at least 1");
  const KernelConstants kc = kernel_constants(k);
  const double isb = integrated_squared_bias(method, m, weight);
  if (isb < 1e-18) {
    throw ZeroBias("amise_bandwidth: integrated squared bias of " +
                   std::string(method_name(method)) + " on " + m.name +
                   " is zero; no finite minimizer exists");
  }
  const auto wf = [&](double x) {
    const double w = weight ? weight(x) : 1.0;
    return w * mixture_pdf(m, x, 0);
  };
  const double int_wf =
      integrate_whole_line(wf, m.mean(), m.sd(), 1e-9).value;
  return std::pow(kc.rk / (kc.k2 * kc.k2) * int_wf / isb, 0.2) *
         std::pow(static_cast<double>(n), -0.2);
}

BandwidthReport lscv_select(const Sample& data, Method method, KernelSpec k,
                            const std::vector<double>& h_grid) {
  if (h_grid.empty()) {
    throw ValidationError("lscv_select: bandwidth grid is empty");
  }
  if (!std::is_sorted(h_grid.begin(), h_grid.end())) {
    throw ValidationError("lscv_select: bandwidth grid must be ascending");
  }
  if (data.n() < 3) {
    throw ValidationError("lscv_select: need at least 3 data points");
  }
  const double n = static_cast<double>(data.n());

  BandwidthReport report;
  report.selector = "lscv";
  std::string last_failure;
  for (double h : h_grid) {
    try {
      const DensityEstimate est = fit_method(method, data, h, k);
      const Interval dom = choose_domain(est, data);
      const double int_sq =
          integrate([&](double x) { const double v = est.value(x); return v * v; },
                    dom.lo, dom.hi, 1e-10)
              .value;
      double loo_sum = 0.0;
      for (long i = 0; i < data.n(); ++i) {
        std::vector<double> rest;
        rest.reserve(data.values().size() - 1);
        for (long j = 0; j < data.n(); ++j) {
          if (j != i) rest.push_back(data.values()[j]);
        }
        const DensityEstimate loo = fit_method(method, Sample(std::move(rest)), h, k);
        loo_sum += loo.value(data.values()[i]);
      }
      report.curve.emplace_back(h, int_sq - 2.0 / n * loo_sum);
    } catch (const Error& e) {
      last_failure = e.what();
    }
  }
  if (report.curve.empty()) {
    throw NonConvergence("lscv_select: every bandwidth in the grid failed (last: " +
                         last_failure + ")");
  }
  const auto best = std::min_element(
      report.curve.begin(), report.curve.end(),
      [](const auto& a, const auto& b) { return a.second < b.second; });
  report.h_selected = best->first;
  return report;
}

double normal_reference_h(const Sample& data) {
  return 1.0592 * data.sd() *
         std::pow(static_cast<double>(data.n()), -0.2);
}

}  // namespace semidens
