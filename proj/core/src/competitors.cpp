#include "semidens/competitors.hpp"

#include <cmath>
#include <memory>

#include "semidens/errors.hpp"
#include "semidens/kde.hpp"

namespace semidens {

namespace {

constexpr double kInvSqrt2Pi = 0.3989422804014326779;

void require_normal_start_inputs(const Sample& data, double h,
                                 const char* who) {
  if (data.n() < 2) {
    throw ValidationError(std::string(who) + ": need at least 2 data points");
  }
  if (!(data.sd() > 0.0)) {
    throw ValidationError(std::string(who) +
                          ": sample standard deviation must be positive");
  }
  if (!(h > 0.0)) {
    throw ValidationError(std::string(who) + ": bandwidth must be positive");
  }
}

}  // namespace

NormalStart normal_start(const Sample& data) {
  return {data.mean(), data.sd()};
}

DensityEstimate jones_fit(const Sample& data, double h, KernelSpec k) {
  require_normal_start_inputs(data, h, "jones_fit");
  if (k.kind != KernelKind::Gaussian) {
    throw ValidationError(
        "jones_fit: only the Gaussian kernel is supported (the closed forms "
        "of the competing estimators are Gaussian-specific)");
  }
  const double mean = data.mean();
  const double s = data.sd();
  const double shrink = s / std::sqrt(s * s + h * h);
  std::vector<double> ys;
  ys.reserve(data.values().size());
  for (double xi : data.values()) ys.push_back(mean + (xi - mean) * shrink);
  DensityEstimate est = kde_fit(Sample(std::move(ys)), h, k);
  est.method = Method::jones;
  est.mu_hat = mean;
  est.sigma_hat = s;
  return est;
}

DensityEstimate hjort_glad_fit(const Sample& data, double h) {
  require_normal_start_inputs(data, h, "hjort_glad_fit");
  auto xs = std::make_shared<const std::vector<double>>(data.values());
  const double n = static_cast<double>(xs->size());
  const double mu = data.mean();
  const double s2 = data.sd() * data.sd();

  DensityEstimate est;
  est.method = Method::hg;
  est.h = h;
  est.kernel = KernelSpec::gaussian();
  est.mu_hat = mu;
  est.sigma_hat = data.sd();
  est.eval = [xs, h, n, mu, s2](double x) {
    const double score = (x - mu) / s2;
    double v = 0.0, d = 0.0;
    for (double xi : *xs) {
      const double u = (xi - x) / h;
      const double expo =
          -0.5 * u * u +
          0.5 * ((xi - mu) * (xi - mu) - (x - mu) * (x - mu)) / s2;
      const double term = kInvSqrt2Pi / h * std::exp(expo);
      v += term;
      d += term * (u / h - score);
    }
    return EvalPair{v / n, d / n};
  };
  return est;
}

DensityEstimate local_level_fit(const Sample& data, double h) {
  require_normal_start_inputs(data, h, "local_level_fit");
  const DensityEstimate f0 = kde_fit(data, h, KernelSpec::gaussian());
  const double mu = data.mean();
  const double s2 = data.sd() * data.sd();
  const double amp = std::sqrt(1.0 + h * h / s2);
  const double rate = h * h / (s2 * (s2 + h * h));

  DensityEstimate est;
  est.method = Method::local1;
  est.h = h;
  est.kernel = KernelSpec::gaussian();
  est.mu_hat = mu;
  est.sigma_hat = data.sd();
  est.eval = [f0, mu, amp, rate](double x) {
    const EvalPair base = f0.eval(x);
    const double c = amp * std::exp(-0.5 * rate * (x - mu) * (x - mu));
    return EvalPair{base.value * c,
                    c * (base.deriv - base.value * rate * (x - mu))};
  };
  return est;
}

DensityEstimate local_linear_fit(const Sample& data, double h) {
  require_normal_start_inputs(data, h, "local_linear_fit");
  auto xs = std::make_shared<const std::vector<double>>(data.values());
  const double n = static_cast<double>(xs->size());
  const double s2 = data.sd() * data.sd();
  const double amp = std::sqrt(1.0 + h * h / s2);
  const double q = 0.5 * h * h * (1.0 + h * h / s2);

  DensityEstimate est;
  est.method = Method::local2;
  est.h = h;
  est.kernel = KernelSpec::gaussian();
  est.mu_hat = data.mean();
  est.sigma_hat = data.sd();
  est.eval = [xs, h, n, amp, q](double x) {
    // f0 and its first two derivatives in one Gaussian pass.
    double f = 0.0, fp = 0.0, fpp = 0.0;
    for (double xi : *xs) {
      const double u = (xi - x) / h;
      const double phi = kInvSqrt2Pi * std::exp(-0.5 * u * u);
      f += phi;
      fp += u * phi;
      fpp += (u * u - 1.0) * phi;
    }
    f /= n * h;
    fp /= n * h * h;
    fpp /= n * h * h * h;
    if (f <= 0.0) {
      throw EvaluationOutsideSupport(
          "local_linear_fit: carrier underflows to zero at x = " +
          std::to_string(x));
    }
    const double r = fp / f;
    const double c = amp * std::exp(-q * r * r);
    const double rprime = fpp / f - r * r;
    return EvalPair{f * c, c * (fp - 2.0 * q * r * rprime * f)};
  };
  return est;
}

}  // namespace semidens
