#include "semidens/kde.hpp"

#include <memory>

#include "semidens/errors.hpp"

namespace semidens {

DensityEstimate kde_fit(const Sample& data, double h, KernelSpec k) {
  if (!(h > 0.0)) throw ValidationError("kde_fit: bandwidth must be positive");
  auto xs = std::make_shared<const std::vector<double>>(data.values());
  const double n = static_cast<double>(xs->size());
  DensityEstimate est;
  est.method = Method::kernel;
  est.h = h;
  est.kernel = k;
  est.eval = [xs, h, k, n](double x) {
    double v = 0.0, d = 0.0;
    for (double xi : *xs) {
      const double u = (xi - x) / h;
      v += kernel_eval(k, u);
      d -= kernel_deriv(k, u);
    }
    return EvalPair{v / (n * h), d / (n * h * h)};
  };
  return est;
}

KdeAsymptotics kde_asymptotics(const NormalMixture& m, KernelSpec k, double h,
                               long n, double x) {
  if (!(h > 0.0) || n < 1) {
    throw ValidationError("kde_asymptotics: need h > 0 and n >= 1");
  }
  const KernelConstants kc = kernel_constants(k);
  const double f = mixture_pdf(m, x, 0);
  const double fpp = mixture_pdf(m, x, 2);
  const double dn = static_cast<double>(n);
  return {0.5 * kc.k2 * h * h * fpp, kc.rk * f / (dn * h) - f * f / dn};
}

}  // namespace semidens
