#include "semidens/fit.hpp"

#include "semidens/competitors.hpp"
#include "semidens/errors.hpp"
#include "semidens/expfam.hpp"
#include "semidens/kde.hpp"
#include "semidens/quadrature.hpp"

namespace semidens {

namespace {

DensityEstimate renormalized(DensityEstimate est, const Sample& data) {
  const Interval dom = choose_domain(est, data);
  const double total =
      integrate([&](double x) { return est.value(x); }, dom.lo, dom.hi, 1e-9)
          .value;
  DensityEstimate out = est;
  const auto inner = est.eval;
  out.eval = [inner, total](double x) {
    const EvalPair e = inner(x);
    return EvalPair{e.value / total, e.deriv / total};
  };
  return out;
}

}  // namespace

DensityEstimate fit_method(Method method, const Sample& data, double h,
                           KernelSpec k, bool renormalize) {
  if (renormalize && method != Method::local1 && method != Method::local2) {
    throw ValidationError(
        "renormalize applies only to local1 and local2 (the other methods "
        "are already normalized or defined as plain kernel sums)");
  }
  if (k.kind != KernelKind::Gaussian &&
      (method == Method::jones || method == Method::hg ||
       method == Method::local1 || method == Method::local2)) {
    throw ValidationError(std::string("method ") + method_name(method) +
                          " supports only the Gaussian kernel");
  }
  DensityEstimate est;
  switch (method) {
    case Method::kernel: est = kde_fit(data, h, k); break;
    case Method::et1:
    case Method::et2:
    case Method::et3:
    case Method::et4: est = et_fit(data, et_order(method), h, k); break;
    case Method::jones: est = jones_fit(data, h, k); break;
    case Method::hg: est = hjort_glad_fit(data, h); break;
    case Method::local1: est = local_level_fit(data, h); break;
    case Method::local2: est = local_linear_fit(data, h); break;
  }
  if (renormalize) est = renormalized(std::move(est), data);
  return est;
}

}  // namespace semidens
