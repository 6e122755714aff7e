#include "semidens/kernels.hpp"

#include <cmath>

#include "semidens/errors.hpp"

namespace semidens {

namespace {
constexpr double kInvSqrt2Pi = 0.3989422804014326779;  // 1/sqrt(2*pi)
constexpr double kSqrtPi = 1.7724538509055160273;
}  // namespace

double kernel_eval(const KernelSpec& k, double u) {
  switch (k.kind) {
    case KernelKind::Gaussian:
      return kInvSqrt2Pi * std::exp(-0.5 * u * u);
    case KernelKind::Epanechnikov:
      if (std::abs(u) > 0.5) return 0.0;
      return 1.5 * (1.0 - 4.0 * u * u);
  }
  return 0.0;
}

double kernel_deriv(const KernelSpec& k, double u) {
  switch (k.kind) {
    case KernelKind::Gaussian:
      return -u * kInvSqrt2Pi * std::exp(-0.5 * u * u);
    case KernelKind::Epanechnikov:
      if (std::abs(u) > 0.5) return 0.0;
      return -12.0 * u;
  }
  return 0.0;
}

KernelConstants kernel_constants(const KernelSpec& k) {
  switch (k.kind) {
    case KernelKind::Gaussian:
      return {1.0, 0.5 / kSqrtPi};
    case KernelKind::Epanechnikov:
      // int u^2 (3/2)(1-4u^2) du = 1/20,  int (3/2)^2 (1-4u^2)^2 du = 6/5
      // over [-1/2, 1/2].
      return {0.05, 1.2};
  }
  return {0.0, 0.0};
}

KernelSpec kernel_from_name(const std::string& name) {
  if (name == "gaussian") return KernelSpec::gaussian();
  if (name == "epanechnikov") return KernelSpec::epanechnikov();
  throw ValidationError("unknown kernel '" + name +
                        "' (expected gaussian or epanechnikov)");
}

const char* kernel_name(const KernelSpec& k) {
  return k.kind == KernelKind::Gaussian ? "gaussian" : "epanechnikov";
}

}  // namespace semidens
