#pragma once

#include <limits>
#include <string>

namespace semidens {

enum class KernelKind { Gaussian, Epanechnikov };

/// A symmetric probability kernel together with its moment constants
/// k2 = int u^2 K(u) du and R(K) = int K(u)^2 du.
///
/// The Epanechnikov kernel is kept in the (3/2){1-(2u)^2} form supported on
/// [-1/2, 1/2]; any other scaling is absorbed into the bandwidth.
struct KernelSpec {
  KernelKind kind = KernelKind::Gaussian;

  /// Half-width of the support in u-units; infinity for the Gaussian.
  double support_radius() const {
    return kind == KernelKind::Gaussian
               ? std::numeric_limits<double>::infinity()
               : 0.5;
  }

  static KernelSpec gaussian() { return {KernelKind::Gaussian}; }
  static KernelSpec epanechnikov() { return {KernelKind::Epanechnikov}; }
};

struct KernelConstants {
  double k2;  // int u^2 K(u) du
  double rk;  // int K(u)^2 du
};

/// K(u), unscaled. Callers apply K_h(u) = K(u/h)/h themselves.
double kernel_eval(const KernelSpec& k, double u);

/// dK/du, used for analytic derivatives of kernel estimates.
double kernel_deriv(const KernelSpec& k, double u);

/// Closed-form (k2, R(K)) for the built-in kernels:
/// Gaussian (1, 1/(2 sqrt(pi))), Epanechnikov (0.05, 1.2).
KernelConstants kernel_constants(const KernelSpec& k);

/// Parse "gaussian" / "epanechnikov" (case-sensitive); throws ValidationError.
KernelSpec kernel_from_name(const std::string& name);
const char* kernel_name(const KernelSpec& k);

}  // namespace semidens
