#pragma once

#include <Eigen/Dense>

#include "semidens/estimate.hpp"
#include "semidens/kernels.hpp"
#include "semidens/sample.hpp"

namespace semidens {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double width() const { return hi - lo; }
};

/// Polynomial canonical statistic t(x) = (z, z^2, ..., z^p) with
/// z = (x - center)/scale. Standardizing before powering keeps the Newton
/// Hessian well conditioned; the fitted density is invariant under it.
struct CanonicalBasis {
  int p = 2;
  double center = 0.0;
  double scale = 1.0;

  CanonicalBasis(int p, double center, double scale);

  Eigen::VectorXd t(double x) const;
  Eigen::VectorXd t_prime(double x) const;
  Eigen::VectorXd t_second(double x) const;
};

/// A fitted exponential family on a frozen carrier: density
/// carrier(x) * exp{beta^t t(x) - log_c} over the fixed domain.
struct ExpFamilyModel {
  DensityEstimate carrier;
  CanonicalBasis basis;
  Eigen::VectorXd beta;
  double log_c = 0.0;
  Interval domain;
  FitDiagnostics diagnostics;
};

/// Integration domain [min(x) - r, max(x) + r], r = support_radius * h for
/// bounded kernels, 10h for the Gaussian (carrier tail mass < 1e-22 n-fold).
Interval choose_domain(const DensityEstimate& carrier, const Sample& data);

/// log of int_domain carrier(x) exp{beta^t t(x)} dx, adaptive quadrature with
/// a max-exponent shift so no intermediate overflows.
double log_norm_const(const DensityEstimate& carrier,
                      const CanonicalBasis& basis, const Eigen::VectorXd& beta,
                      Interval domain);

/// Maximum likelihood: damped Newton on the strictly convex
/// B_n(beta) = log c(beta) - beta^t tbar, gradient mu(beta) - tbar,
/// Hessian Var_beta t(X). Converged at sup-norm gradient < 1e-10.
ExpFamilyModel fit_beta(const DensityEstimate& carrier,
                        const CanonicalBasis& basis, const Sample& data,
                        Interval domain);

/// Density of the fitted model at x; zero outside the domain.
double et_density(const ExpFamilyModel& model, double x);

/// Density and first derivative at x.
EvalPair et_eval(const ExpFamilyModel& model, double x);

/// Small-h approximation -(1/2) k2 h^2 SigmaHat^-1 tbar'' in the same
/// standardized coordinates as fit_beta.
Eigen::VectorXd taylor_beta(const Sample& data, const CanonicalBasis& basis,
                            KernelSpec k, double h);

/// Full pipeline: kernel carrier on the data, basis standardized by
/// (mean, sd), domain from choose_domain, maximum likelihood fit.
DensityEstimate et_fit(const Sample& data, int p, double h, KernelSpec k);

}  // namespace semidens
