#pragma once

#include <functional>
#include <string>
#include <vector>

#include "semidens/kernels.hpp"

namespace semidens {

enum class Method {
  kernel,
  et1,
  et2,
  et3,
  et4,
  jones,
  hg,
  local1,
  local2,
};

Method method_from_name(const std::string& name);
const char* method_name(Method m);

/// True for et1..et4.
bool is_et_method(Method m);

/// Basis order p for et1..et4; throws ValidationError otherwise.
int et_order(Method m);

struct EvalPair {
  double value = 0.0;
  double deriv = 0.0;
};

struct FitDiagnostics {
  int iterations = 0;
  double grad_norm = 0.0;
  /// Objective value before each accepted step and at termination.
  std::vector<double> objective_trace;
};

/// A fitted density estimate. Evaluation returns the density and its first
/// derivative; immutable after fit and safe to evaluate concurrently.
struct DensityEstimate {
  Method method = Method::kernel;
  double h = 0.0;
  KernelSpec kernel;
  std::function<EvalPair(double)> eval;

  /// Fitted exponential-family coefficients, standardized coordinates
  /// (empty for non-ET methods).
  std::vector<double> beta;
  /// Normal-start parameters (jones, hg, local1, local2).
  double mu_hat = 0.0;
  double sigma_hat = 0.0;
  FitDiagnostics diagnostics;

  double value(double x) const { return eval(x).value; }
  double deriv(double x) const { return eval(x).deriv; }
};

}  // namespace semidens
