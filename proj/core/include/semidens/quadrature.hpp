#pragma once

#include <functional>

namespace semidens {

struct IntegrationResult {
  double value = 0.0;
  double error_estimate = 0.0;
  long evaluations = 0;
};

/// Adaptive integration of f over [a, b]: Gauss-Kronrod 7/15 pair per panel,
/// worst panel split first, until the summed local error estimates fall below
/// tol. Throws NonConvergence once the panel limit (10,000) is reached.
IntegrationResult integrate(const std::function<double(double)>& f, double a,
                            double b, double tol = 1e-9);

/// Integral of a tail-decaying f over the whole line: integrates
/// [center - m*scale, center + m*scale] for m = 8, 12, 16, ... and stops when
/// the last expansion adds less than tol. Throws NonConvergence if the
/// increments have not shrunk below tol after 6 expansions.
IntegrationResult integrate_whole_line(const std::function<double(double)>& f,
                                       double center, double scale,
                                       double tol = 1e-9);

}  // namespace semidens
