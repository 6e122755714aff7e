#pragma once

#include <stdexcept>
#include <string>

namespace semidens {

/// Base class for all numeric and validation failures thrown by this library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Adaptive quadrature or an iterative solver hit its work limit before
/// reaching the requested tolerance.
class NonConvergence : public Error {
 public:
  explicit NonConvergence(const std::string& what) : Error(what) {}
};

/// A moment variance matrix failed its positive-definiteness / conditioning
/// check (reciprocal condition number below 1e-12).
class SingularMoments : public Error {
 public:
  explicit SingularMoments(const std::string& what) : Error(what) {}
};

/// Newton's method met a Hessian too ill-conditioned to solve.
class DegenerateHessian : public Error {
 public:
  explicit DegenerateHessian(const std::string& what) : Error(what) {}
};

/// Exponential-family fit requested with fewer distinct data points than
/// basis dimensions.
class TooFewDistinctPoints : public Error {
 public:
  explicit TooFewDistinctPoints(const std::string& what) : Error(what) {}
};

/// AMISE bandwidth requested for a method whose integrated squared bias is
/// exactly zero: no finite minimizer exists.
class ZeroBias : public Error {
 public:
  explicit ZeroBias(const std::string& what) : Error(what) {}
};

/// Density evaluation at a point where the estimate underflows to zero and a
/// formula must divide by it.
class EvaluationOutsideSupport : public Error {
 public:
  explicit EvaluationOutsideSupport(const std::string& what) : Error(what) {}
};

/// Input file could not be parsed; message carries line/field context.
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what) : Error(what) {}
};

/// Parsed input violates a documented invariant; message names it.
class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& what) : Error(what) {}
};

/// A file could not be opened, read, or written.
class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(what) {}
};

}  // namespace semidens
