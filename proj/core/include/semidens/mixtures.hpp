#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "semidens/sample.hpp"

namespace semidens {

/// A finite normal mixture sum_i w_i N(mu_i, sd_i^2). Immutable after
/// construction; the constructor enforces the basic shape invariants
/// (weights sum to 1, sds positive, 1..8 components).
struct NormalMixture {
  std::string name;
  std::vector<double> weights;
  std::vector<double> means;
  std::vector<double> sds;

  NormalMixture(std::string name, std::vector<double> weights,
                std::vector<double> means, std::vector<double> sds);

  int components() const { return static_cast<int>(weights.size()); }
  double mean() const;
  double variance() const;
  double sd() const;
};

/// Moments of the polynomial basis t(x) = (x, ..., x^p) under a mixture:
/// xi = E t(X), Sigma = Var t(X), e_t2 = E t''(X).
struct MomentSummary {
  int p = 0;
  Eigen::VectorXd xi;
  Eigen::MatrixXd sigma;
  Eigen::VectorXd e_t2;
};

/// f(x) (deriv=0), f'(x) (deriv=1), or f''(x) (deriv=2), in closed form.
double mixture_pdf(const NormalMixture& m, double x, int deriv = 0);

/// E X^k for k = 0..8, exact via the single-normal recursion
/// m_j = mu*m_{j-1} + (j-1)*sd^2*m_{j-2} mixed by weights.
double raw_moment(const NormalMixture& m, int k);

/// Moment summary for the basis of order p in {2,3,4}. Throws
/// SingularMoments if Sigma fails the positive-definiteness check.
MomentSummary moment_summary(const NormalMixture& m, int p);

/// n seeded iid draws: component by weights, then the component normal.
Sample sample(const NormalMixture& m, long n, std::uint64_t seed);

/// Parse and validate the JSON catalog (array of {name, weights, means,
/// sds}). Throws ParseError on malformed JSON, ValidationError when an
/// entry breaks a NormalMixture invariant.
std::vector<NormalMixture> load_catalog(const std::string& path);

}  // namespace semidens
