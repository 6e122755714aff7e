#pragma once

#include <array>
#include <vector>

namespace semidens {

/// An immutable batch of univariate observations with cached summary
/// statistics. The standard deviation uses divisor n, matching the raw
/// empirical moments the estimators are defined against.
class Sample {
 public:
  explicit Sample(std::vector<double> values);

  const std::vector<double>& values() const { return values_; }
  long n() const { return static_cast<long>(values_.size()); }
  double mean() const { return mean_; }
  double sd() const { return sd_; }
  double min() const { return min_; }
  double max() const { return max_; }

  /// Mean of x^k over the sample, k = 1..4.
  double power_mean(int k) const { return power_mean_.at(k - 1); }

  /// Mean of d^2(x^k)/dx^2 over the sample, k = 1..4.
  double basis_second_deriv_mean(int k) const {
    return basis_dd_mean_.at(k - 1);
  }

  /// Number of pairwise-distinct values.
  long distinct_count() const { return distinct_; }

 private:
  std::vector<double> values_;
  double mean_ = 0.0, sd_ = 0.0, min_ = 0.0, max_ = 0.0;
  std::array<double, 4> power_mean_{};
  std::array<double, 4> basis_dd_mean_{};
  long distinct_ = 0;
};

}  // namespace semidens
