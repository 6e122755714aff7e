#include "semidens/sample.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace semidens {

Sample::Sample(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) {
    throw std::invalid_argument("Sample requires at least one observation");
  }
  for (double v : values_) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument("Sample contains a non-finite value");
    }
  }
  const double n = static_cast<double>(values_.size());
  min_ = *std::min_element(values_.begin(), values_.end());
  max_ = *std::max_element(values_.begin(), values_.end());
  for (double v : values_) {
    double p = v;
    for (int k = 0; k < 4; ++k) {
      power_mean_[k] += p;
      p *= v;
    }
  }
  for (auto& pm : power_mean_) pm /= n;
  mean_ = power_mean_[0];
  sd_ = std::sqrt(std::max(0.0, power_mean_[1] - mean_ * mean_));
  // t_k(x) = x^k has t_k'' = k(k-1) x^(k-2).
  basis_dd_mean_ = {0.0, 2.0, 6.0 * power_mean_[0], 12.0 * power_mean_[1]};

  std::vector<double> sorted = values_;
  std::sort(sorted.begin(), sorted.end());
  distinct_ = 1;
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    if (sorted[i] != sorted[i - 1]) ++distinct_;
  }
}

}  // namespace semidens
