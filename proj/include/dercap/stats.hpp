#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "dercap/common.hpp"

namespace dercap {

/// Conservative lower empirical quantile: the k-th smallest sample with
/// k = max(1, floor(alpha*N)). With alpha*N < 1 this is the sample minimum.
inline double reliability_quantile(std::vector<double> samples, double alpha) {
  if (samples.empty()) throw InputError("reliability_quantile: empty sample set");
  if (!(alpha > 0.0 && alpha < 1.0)) throw InputError("reliability_quantile: alpha outside (0,1)");
  const auto n = static_cast<double>(samples.size());
  // the epsilon absorbs float dust when alpha*N is mathematically integral
  long k = static_cast<long>(std::floor(alpha * n + 1e-9));
  if (k < 1) k = 1;
  std::nth_element(samples.begin(), samples.begin() + (k - 1), samples.end());
  return samples[k - 1];
}

inline double median(std::vector<double> v) {
  if (v.empty()) throw InputError("median of empty set");
  std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + mid, v.end());
  double hi = v[mid];
  if (v.size() % 2 == 1) return hi;
  std::nth_element(v.begin(), v.begin() + mid - 1, v.begin() + mid);
  return 0.5 * (v[mid - 1] + hi);
}

/// Median absolute deviation around the given center.
inline double mad(const std::vector<double>& v, double center) {
  std::vector<double> dev;
  dev.reserve(v.size());
  for (double x : v) dev.push_back(std::abs(x - center));
  return median(std::move(dev));
}

}  // namespace dercap
