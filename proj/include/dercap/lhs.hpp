#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dercap/common.hpp"
#include "dercap/rng.hpp"

namespace dercap {

/// Marginal distribution of one uncertain dimension.
struct Distribution {
  enum class Kind : std::uint8_t { normal, uniform } kind = Kind::normal;
  double a = 0.0;  // mean (normal) or lower bound (uniform)
  double b = 1.0;  // stddev (normal) or upper bound (uniform)

  static Distribution normal(double mean, double sigma) {
    if (sigma < 0) throw InputError("normal distribution with negative sigma");
    return {Kind::normal, mean, sigma};
  }
  static Distribution uniform(double lo, double hi) {
    if (hi < lo) throw InputError("uniform distribution with hi < lo");
    return {Kind::uniform, lo, hi};
  }
  double from_unit(double u) const {
    if (kind == Kind::normal) return b == 0.0 ? a : a + b * inverse_normal_cdf(u);
    return a + (b - a) * u;
  }
};

/// Latin hypercube sample: N points, one per equal-probability stratum per
/// dimension, with independently permuted strata and a uniform draw inside
/// each stratum. Deterministic in (seed, dimension order, N).
inline std::vector<std::vector<double>> lhs_sample(const std::vector<Distribution>& dims,
                                                   int n, std::uint64_t seed) {
  if (n < 1) throw InputError("lhs_sample requires N >= 1");
  std::vector<std::vector<double>> out(n, std::vector<double>(dims.size()));
  for (std::size_t d = 0; d < dims.size(); ++d) {
    Rng rng(substream_seed(seed, 0x4c485300ULL + d));  // per-dimension stream
    std::vector<int> strata(n);
    for (int i = 0; i < n; ++i) strata[i] = i;
    shuffle(strata, rng);
    for (int i = 0; i < n; ++i) {
      double u = (strata[i] + rng.next_unit()) / n;
      out[i][d] = dims[d].from_unit(u);
    }
  }
  return out;
}

}  // namespace dercap
