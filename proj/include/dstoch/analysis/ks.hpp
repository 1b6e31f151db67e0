#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <vector>

#include "dstoch/error.hpp"

namespace dstoch {

struct KsResult {
  double statistic = 0.0;
  double p_value = 1.0;
};

/// Survival function of the Kolmogorov distribution, P(K > lambda).
inline double kolmogorov_sf(double lambda) {
  if (lambda <= 0.0) return 1.0;
  if (lambda < 1.18) {
    // P(K <= l) = sqrt(2 pi)/l * sum_{k odd} exp(-k^2 pi^2 / (8 l^2))
    const double w = -std::numbers::pi * std::numbers::pi / (8.0 * lambda * lambda);
    double cdf = 0.0;
    for (int k = 1; k < 40; k += 2) cdf += std::exp(w * k * k);
    return std::clamp(1.0 - std::sqrt(2.0 * std::numbers::pi) / lambda * cdf, 0.0, 1.0);
  }
  double sf = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    sf += (k % 2 == 1 ? 2.0 : -2.0) * term;
    if (term < 1e-300) break;
  }
  return std::clamp(sf, 0.0, 1.0);
}

/// Two-sided one-sample Kolmogorov-Smirnov test against Uniform[0,1] with the
/// asymptotic p-value P(K > sqrt(n) D). Meant for n >= 100.
inline KsResult ks_uniformity(std::span<const double> values) {
  if (values.empty()) throw StructuralError("ks_uniformity: empty input");
  std::vector<double> v(values.begin(), values.end());
  std::sort(v.begin(), v.end());
  const double n = static_cast<double>(v.size());
  double d = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double f = std::clamp(v[i], 0.0, 1.0);
    d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
  }
  return {d, kolmogorov_sf(std::sqrt(n) * d)};
}

}  // namespace dstoch
